#include <doctest.h>

#include <set>

#include "gapforge/perm.hpp"

using namespace gapforge;

TEST_CASE("table enumeration is lexicographic") {
    const PermTable t2 = PermTable::build(2);
    REQUIRE(t2.size() == 2);
    CHECK(t2.perm(0) == Permutation{1, 2});
    CHECK(t2.perm(1) == Permutation{2, 1});
    CHECK(t2.rank_of({1, 2}) == 0);
    CHECK(t2.rank_of({2, 1}) == 1);

    const PermTable t3 = PermTable::build(3);
    REQUIRE(t3.size() == 6);
    CHECK(t3.rank_of({1, 2, 3}) == 0);
    CHECK(t3.reverse_rank(t3.rank_of({1, 2, 3})) == t3.rank_of({3, 2, 1}));
}

TEST_CASE("table invariants for n up to 6") {
    for (int n = 2; n <= 6; ++n) {
        const PermTable t = PermTable::build(n);
        REQUIRE(t.size() == factorial(n));
        std::set<Permutation> distinct(t.perms().begin(), t.perms().end());
        CHECK(distinct.size() == t.size());
        for (std::size_t k = 0; k < t.size(); ++k) {
            CHECK(t.rank_of(t.perm(k)) == k);
            CHECK(t.reverse_rank(t.reverse_rank(k)) == k);
        }
        CHECK(t.sign(t.rank_of(t.perm(0))) == 1);  // identity is rank 0
    }
}

TEST_CASE("size cap") {
    CHECK_THROWS_AS(PermTable::build(1), Error);
    CHECK_THROWS_AS(PermTable::build(8), Error);
    CHECK_THROWS_WITH_AS(PermTable::build(9, 7), doctest::Contains("cap"), Error);
    // raised cap builds the table (no matrices involved)
    const PermTable t8 = PermTable::build(8, 8);
    CHECK(t8.size() == 40320);
    CHECK(t8.rank_of({8, 7, 6, 5, 4, 3, 2, 1}) == 40319);
}

TEST_CASE("adjacent_swap") {
    CHECK(adjacent_swap({1, 2, 3}, 2) == Permutation{2, 1, 3});
    CHECK(adjacent_swap({1, 2, 3}, 3) == Permutation{1, 3, 2});
    CHECK_THROWS_AS(adjacent_swap({1, 2, 3}, 1), Error);
    CHECK_THROWS_AS(adjacent_swap({1, 2, 3}, 4), Error);

    const PermTable t = PermTable::build(4);
    for (std::size_t k = 0; k < t.size(); ++k) {
        for (int r = 2; r <= 4; ++r) {
            const Permutation y = adjacent_swap(t.perm(k), r);
            CHECK(adjacent_swap(y, r) == t.perm(k));
            int moved = 0;
            for (std::size_t i = 0; i < 4; ++i)
                if (y[i] != t.perm(k)[i]) ++moved;
            CHECK(moved == 2);
            CHECK(sign_of(y) == -sign_of(t.perm(k)));
        }
    }
}

TEST_CASE("sign_of") {
    CHECK(sign_of({1, 2, 3}) == 1);
    CHECK(sign_of({2, 1, 3}) == -1);
    CHECK(sign_of({3, 2, 1}) == -1);  // three inversions
}

TEST_CASE("reverse_of") {
    CHECK(reverse_of({1, 2, 3}) == Permutation{3, 2, 1});
    CHECK(sign_of(reverse_of({1, 2, 3, 4})) == 1);  // six inversions

    for (int n = 2; n <= 5; ++n) {
        const PermTable t = PermTable::build(n);
        const int reversal_sign = (n * (n - 1) / 2) % 2 == 0 ? 1 : -1;
        for (std::size_t k = 0; k < t.size(); ++k) {
            const Permutation& x = t.perm(k);
            CHECK(reverse_of(reverse_of(x)) == x);
            CHECK(sign_of(reverse_of(x)) == sign_of(x) * reversal_sign);
        }
    }
}

TEST_CASE("permutation text format") {
    CHECK(perm_to_string({2, 1, 3}) == "2,1,3");
    CHECK(perm_from_string("2,1,3") == Permutation{2, 1, 3});
    CHECK_THROWS_AS(perm_from_string("2,1,a"), Error);
    CHECK_THROWS_AS(perm_from_string("1,1,2"), Error);
    CHECK_THROWS_AS(perm_from_string("1,2,4"), Error);
}
