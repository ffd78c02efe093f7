#include <doctest.h>

#include <cmath>
#include <set>

#include "gapforge/chain.hpp"
#include "gapforge/random.hpp"

using namespace gapforge;

namespace {

double max_row_sum_error(const Eigen::MatrixXd& m) {
    double worst = 0.0;
    for (Eigen::Index x = 0; x < m.rows(); ++x)
        worst = std::max(worst, std::abs(m.row(x).sum() - 1.0));
    return worst;
}

}  // namespace

TEST_CASE("n=2 transition matrix has identical rows (p12, p21)") {
    Rng rng(11);
    const PermTable t = PermTable::build(2);
    for (int trial = 0; trial < 5; ++trial) {
        const double p12 = rng.uniform(0.05, 0.95);
        const TransitionMatrix K = build_transition(ParamVector(2, {p12}), t);
        for (int row = 0; row < 2; ++row) {
            CHECK(K.entries(row, 0) == doctest::Approx(p12).epsilon(1e-15));
            CHECK(K.entries(row, 1) == doctest::Approx(1.0 - p12).epsilon(1e-15));
        }
    }
}

TEST_CASE("n=3 entries match the two-case rule") {
    Rng rng(12);
    const PermTable t = PermTable::build(3);
    const ParamVector p = random_param_vector(3, rng);
    const TransitionMatrix K = build_transition(p, t);

    const auto e = [&](const Permutation& from, const Permutation& to) {
        return K.entries(static_cast<Eigen::Index>(t.rank_of(from)),
                         static_cast<Eigen::Index>(t.rank_of(to)));
    };
    CHECK(e({1, 2, 3}, {2, 1, 3}) == doctest::Approx(p(2, 1) / 2).epsilon(1e-15));
    CHECK(e({1, 2, 3}, {1, 2, 3}) == doctest::Approx((p(1, 2) + p(2, 3)) / 2).epsilon(1e-14));
    CHECK(e({1, 3, 2}, {3, 1, 2}) == doctest::Approx(p(3, 1) / 2).epsilon(1e-15));
    CHECK(e({2, 3, 1}, {2, 1, 3}) == doctest::Approx(p(1, 3) / 2).epsilon(1e-15));
    CHECK(e({1, 2, 3}, {3, 2, 1}) == 0.0);
    CHECK(e({1, 2, 3}, {2, 3, 1}) == 0.0);
}

TEST_CASE("unweighted rows: diagonal 1/2, off-diagonals 1/(2(n-1))") {
    for (int n : {3, 4}) {
        const PermTable t = PermTable::build(n);
        const TransitionMatrix K = build_transition(ParamVector::unweighted(n), t);
        for (Eigen::Index x = 0; x < K.entries.rows(); ++x) {
            CHECK(K.entries(x, x) == doctest::Approx(0.5).epsilon(1e-14));
            int nonzero = 0;
            for (Eigen::Index y = 0; y < K.entries.cols(); ++y) {
                if (y == x || K.entries(x, y) == 0.0) continue;
                ++nonzero;
                CHECK(K.entries(x, y) == doctest::Approx(0.5 / (n - 1)).epsilon(1e-15));
            }
            CHECK(nonzero == n - 1);
        }
    }
}

TEST_CASE("row stochasticity, sparsity and the diagonal identity") {
    Rng rng(13);
    for (int n : {3, 4, 5}) {
        const PermTable t = PermTable::build(n);
        for (int trial = 0; trial < 5; ++trial) {
            const ParamVector p = random_param_vector(n, rng);
            const TransitionMatrix K = build_transition(p, t);
            CHECK(max_row_sum_error(K.entries) <= 1e-14 * static_cast<double>(t.size()));

            for (std::size_t x = 0; x < t.size(); ++x) {
                const Permutation& perm = t.perm(x);
                std::set<std::size_t> neighbors;
                for (int r = 2; r <= n; ++r) neighbors.insert(t.rank_of(adjacent_swap(perm, r)));
                int nonzero = 0;
                for (std::size_t y = 0; y < t.size(); ++y)
                    if (y != x &&
                        K.entries(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) != 0.0) {
                        ++nonzero;
                        CHECK(neighbors.count(y) == 1);
                    }
                CHECK(nonzero == n - 1);

                double diag = 0.0;
                for (int r = 2; r <= n; ++r)
                    diag += p(perm[static_cast<std::size_t>(r - 2)],
                              perm[static_cast<std::size_t>(r - 1)]);
                diag /= (n - 1);
                CHECK(std::abs(K.entries(static_cast<Eigen::Index>(x),
                                         static_cast<Eigen::Index>(x)) -
                               diag) <= 1e-15);
            }
        }
    }
}

TEST_CASE("stationary distribution") {
    const PermTable t2 = PermTable::build(2);
    const StationaryDistribution pi2 = stationary(ParamVector(2, {0.7}), t2);
    CHECK(pi2.probs[0] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(pi2.probs[1] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(pi2.z == doctest::Approx(1.0).epsilon(1e-15));

    for (int n : {3, 4}) {
        const PermTable t = PermTable::build(n);
        const StationaryDistribution pi = stationary(ParamVector::unweighted(n), t);
        const double uniform = 1.0 / static_cast<double>(t.size());
        for (Eigen::Index x = 0; x < pi.probs.size(); ++x)
            CHECK(pi.probs[x] == doctest::Approx(uniform).epsilon(1e-13));
        const double expected_z =
            static_cast<double>(factorial(n)) * std::pow(0.5, n * (n - 1) / 2);
        CHECK(pi.z == doctest::Approx(expected_z).epsilon(1e-12));
        CHECK_FALSE(pi.log_domain);
    }
}

TEST_CASE("log-domain accumulation triggers and stays consistent") {
    const PermTable t6 = PermTable::build(6);
    const StationaryDistribution pi6 = stationary(ParamVector::unweighted(6), t6);
    CHECK(pi6.log_domain);
    CHECK(pi6.probs.sum() == doctest::Approx(1.0).epsilon(1e-13));

    // small parameter flips the trigger at n=3
    const PermTable t3 = PermTable::build(3);
    const ParamVector skew(3, {0.995, 0.995, 0.005});
    const StationaryDistribution pi_skew = stationary(skew, t3);
    CHECK(pi_skew.log_domain);
    const StationaryDistribution pi_plain = stationary(ParamVector(3, {0.6, 0.6, 0.6}), t3);
    CHECK_FALSE(pi_plain.log_domain);

    // linear vs log agree where both are exact
    const ParamVector mild(6, std::vector<double>(15, 0.6));
    const TransitionMatrix K = build_transition(mild, t6);
    const StationaryDistribution pi = stationary(mild, t6);
    CHECK(stationarity_residual(K, pi) <= 1e-12);
}

TEST_CASE("detailed balance and stationarity residuals") {
    Rng rng(14);
    for (int n : {3, 4, 5}) {
        const PermTable t = PermTable::build(n);
        for (int trial = 0; trial < 10; ++trial) {
            const ParamVector p = random_param_vector(n, rng);
            const TransitionMatrix K = build_transition(p, t);
            const StationaryDistribution pi = stationary(p, t);
            CHECK(detailed_balance_residual(K, pi) <= 1e-13);
            CHECK(stationarity_residual(K, pi) <= 1e-12);
        }
    }
}

TEST_CASE("hendricks form equals the pairwise product form") {
    Rng rng(15);
    for (int n : {3, 4, 5}) {
        const PermTable t = PermTable::build(n);
        for (int trial = 0; trial < 10; ++trial) {
            const WeightVector w = random_nonincreasing_weights(n, rng);
            const StationaryDistribution lhs = hendricks_stationary(w, t);
            const StationaryDistribution rhs = stationary(params_from_weights(w), t);
            for (Eigen::Index x = 0; x < lhs.probs.size(); ++x)
                CHECK(std::abs(lhs.probs[x] - rhs.probs[x]) <= 1e-13 * lhs.probs[x]);
        }
    }
}

TEST_CASE("symmetrized matrix") {
    const PermTable t2 = PermTable::build(2);
    const ParamVector p2(2, {0.7});
    const TransitionMatrix K2 = build_transition(p2, t2);
    const Eigen::MatrixXd S2 = symmetrized(K2, stationary(p2, t2));
    CHECK(S2(0, 1) == doctest::Approx(std::sqrt(0.7 * 0.3)).epsilon(1e-14));
    CHECK(S2(1, 0) == doctest::Approx(std::sqrt(0.7 * 0.3)).epsilon(1e-14));

    const PermTable t3 = PermTable::build(3);
    const ParamVector u3 = ParamVector::unweighted(3);
    const TransitionMatrix K3 = build_transition(u3, t3);
    const Eigen::MatrixXd S3 = symmetrized(K3, stationary(u3, t3));
    CHECK((S3 - K3.entries).cwiseAbs().maxCoeff() <= 1e-14);

    Rng rng(16);
    const PermTable t4 = PermTable::build(4);
    for (int trial = 0; trial < 10; ++trial) {
        const ParamVector p = random_regular_param_vector(4, rng);
        const Eigen::MatrixXd S = symmetrized(build_transition(p, t4), stationary(p, t4));
        CHECK((S - S.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    }

    // mismatched pair must be rejected
    const ParamVector other(3, {0.9, 0.9, 0.9});
    CHECK_THROWS_AS(symmetrized(K3, stationary(other, t3)), Error);
}

TEST_CASE("ma1 chain: rows, reversibility, bad-start escape probability") {
    Rng rng(17);
    for (int n : {3, 4}) {
        const PermTable t = PermTable::build(n);
        const WeightVector w = random_nonincreasing_weights(n, rng);
        const TransitionMatrix M = build_ma1_transition(w, t);
        CHECK(max_row_sum_error(M.entries) <= 1e-14 * static_cast<double>(t.size()));
        CHECK(detailed_balance_residual(M, hendricks_stationary(w, t)) <= 1e-13);
    }

    const PermTable t2 = PermTable::build(2);
    const TransitionMatrix M2 = build_ma1_transition(WeightVector({2, 1}), t2);
    CHECK(M2.entries(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(M2.entries(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    // from (1,..,n-2,n,n-1) the sorted order is one swap away, reached
    // exactly when record n-1 is requested
    const int n = 4;
    const PermTable t = PermTable::build(n);
    const WeightVector w({0.4, 0.3, 0.2, 0.1});
    const TransitionMatrix M = build_ma1_transition(w, t);
    const Permutation bad{1, 2, 4, 3};
    const Permutation sorted{1, 2, 3, 4};
    const double entry = M.entries(static_cast<Eigen::Index>(t.rank_of(bad)),
                                   static_cast<Eigen::Index>(t.rank_of(sorted)));
    CHECK(entry == w.normalized()[2]);  // w_hat_{n-1}
}

TEST_CASE("mtf chain: structure and stationary solve") {
    const PermTable t2 = PermTable::build(2);
    const MtfChain mtf2 = build_mtf_transition(WeightVector({2, 1}), t2);
    CHECK(mtf2.matrix.entries(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(mtf2.matrix.entries(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(mtf2.pi.probs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(mtf2.pi.probs[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    const PermTable t3 = PermTable::build(3);
    const WeightVector w3({4, 2, 1});
    const MtfChain mtf3 = build_mtf_transition(w3, t3);
    CHECK(max_row_sum_error(mtf3.matrix.entries) <= 1e-14 * 6.0);
    // requesting the back record moves it to the front
    CHECK(mtf3.matrix.entries(static_cast<Eigen::Index>(t3.rank_of({1, 2, 3})),
                              static_cast<Eigen::Index>(t3.rank_of({3, 1, 2}))) ==
          doctest::Approx(1.0 / 7.0).epsilon(1e-14));
    CHECK(stationarity_residual(mtf3.matrix, mtf3.pi) <= 1e-12);

    const MtfChain uniform = build_mtf_transition(WeightVector({1, 1, 1}), t3);
    for (Eigen::Index x = 0; x < 6; ++x)
        CHECK(uniform.pi.probs[x] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("dimension mismatches are rejected") {
    const PermTable t3 = PermTable::build(3);
    CHECK_THROWS_AS(build_transition(ParamVector::unweighted(4), t3), Error);
    CHECK_THROWS_AS(stationary(ParamVector::unweighted(4), t3), Error);
    CHECK_THROWS_AS(build_ma1_transition(WeightVector({2, 1}), t3), Error);
}
