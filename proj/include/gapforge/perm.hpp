#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gapforge/error.hpp"

namespace gapforge {

// A permutation of {1,..,n} stored as labels by position: labels[0] is the
// key at the front of the list.
using Permutation = std::vector<int>;

inline constexpr int kDefaultMaxN = 7;

bool is_permutation(const Permutation& x);

// Swaps positions r-1 and r (1-based positions, 2 <= r <= n).
Permutation adjacent_swap(const Permutation& x, int r);

// (-1)^(number of inversions).
int sign_of(const Permutation& x);

Permutation reverse_of(const Permutation& x);

// "2,1,3" <-> {2,1,3}
std::string perm_to_string(const Permutation& x);
Permutation perm_from_string(const std::string& text);

// The symmetric group S_n enumerated in lexicographic order of the label
// sequences, with rank, reversal and sign lookups. Immutable once built and
// safe to share across threads.
class PermTable {
public:
    static PermTable build(int n, int max_n = kDefaultMaxN);

    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return perms_.size(); }

    const Permutation& perm(std::size_t rank) const { return perms_[rank]; }
    const std::vector<Permutation>& perms() const noexcept { return perms_; }

    // Lexicographic rank; inverse of perm(). Throws on invalid input.
    std::size_t rank_of(const Permutation& x) const;

    std::size_t reverse_rank(std::size_t rank) const { return reverse_rank_[rank]; }
    int sign(std::size_t rank) const { return sign_[rank]; }

    std::size_t identity_rank() const noexcept { return 0; }

private:
    int n_ = 0;
    std::vector<Permutation> perms_;
    std::vector<std::uint32_t> reverse_rank_;
    std::vector<std::int8_t> sign_;
};

std::uint64_t factorial(int n);

}  // namespace gapforge
