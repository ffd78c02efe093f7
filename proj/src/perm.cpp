#include "gapforge/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gapforge {

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

bool is_permutation(const Permutation& x) {
    const int n = static_cast<int>(x.size());
    if (n == 0) return false;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : x) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)]) return false;
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
    return true;
}

Permutation adjacent_swap(const Permutation& x, int r) {
    const int n = static_cast<int>(x.size());
    if (r < 2 || r > n)
        throw Error(errc::invalid_argument,
                    "adjacent_swap: position r=" + std::to_string(r) +
                        " outside 2.." + std::to_string(n));
    Permutation y = x;
    std::swap(y[static_cast<std::size_t>(r - 2)], y[static_cast<std::size_t>(r - 1)]);
    return y;
}

int sign_of(const Permutation& x) {
    const std::size_t n = x.size();
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (x[i] > x[j]) ++inversions;
    return (inversions % 2 == 0) ? 1 : -1;
}

Permutation reverse_of(const Permutation& x) {
    return Permutation(x.rbegin(), x.rend());
}

std::string perm_to_string(const Permutation& x) {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(x[i]);
    }
    return out;
}

Permutation perm_from_string(const std::string& text) {
    Permutation x;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            int v = std::stoi(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            x.push_back(v);
        } catch (const std::exception&) {
            throw Error(errc::parse, "bad permutation token '" + tok + "' in '" + text + "'");
        }
    }
    if (!is_permutation(x))
        throw Error(errc::validation, "'" + text + "' is not a permutation of 1..n");
    return x;
}

PermTable PermTable::build(int n, int max_n) {
    if (n < 2)
        throw Error(errc::size_limit, "n=" + std::to_string(n) + " below minimum 2");
    if (n > max_n)
        throw Error(errc::size_limit,
                    "n=" + std::to_string(n) + " exceeds the size cap " + std::to_string(max_n) +
                        " (raise with --max-n-override or GAPFORGE_MAX_N)");

    PermTable t;
    t.n_ = n;
    const std::uint64_t nf = factorial(n);
    t.perms_.reserve(nf);

    Permutation x(static_cast<std::size_t>(n));
    std::iota(x.begin(), x.end(), 1);
    do {
        t.perms_.push_back(x);
    } while (std::next_permutation(x.begin(), x.end()));

    t.reverse_rank_.resize(t.perms_.size());
    t.sign_.resize(t.perms_.size());
    for (std::size_t k = 0; k < t.perms_.size(); ++k) {
        t.reverse_rank_[k] = static_cast<std::uint32_t>(t.rank_of(reverse_of(t.perms_[k])));
        t.sign_[k] = static_cast<std::int8_t>(sign_of(t.perms_[k]));
    }
    return t;
}

std::size_t PermTable::rank_of(const Permutation& x) const {
    if (static_cast<int>(x.size()) != n_ || !is_permutation(x))
        throw Error(errc::invalid_argument,
                    "rank_of: '" + perm_to_string(x) + "' is not a permutation of 1.." +
                        std::to_string(n_));
    // Factorial-basis count of smaller unused labels per position.
    std::size_t rank = 0;
    std::uint64_t suffix = factorial(n_ - 1);
    std::vector<bool> used(static_cast<std::size_t>(n_), false);
    for (int i = 0; i < n_; ++i) {
        int smaller = 0;
        for (int v = 1; v < x[static_cast<std::size_t>(i)]; ++v)
            if (!used[static_cast<std::size_t>(v - 1)]) ++smaller;
        rank += static_cast<std::size_t>(smaller) * suffix;
        used[static_cast<std::size_t>(x[static_cast<std::size_t>(i)] - 1)] = true;
        if (i < n_ - 1) suffix /= static_cast<std::uint64_t>(n_ - 1 - i);
    }
    return rank;
}

}  // namespace gapforge
