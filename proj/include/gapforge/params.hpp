#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gapforge/error.hpp"

namespace gapforge {

inline constexpr double kBoundaryTol = 1e-12;

// The p_ij parameters for 1 <= i < j <= n, each strictly inside (0,1);
// p_ji is implied as 1 - p_ij.
class ParamVector {
public:
    ParamVector(int n, std::vector<double> upper_triangle);

    static ParamVector unweighted(int n);

    int n() const noexcept { return n_; }
    std::size_t pair_count() const noexcept { return p_.size(); }

    // p(i,j) for any i != j.
    double operator()(int i, int j) const;

    // Stored upper-triangle value, 1 <= i < j <= n.
    double upper(int i, int j) const { return p_[pair_index(i, j)]; }

    const std::vector<double>& values() const noexcept { return p_; }

    std::size_t pair_index(int i, int j) const;

    bool operator==(const ParamVector& other) const = default;

private:
    int n_ = 0;
    std::vector<double> p_;  // (1,2),(1,3),...,(1,n),(2,3),...,(n-1,n)
};

// Lexicographic list of the ordered pairs (i,j), i<j, matching ParamVector
// storage and every interchange format.
std::vector<std::pair<int, int>> pair_order(int n);

struct RegularityReport {
    bool regular = true;
    int condition = 0;  // 1..3, first violated; 0 when regular
    int i = 0;
    int j = 0;
};

// The three monotonicity conditions: adjacent pairs at least 1/2, and p
// nondecreasing as a pair widens on either side.
RegularityReport is_regular(const ParamVector& p);

// Request weights, required strictly positive and nonincreasing.
class WeightVector {
public:
    explicit WeightVector(std::vector<double> w);

    int n() const noexcept { return static_cast<int>(w_.size()); }
    double operator[](std::size_t i) const { return w_[i]; }
    const std::vector<double>& values() const noexcept { return w_; }

    // Normalized to sum 1 (request probabilities).
    std::vector<double> normalized() const;

private:
    std::vector<double> w_;
};

// p_ij = w_i / (w_i + w_j); always regular for nonincreasing w.
ParamVector params_from_weights(const WeightVector& w);

// Text format "1,2=0.5;1,3=0.7;2,3=0.7" (every pair exactly once).
ParamVector params_from_text(const std::string& text, int n);
std::string params_to_text(const ParamVector& p);

// JSON format {"n": 3, "p": {"1,2": 0.5, ...}}.
ParamVector params_from_json_text(const std::string& text);

WeightVector weights_from_text(const std::string& text);
std::string weights_to_text(const WeightVector& w);

}  // namespace gapforge
