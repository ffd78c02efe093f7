#pragma once

#include <vector>

#include "gapforge/chain.hpp"

namespace gapforge {

// Cap on horizon * state count for exact distribution propagation.
inline constexpr double kTvBudget = 5e8;

struct TVCurve {
    Permutation start;
    std::vector<double> d;  // d[t] = total-variation distance after t steps
};

// Exact propagation of the point mass at start: d(t) = 0.5 * ||row_t - pi||_1.
TVCurve tv_curve(const TransitionMatrix& chain, const StationaryDistribution& pi,
                 const PermTable& table, const Permutation& start, int horizon,
                 double budget = kTvBudget);

// Stationary probability, under the move-ahead-1 law for w, that label i
// precedes label j.
double front_probability(const WeightVector& w, int i, int j, const PermTable& table);

// w_i = 2^{-i} / (1 - 2^{-n}); normalized geometric request weights.
WeightVector geometric_weights(int n);

struct ESCReport {
    std::vector<double> weights;
    double esc_ma1 = 0.0;
    double esc_mtf = 0.0;
};

// Stationary expected search cost sum_x pi(x) sum_i i * w_hat_{x_i} for the
// move-ahead-1 chain (product-form stationary law) and the move-to-front
// chain (numeric stationary law).
ESCReport esc_report(const WeightVector& w, const PermTable& table);

}  // namespace gapforge
