#pragma once

#include <Eigen/Dense>

#include "gapforge/params.hpp"
#include "gapforge/perm.hpp"

namespace gapforge {

enum class ChainKind {
    weighted_adjacent,  // K: uniform position, weighted direction
    ma1_classic,        // record selection, move-ahead-1
    move_to_front,      // record selection, move-to-front
};

const char* chain_kind_name(ChainKind k);

struct TransitionMatrix {
    int n = 0;
    ChainKind kind = ChainKind::weighted_adjacent;
    Eigen::MatrixXd entries;  // row-stochastic, rows/cols in PermTable order

    Eigen::Index size() const { return entries.rows(); }
};

struct StationaryDistribution {
    Eigen::VectorXd probs;  // positive, sums to 1
    double z = 0.0;         // pre-normalization total mass
    bool log_domain = false;
};

// K_xy = p(j,i)/(n-1) when y is x with an adjacent (i,j) pair swapped
// (i left of j in x); diagonal takes the remaining mass.
TransitionMatrix build_transition(const ParamVector& p, const PermTable& table);

// pi_x proportional to prod_{r<s} p(x_r, x_s). Products accumulate in log
// space when n >= 6 or any p_ij < 0.01.
StationaryDistribution stationary(const ParamVector& p, const PermTable& table);

// pi_x proportional to prod_i w_{x_i}^{n-i}; same log-space rule keyed on
// n >= 6 or min/max weight ratio below 0.01.
StationaryDistribution hendricks_stationary(const WeightVector& w, const PermTable& table);

// S(x,y) = pi(x)^{1/2} K(x,y) pi(y)^{-1/2}; same spectrum as K.
// Rejects input pairs whose detailed-balance residual exceeds 1e-10.
Eigen::MatrixXd symmetrized(const TransitionMatrix& K, const StationaryDistribution& pi);

// Record x_i requested with probability w_hat_{x_i}, swapped one position
// ahead (no-op for the front record).
TransitionMatrix build_ma1_transition(const WeightVector& w, const PermTable& table);

struct MtfChain {
    TransitionMatrix matrix;
    StationaryDistribution pi;  // left fixed vector, solved numerically
};

// Record x_i requested with probability w_hat_{x_i}, moved to the front.
MtfChain build_mtf_transition(const WeightVector& w, const PermTable& table);

// max over transitions of |pi_x K_xy - pi_y K_yx| / max(pi_x K_xy, pi_y K_yx).
double detailed_balance_residual(const TransitionMatrix& K, const StationaryDistribution& pi);

// ||pi^T K - pi^T||_1
double stationarity_residual(const TransitionMatrix& K, const StationaryDistribution& pi);

}  // namespace gapforge
