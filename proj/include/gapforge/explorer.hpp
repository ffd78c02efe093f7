#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "gapforge/spectral.hpp"

namespace gapforge {

inline constexpr double kArgTol = 1e-9;
inline constexpr double kMonoTol = 1e-8;
inline constexpr double kConvTol = 1e-8;

// Regular lattice over the parameter polytope: every p_ij a multiple of
// step inside (0,1), filtered by the regularity conditions. step must
// divide 0.5 so that the conditions have exact lattice ties.
struct GridSpec {
    int n = 0;
    double step = 0.05;
};

// Deterministic enumeration of the regular grid points. Regularity is
// decided on the integer lattice indices, never on floating values.
void for_each_regular_grid_point(const GridSpec& spec,
                                 const std::function<void(const ParamVector&)>& fn);
std::vector<ParamVector> regular_grid(const GridSpec& spec);
std::size_t regular_grid_size(const GridSpec& spec);

struct ScanResult {
    int n = 0;
    double step = 0.0;
    std::size_t total = 0;
    std::vector<double> assignments;       // total x pair_count, lex pair order
    std::vector<double> lambda;            // per point
    std::vector<int> beta_multiplicity;    // per point
    std::vector<std::size_t> argmin;       // all indices within arg_tol of the min
    double min_lambda = 0.0;
    double arg_tol = kArgTol;
    double wall_seconds = 0.0;

    ParamVector point(std::size_t index) const;
};

inline constexpr int kDefaultMaxScanN = 5;

// Gap at every regular grid point. Results are index-ordered and identical
// for any parallelism degree.
using ScanProgress = std::function<void(std::size_t done, std::size_t total)>;
ScanResult scan_grid_min(const GridSpec& spec, int parallelism, const PermTable& table,
                         double arg_tol = kArgTol, const ScanProgress& progress = {},
                         int max_n = kDefaultMaxScanN);

// Straight-line interpolation from a regular endpoint to the unweighted
// vector: p(t) = (1-t) p + t p_star on the grid t_k = k/(m-1).
struct PathSpec {
    ParamVector endpoint;
    int steps = 11;
};

ParamVector interpolate_to_unweighted(const ParamVector& p, double t);

struct PathScanResult {
    std::vector<double> t;
    std::vector<double> lambda;
    std::vector<double> second_difference;  // size m-2, at interior points
    bool nonincreasing = false;
    bool convex = false;
    double mono_tol = kMonoTol;
    double conv_tol = kConvTol;
};

PathScanResult scan_path(const PathSpec& spec, const PermTable& table,
                         double mono_tol = kMonoTol, double conv_tol = kConvTol);

struct MultiplicityCensus {
    int nu = 0;            // indices i with p_ij = 1/2 for all j != i
    int mu = 0;            // beta cluster multiplicity
    int predicted_mu = 0;  // nu, except n-1 when nu = n or nu = n-2
    double lambda = 0.0;
    bool gap_matches_unweighted = false;  // |lambda - unweighted_gap(n)| <= 1e-9
};

MultiplicityCensus multiplicity_census(const ParamVector& p, const PermTable& table);

}  // namespace gapforge
