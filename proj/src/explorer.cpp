#include "gapforge/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

namespace gapforge {

namespace {

struct GridLattice {
    int n = 0;
    int denom = 0;  // values are k/denom, k in 1..denom-1
    int half = 0;   // lattice index of 1/2
    // pairs in assignment (DFS) order: width-major, then i ascending
    std::vector<std::pair<int, int>> dfs_pairs;
    // for each DFS slot, the lex-order index of the pair
    std::vector<std::size_t> lex_slot;
    // for each DFS slot, the DFS slots bounding it from below (-1 if none)
    std::vector<int> below_left;   // (i, j-1)
    std::vector<int> below_right;  // (i+1, j)
};

GridLattice make_lattice(const GridSpec& spec) {
    if (spec.n < 2) throw Error(errc::validation, "grid spec requires n >= 2");
    if (!(spec.step > 0.0 && spec.step <= 0.5))
        throw Error(errc::validation, "grid step must lie in (0, 0.5]");
    const double half_count = 0.5 / spec.step;
    const int half = static_cast<int>(std::llround(half_count));
    if (std::abs(half * spec.step - 0.5) > 1e-12)
        throw Error(errc::validation,
                    "grid step " + std::to_string(spec.step) + " does not divide 0.5");

    GridLattice lat;
    lat.n = spec.n;
    lat.half = half;
    lat.denom = 2 * half;

    const auto lex = pair_order(spec.n);
    std::map<std::pair<int, int>, std::size_t> lex_index;
    for (std::size_t k = 0; k < lex.size(); ++k) lex_index[lex[k]] = k;

    for (int width = 1; width < spec.n; ++width)
        for (int i = 1; i + width <= spec.n; ++i) lat.dfs_pairs.emplace_back(i, i + width);

    std::map<std::pair<int, int>, int> dfs_index;
    for (std::size_t s = 0; s < lat.dfs_pairs.size(); ++s)
        dfs_index[lat.dfs_pairs[s]] = static_cast<int>(s);

    for (const auto& [i, j] : lat.dfs_pairs) {
        lat.lex_slot.push_back(lex_index.at({i, j}));
        lat.below_left.push_back(j - i >= 2 ? dfs_index.at({i, j - 1}) : -1);
        lat.below_right.push_back(j - i >= 2 ? dfs_index.at({i + 1, j}) : -1);
    }
    return lat;
}

// DFS over lattice indices; every completed assignment is a regular point.
// Regularity reduces to per-pair lower bounds: adjacent pairs start at 1/2,
// wider pairs dominate both one-narrower pairs they contain.
template <typename Fn>
void enumerate_lattice(const GridLattice& lat, Fn&& emit) {
    const std::size_t m = lat.dfs_pairs.size();
    std::vector<int> k(m, 0);
    std::vector<double> values_lex(m, 0.0);

    auto descend = [&](auto&& self, std::size_t slot) -> void {
        if (slot == m) {
            emit(values_lex);
            return;
        }
        int lo = 1;
        if (lat.below_left[slot] < 0) {
            lo = lat.half;  // adjacent pair: p >= 1/2
        } else {
            lo = std::max(k[static_cast<std::size_t>(lat.below_left[slot])],
                          k[static_cast<std::size_t>(lat.below_right[slot])]);
        }
        for (int v = lo; v <= lat.denom - 1; ++v) {
            k[slot] = v;
            values_lex[lat.lex_slot[slot]] = static_cast<double>(v) / lat.denom;
            self(self, slot + 1);
        }
    };
    descend(descend, 0);
}

}  // namespace

void for_each_regular_grid_point(const GridSpec& spec,
                                 const std::function<void(const ParamVector&)>& fn) {
    const GridLattice lat = make_lattice(spec);
    enumerate_lattice(lat, [&](const std::vector<double>& values) {
        fn(ParamVector(spec.n, values));
    });
}

std::vector<ParamVector> regular_grid(const GridSpec& spec) {
    std::vector<ParamVector> out;
    for_each_regular_grid_point(spec, [&](const ParamVector& p) { out.push_back(p); });
    return out;
}

std::size_t regular_grid_size(const GridSpec& spec) {
    const GridLattice lat = make_lattice(spec);
    std::size_t count = 0;
    enumerate_lattice(lat, [&](const std::vector<double>&) { ++count; });
    return count;
}

ParamVector ScanResult::point(std::size_t index) const {
    const std::size_t m = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (index >= total) throw Error(errc::invalid_argument, "scan record index out of range");
    return ParamVector(n, std::vector<double>(assignments.begin() + static_cast<std::ptrdiff_t>(index * m),
                                              assignments.begin() + static_cast<std::ptrdiff_t>((index + 1) * m)));
}

ScanResult scan_grid_min(const GridSpec& spec, int parallelism, const PermTable& table,
                         double arg_tol, const ScanProgress& progress, int max_n) {
    if (spec.n != table.n())
        throw Error(errc::dimension_mismatch, "scan_grid_min: spec n does not match table");
    if (spec.n > max_n)
        throw Error(errc::size_limit,
                    "grid scan at n=" + std::to_string(spec.n) + " exceeds the scan cap " +
                        std::to_string(max_n) + " (raise with --max-n-override)");
    const auto t0 = std::chrono::steady_clock::now();

    ScanResult result;
    result.n = spec.n;
    result.step = spec.step;
    result.arg_tol = arg_tol;

    const GridLattice lat = make_lattice(spec);
    const std::size_t m = lat.dfs_pairs.size();
    enumerate_lattice(lat, [&](const std::vector<double>& values) {
        result.assignments.insert(result.assignments.end(), values.begin(), values.end());
    });
    result.total = result.assignments.size() / m;
    result.lambda.resize(result.total);
    result.beta_multiplicity.resize(result.total);

    const int jobs = std::max(1, parallelism);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        try {
            for (;;) {
                const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= result.total || failed.load(std::memory_order_relaxed)) break;
                const ParamVector p(spec.n,
                                    std::vector<double>(result.assignments.begin() + static_cast<std::ptrdiff_t>(i * m),
                                                        result.assignments.begin() + static_cast<std::ptrdiff_t>((i + 1) * m)));
                const GapReport rep = gap_report(p, table);
                result.lambda[i] = rep.lambda;
                result.beta_multiplicity[i] = rep.beta_multiplicity;
                done.fetch_add(1, std::memory_order_relaxed);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
        }
    };

    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    while (done.load(std::memory_order_relaxed) < result.total &&
           !failed.load(std::memory_order_relaxed)) {
        if (progress) progress(done.load(std::memory_order_relaxed), result.total);
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    if (progress) progress(result.total, result.total);

    result.min_lambda = *std::min_element(result.lambda.begin(), result.lambda.end());
    for (std::size_t i = 0; i < result.total; ++i)
        if (result.lambda[i] <= result.min_lambda + arg_tol) result.argmin.push_back(i);

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

ParamVector interpolate_to_unweighted(const ParamVector& p, double t) {
    std::vector<double> values = p.values();
    for (double& v : values) v = v + t * (0.5 - v);
    return ParamVector(p.n(), std::move(values));
}

PathScanResult scan_path(const PathSpec& spec, const PermTable& table, double mono_tol,
                         double conv_tol) {
    const auto reg = is_regular(spec.endpoint);
    if (!reg.regular)
        throw Error(errc::validation,
                    "path endpoint is not regular (condition " + std::to_string(reg.condition) +
                        " at i=" + std::to_string(reg.i) + ", j=" + std::to_string(reg.j) + ")");
    if (spec.steps < 2) throw Error(errc::validation, "path needs at least 2 steps");

    PathScanResult out;
    out.mono_tol = mono_tol;
    out.conv_tol = conv_tol;
    const int m = spec.steps;
    for (int k = 0; k < m; ++k) {
        const double t = static_cast<double>(k) / (m - 1);
        out.t.push_back(t);
        out.lambda.push_back(gap_report(interpolate_to_unweighted(spec.endpoint, t), table).lambda);
    }

    out.nonincreasing = true;
    for (int k = 0; k + 1 < m; ++k)
        if (!(out.lambda[static_cast<std::size_t>(k + 1)] <=
              out.lambda[static_cast<std::size_t>(k)] + mono_tol))
            out.nonincreasing = false;

    out.convex = true;
    for (int k = 1; k + 1 < m; ++k) {
        const double dd = out.lambda[static_cast<std::size_t>(k + 1)] -
                          2.0 * out.lambda[static_cast<std::size_t>(k)] +
                          out.lambda[static_cast<std::size_t>(k - 1)];
        out.second_difference.push_back(dd);
        if (!(dd >= -conv_tol)) out.convex = false;
    }
    return out;
}

MultiplicityCensus multiplicity_census(const ParamVector& p, const PermTable& table) {
    const int n = p.n();
    MultiplicityCensus census;
    for (int i = 1; i <= n; ++i) {
        bool all_half = true;
        for (int j = 1; j <= n && all_half; ++j)
            if (j != i && std::abs(p(i, j) - 0.5) > 1e-12) all_half = false;
        if (all_half) ++census.nu;
    }
    census.predicted_mu =
        (census.nu == n || census.nu == n - 2) ? n - 1 : census.nu;

    const GapReport rep = gap_report(p, table);
    census.mu = rep.beta_multiplicity;
    census.lambda = rep.lambda;
    census.gap_matches_unweighted = std::abs(rep.lambda - unweighted_gap(n)) <= 1e-9;
    return census;
}

}  // namespace gapforge
