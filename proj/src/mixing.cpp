#include "gapforge/mixing.hpp"

#include <cmath>

namespace gapforge {

TVCurve tv_curve(const TransitionMatrix& chain, const StationaryDistribution& pi,
                 const PermTable& table, const Permutation& start, int horizon,
                 double budget) {
    const auto N = chain.entries.rows();
    if (pi.probs.size() != N || static_cast<Eigen::Index>(table.size()) != N)
        throw Error(errc::dimension_mismatch, "tv_curve: matrix, distribution and table sizes differ");
    if (horizon < 0) throw Error(errc::invalid_argument, "tv_curve: negative horizon");
    if (static_cast<double>(horizon) * static_cast<double>(N) > budget)
        throw Error(errc::resource,
                    "tv_curve: horizon " + std::to_string(horizon) + " x " + std::to_string(N) +
                        " states exceeds the propagation budget");
    const double stat_res = (chain.entries.transpose() * pi.probs - pi.probs).lpNorm<1>();
    if (stat_res > 1e-8)
        throw Error(errc::validation,
                    "tv_curve: supplied distribution is not stationary (residual " +
                        std::to_string(stat_res) + ")");

    TVCurve curve;
    curve.start = start;

    Eigen::VectorXd row = Eigen::VectorXd::Zero(N);
    row[static_cast<Eigen::Index>(table.rank_of(start))] = 1.0;

    for (int t = 0; t <= horizon; ++t) {
        curve.d.push_back(0.5 * (row - pi.probs).lpNorm<1>());
        if (t < horizon) row = chain.entries.transpose() * row;
    }
    return curve;
}

double front_probability(const WeightVector& w, int i, int j, const PermTable& table) {
    const int n = table.n();
    if (i < 1 || i > n || j < 1 || j > n || i == j)
        throw Error(errc::invalid_argument,
                    "front_probability: labels (" + std::to_string(i) + "," + std::to_string(j) +
                        ") invalid for n=" + std::to_string(n));
    const StationaryDistribution pi = hendricks_stationary(w, table);
    double total = 0.0;
    for (std::size_t x = 0; x < table.size(); ++x) {
        for (int v : table.perm(x)) {
            if (v == i) { total += pi.probs[static_cast<Eigen::Index>(x)]; break; }
            if (v == j) break;
        }
    }
    return total;
}

WeightVector geometric_weights(int n) {
    if (n < 2) throw Error(errc::invalid_argument, "geometric_weights requires n >= 2");
    const double norm = 1.0 - std::pow(2.0, -n);
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        w[static_cast<std::size_t>(i - 1)] = std::pow(2.0, -i) / norm;
    return WeightVector(std::move(w));
}

ESCReport esc_report(const WeightVector& w, const PermTable& table) {
    if (w.n() != table.n())
        throw Error(errc::dimension_mismatch, "esc_report: weights do not match table");
    const int n = table.n();
    const auto what = w.normalized();

    auto esc_under = [&](const StationaryDistribution& pi) {
        double esc = 0.0;
        for (std::size_t x = 0; x < table.size(); ++x) {
            const Permutation& perm = table.perm(x);
            double cost = 0.0;
            for (int pos = 1; pos <= n; ++pos)
                cost += static_cast<double>(pos) *
                        what[static_cast<std::size_t>(perm[static_cast<std::size_t>(pos - 1)] - 1)];
            esc += pi.probs[static_cast<Eigen::Index>(x)] * cost;
        }
        return esc;
    };

    ESCReport report;
    report.weights = w.values();
    report.esc_ma1 = esc_under(hendricks_stationary(w, table));
    report.esc_mtf = esc_under(build_mtf_transition(w, table).pi);
    return report;
}

}  // namespace gapforge
