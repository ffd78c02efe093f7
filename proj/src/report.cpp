#include "gapforge/report.hpp"

#include <cstdio>

#include "gapforge/version.hpp"

namespace gapforge {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string spectrum_csv(const Spectrum& spectrum) {
    std::string out = "index,eigenvalue,cluster_id\n";
    for (std::size_t i = 0; i < spectrum.size(); ++i)
        out += std::to_string(i + 1) + "," + format_double(spectrum.eigenvalues[i]) + "," +
               std::to_string(spectrum.cluster_id[i]) + "\n";
    return out;
}

std::string scan_csv(const ScanResult& result) {
    const auto pairs = pair_order(result.n);
    std::string out;
    for (const auto& [i, j] : pairs)
        out += "p_" + std::to_string(i) + "_" + std::to_string(j) + ",";
    out += "lambda,beta_multiplicity\n";
    const std::size_t m = pairs.size();
    for (std::size_t r = 0; r < result.total; ++r) {
        for (std::size_t k = 0; k < m; ++k)
            out += format_double(result.assignments[r * m + k]) + ",";
        out += format_double(result.lambda[r]) + "," +
               std::to_string(result.beta_multiplicity[r]) + "\n";
    }
    return out;
}

std::string path_csv(const PathScanResult& result) {
    std::string out = "t,lambda,second_difference\n";
    for (std::size_t k = 0; k < result.t.size(); ++k) {
        out += format_double(result.t[k]) + "," + format_double(result.lambda[k]) + ",";
        if (k >= 1 && k + 1 < result.t.size())
            out += format_double(result.second_difference[k - 1]);
        out += "\n";
    }
    return out;
}

std::string tv_csv(const TVCurve& curve) {
    std::string out = "t,d\n";
    for (std::size_t t = 0; t < curve.d.size(); ++t)
        out += std::to_string(t) + "," + format_double(curve.d[t]) + "\n";
    return out;
}

ordered_json gap_report_json(const GapReport& report) {
    return ordered_json{{"lambda", report.lambda},
                        {"beta", report.beta},
                        {"beta_multiplicity", report.beta_multiplicity},
                        {"inverse_gap", report.inverse_gap}};
}

ordered_json spectrum_json(const Spectrum& spectrum) {
    return ordered_json{{"eigenvalues", spectrum.eigenvalues},
                        {"cluster_id", spectrum.cluster_id},
                        {"cluster_tol", spectrum.cluster_tol}};
}

ordered_json similarity_json(const SimilarityCertificate& cert) {
    return ordered_json{{"residual", cert.residual},
                        {"c_description", cert.c_description},
                        {"passed", cert.passed},
                        {"trace_defect", cert.trace_defect}};
}

ordered_json census_json(const MultiplicityCensus& census) {
    return ordered_json{{"nu", census.nu},
                        {"mu", census.mu},
                        {"predicted_mu", census.predicted_mu},
                        {"matches_prediction", census.mu == census.predicted_mu},
                        {"lambda", census.lambda},
                        {"gap_matches_unweighted", census.gap_matches_unweighted}};
}

ordered_json esc_json(const ESCReport& report) {
    return ordered_json{{"weights", report.weights},
                        {"esc_ma1", report.esc_ma1},
                        {"esc_mtf", report.esc_mtf},
                        {"ma1_le_mtf", report.esc_ma1 <= report.esc_mtf + 1e-10}};
}

ordered_json params_json(const ParamVector& p) {
    ordered_json entries = ordered_json::object();
    for (auto [i, j] : pair_order(p.n()))
        entries[std::to_string(i) + "," + std::to_string(j)] = p.upper(i, j);
    return ordered_json{{"n", p.n()}, {"p", entries}};
}

ordered_json scan_summary_json(const ScanResult& result) {
    ordered_json argmin = ordered_json::array();
    for (std::size_t idx : result.argmin) argmin.push_back(params_json(result.point(idx))["p"]);
    bool unweighted_in_argmin = false;
    const std::size_t m = static_cast<std::size_t>(result.n) * (result.n - 1) / 2;
    for (std::size_t idx : result.argmin) {
        bool all_half = true;
        for (std::size_t k = 0; k < m; ++k)
            if (result.assignments[idx * m + k] != 0.5) { all_half = false; break; }
        if (all_half) { unweighted_in_argmin = true; break; }
    }
    return ordered_json{{"n", result.n},
                        {"step", result.step},
                        {"total_points", result.total},
                        {"min_lambda", result.min_lambda},
                        {"argmin_count", result.argmin.size()},
                        {"unweighted_in_argmin", unweighted_in_argmin},
                        {"argmin", argmin}};
}

ordered_json path_json(const PathScanResult& result) {
    return ordered_json{{"t", result.t},
                        {"lambda", result.lambda},
                        {"second_difference", result.second_difference},
                        {"nonincreasing", result.nonincreasing},
                        {"convex", result.convex},
                        {"verdict_basis", "discrete-grid evidence"}};
}

ordered_json tv_json(const TVCurve& curve) {
    return ordered_json{{"start", perm_to_string(curve.start)}, {"d", curve.d}};
}

ordered_json make_report(const std::string& command, ordered_json inputs, ordered_json results,
                         ordered_json tolerances, double wall_seconds) {
    return ordered_json{{"command", command},
                        {"inputs", std::move(inputs)},
                        {"results", std::move(results)},
                        {"tolerances", std::move(tolerances)},
                        {"timings", ordered_json{{"wall_seconds", wall_seconds}}},
                        {"version", kVersion}};
}

}  // namespace gapforge
