// gapforge: spectral analysis and conjecture experiments for weighted
// adjacent-transposition Markov chains on permutations.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "gapforge/explorer.hpp"
#include "gapforge/mixing.hpp"
#include "gapforge/random.hpp"
#include "gapforge/report.hpp"
#include "gapforge/version.hpp"

using namespace gapforge;

namespace {

struct Options {
    int n = 0;
    std::string p_text;
    std::string weights_text;
    double step = 0.05;
    int steps = 11;
    int t_max = 100;
    int jobs = 0;  // 0 = one per hardware thread
    std::string start_text;
    std::string kind = "uniform-position";
    std::string out;
    std::string format = "json";
    int max_n_override = 0;
    bool strict = false;
    std::string recipe;
};

int resolve_jobs(const Options& opt) {
    if (opt.jobs > 0) return opt.jobs;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

int resolve_max_n(const Options& opt) {
    if (opt.max_n_override > 0) return opt.max_n_override;
    if (const char* env = std::getenv("GAPFORGE_MAX_N")) {
        try {
            return std::max(kDefaultMaxN, std::stoi(env));
        } catch (const std::exception&) {
            throw Error(errc::parse, std::string("GAPFORGE_MAX_N='") + env + "' is not an integer");
        }
    }
    return kDefaultMaxN;
}

PermTable make_table(int n, const Options& opt) {
    if (n >= 8)
        std::cerr << "warning: n=" << n << " builds a " << factorial(n) << "x" << factorial(n)
                  << " dense matrix; expect heavy memory use\n";
    return PermTable::build(n, resolve_max_n(opt));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::parse, "cannot read parameter file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

bool looks_like_json(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{';
    }
    return false;
}

// Exactly one parameter source; weights convert through w_i/(w_i+w_j).
ParamVector load_params(const Options& opt) {
    const bool has_p = !opt.p_text.empty();
    const bool has_w = !opt.weights_text.empty();
    if (has_p == has_w)
        throw Error(errc::invalid_argument, "give exactly one parameter source: --p or --weights");
    if (has_w) {
        ParamVector p = params_from_weights(weights_from_text(opt.weights_text));
        if (opt.n != 0 && opt.n != p.n())
            throw Error(errc::invalid_argument, "--n disagrees with the weight count");
        return p;
    }
    std::string text = opt.p_text;
    if (!text.empty() && text[0] == '@') text = slurp(text.substr(1));
    if (looks_like_json(text)) {
        ParamVector p = params_from_json_text(text);
        if (opt.n != 0 && opt.n != p.n())
            throw Error(errc::invalid_argument, "--n disagrees with the JSON parameter document");
        return p;
    }
    if (opt.n == 0) throw Error(errc::invalid_argument, "--n is required with textual --p");
    return params_from_text(text, opt.n);
}

WeightVector load_weights(const Options& opt) {
    if (opt.weights_text.empty())
        throw Error(errc::invalid_argument, "this command needs --weights");
    return weights_from_text(opt.weights_text);
}

void emit(const Options& opt, const std::string& payload) {
    if (opt.out.empty()) {
        std::cout << payload;
        if (payload.empty() || payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw Error(errc::resource, "cannot write output file '" + opt.out + "'");
    out << payload;
}

void emit_report(const Options& opt, const ordered_json& report) {
    emit(opt, report.dump(2));
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// command handlers
// ---------------------------------------------------------------------------

int cmd_gap(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const ParamVector p = load_params(opt);
    const PermTable table = make_table(p.n(), opt);
    const GapReport rep = gap_report(p, table);
    emit_report(opt, make_report("gap", params_json(p), gap_report_json(rep),
                                 {{"cluster_tol", kClusterTol}}, seconds_since(t0)));
    return 0;
}

int cmd_spectrum(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const ParamVector p = load_params(opt);
    const PermTable table = make_table(p.n(), opt);
    const GapReport rep = gap_report(p, table);
    if (opt.format == "csv") {
        emit(opt, spectrum_csv(rep.spectrum));
        return 0;
    }
    ordered_json results = spectrum_json(rep.spectrum);
    results["gap"] = gap_report_json(rep);
    emit_report(opt, make_report("spectrum", params_json(p), results,
                                 {{"cluster_tol", kClusterTol}}, seconds_since(t0)));
    return 0;
}

int cmd_verify(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const ParamVector p = load_params(opt);
    const PermTable table = make_table(p.n(), opt);

    const TransitionMatrix K = build_transition(p, table);
    const StationaryDistribution pi = stationary(p, table);
    const auto N = K.entries.rows();

    double row_sum_residual = 0.0;
    for (Eigen::Index x = 0; x < N; ++x)
        row_sum_residual = std::max(row_sum_residual, std::abs(K.entries.row(x).sum() - 1.0));
    const double db = detailed_balance_residual(K, pi);
    const double stat = stationarity_residual(K, pi);
    const Spectrum spec = eigen_sym(symmetrized(K, pi));
    const double pairing = pairing_defect(spec);
    const SimilarityCertificate cert = similarity_certificate(p, table);

    const double min_eig = spec.eigenvalues.back();
    const double max_eig = spec.eigenvalues.front();
    ordered_json results{{"row_sum_residual", row_sum_residual},
                         {"detailed_balance_residual", db},
                         {"stationarity_residual", stat},
                         {"pairing_defect", pairing},
                         {"min_eigenvalue", min_eig},
                         {"max_eigenvalue", max_eig},
                         {"similarity", similarity_json(cert)},
                         {"passed",
                          ordered_json{{"detailed_balance", db <= 1e-10},
                                       {"stationarity", stat <= 1e-12},
                                       {"pairing", pairing <= 1e-9},
                                       {"spectrum_nonnegative", min_eig >= -1e-10},
                                       {"similarity", cert.passed},
                                       {"trace", std::abs(cert.trace_defect) <= 1e-9}}}};
    ordered_json tolerances{{"detailed_balance", 1e-10}, {"stationarity", 1e-12},
                            {"pairing", 1e-9},           {"spectrum_floor", -1e-10},
                            {"similarity", 1e-8},        {"trace", 1e-9}};
    const ordered_json report =
        make_report("verify", params_json(p), results, tolerances, seconds_since(t0));
    emit_report(opt, report);
    for (const auto& [key, value] : report["results"]["passed"].items())
        if (!value.get<bool>()) return 1;
    return 0;
}

int cmd_scan_grid(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    if (opt.n == 0) throw Error(errc::invalid_argument, "scan-grid needs --n");
    const PermTable table = make_table(opt.n, opt);
    const GridSpec spec{opt.n, opt.step};

    std::size_t last_percent = static_cast<std::size_t>(-1);
    const ScanProgress progress = [&](std::size_t done, std::size_t total) {
        const std::size_t percent = total == 0 ? 100 : done * 100 / total;
        if (percent != last_percent) {
            std::cerr << "scan-grid: " << done << "/" << total << " (" << percent << "%)\n";
            last_percent = percent;
        }
    };

    const int jobs = resolve_jobs(opt);
    const int scan_cap = opt.max_n_override > 0 ? opt.max_n_override : kDefaultMaxScanN;
    const ScanResult result = scan_grid_min(spec, jobs, table, kArgTol, progress, scan_cap);
    if (opt.format == "csv") {
        emit(opt, scan_csv(result));
        return 0;
    }
    ordered_json inputs{{"n", opt.n}, {"step", opt.step}, {"jobs", jobs}};
    emit_report(opt, make_report("scan-grid", inputs, scan_summary_json(result),
                                 {{"arg_tol", kArgTol}}, seconds_since(t0)));
    return 0;
}

int cmd_scan_path(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const ParamVector p = load_params(opt);
    const PermTable table = make_table(p.n(), opt);
    const PathScanResult result = scan_path(PathSpec{p, opt.steps}, table);
    if (opt.format == "csv") {
        emit(opt, path_csv(result));
        return 0;
    }
    ordered_json inputs = params_json(p);
    inputs["steps"] = opt.steps;
    emit_report(opt, make_report("scan-path", inputs, path_json(result),
                                 {{"mono_tol", kMonoTol}, {"conv_tol", kConvTol}},
                                 seconds_since(t0)));
    return 0;
}

int cmd_census(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const ParamVector p = load_params(opt);
    const PermTable table = make_table(p.n(), opt);
    const MultiplicityCensus census = multiplicity_census(p, table);
    emit_report(opt, make_report("census", params_json(p), census_json(census),
                                 {{"half_tol", 1e-12}, {"gap_tol", 1e-9}}, seconds_since(t0)));
    return 0;
}

int cmd_mixing(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();

    TransitionMatrix chain;
    StationaryDistribution pi;
    int n = 0;
    if (opt.kind == "uniform-position") {
        const ParamVector p = load_params(opt);
        n = p.n();
        const PermTable table = make_table(n, opt);
        chain = build_transition(p, table);
        pi = stationary(p, table);
        const Permutation start =
            opt.start_text.empty() ? table.perm(0) : perm_from_string(opt.start_text);
        const TVCurve curve = tv_curve(chain, pi, table, start, opt.t_max);
        if (opt.format == "csv") { emit(opt, tv_csv(curve)); return 0; }
        ordered_json inputs = params_json(p);
        inputs["kind"] = opt.kind;
        inputs["matrix_kind"] = chain_kind_name(chain.kind);
        inputs["start"] = perm_to_string(start);
        inputs["t_max"] = opt.t_max;
        emit_report(opt, make_report("mixing", inputs, tv_json(curve), ordered_json::object(),
                                     seconds_since(t0)));
        return 0;
    }

    const WeightVector w = load_weights(opt);
    n = w.n();
    const PermTable table = make_table(n, opt);
    if (opt.kind == "ma1") {
        chain = build_ma1_transition(w, table);
        pi = hendricks_stationary(w, table);
    } else if (opt.kind == "mtf") {
        MtfChain mtf = build_mtf_transition(w, table);
        chain = std::move(mtf.matrix);
        pi = std::move(mtf.pi);
    } else {
        throw Error(errc::invalid_argument,
                    "unknown chain kind '" + opt.kind + "' (uniform-position, ma1, mtf)");
    }
    const Permutation start =
        opt.start_text.empty() ? table.perm(0) : perm_from_string(opt.start_text);
    const TVCurve curve = tv_curve(chain, pi, table, start, opt.t_max);
    if (opt.format == "csv") { emit(opt, tv_csv(curve)); return 0; }
    ordered_json inputs{{"kind", opt.kind},
                        {"matrix_kind", chain_kind_name(chain.kind)},
                        {"weights", w.values()},
                        {"start", perm_to_string(start)},
                        {"t_max", opt.t_max}};
    emit_report(opt, make_report("mixing", inputs, tv_json(curve), ordered_json::object(),
                                 seconds_since(t0)));
    return 0;
}

int cmd_esc(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const WeightVector w = load_weights(opt);
    const PermTable table = make_table(w.n(), opt);
    const ESCReport report = esc_report(w, table);
    emit_report(opt, make_report("esc", ordered_json{{"weights", w.values()}}, esc_json(report),
                                 {{"ordering_slack", 1e-10}}, seconds_since(t0)));
    return 0;
}

// ---------------------------------------------------------------------------
// reproduce recipes
// ---------------------------------------------------------------------------

struct CheckList {
    ordered_json checks = ordered_json::array();
    bool all_passed = true;

    void add(const std::string& name, double expected, double actual, double tol) {
        const bool ok = std::abs(expected - actual) <= tol;
        checks.push_back(ordered_json{{"check", name},
                                      {"expected", expected},
                                      {"actual", actual},
                                      {"tolerance", tol},
                                      {"passed", ok}});
        all_passed = all_passed && ok;
    }

    void add_flag(const std::string& name, bool ok, ordered_json detail = {}) {
        ordered_json entry{{"check", name}, {"passed", ok}};
        if (!detail.is_null()) entry["detail"] = std::move(detail);
        checks.push_back(std::move(entry));
        all_passed = all_passed && ok;
    }
};

ParamVector stronger_a_vector(double p12) {
    // n=4; pairs (1,2),(1,3),(1,4),(2,3),(2,4),(3,4)
    return ParamVector(4, {p12, 0.7, 0.9, 0.7, 0.8, 0.5});
}

// One all-half witness column i* in 2..n-1; the free block {(i,j): i<i*<j}
// sampled above 1/2 respecting the dominance order.
ParamVector random_one_witness_pattern(int n, int witness, Rng& rng) {
    std::vector<double> values(static_cast<std::size_t>(n) * (n - 1) / 2, 0.5);
    ParamVector probe = ParamVector::unweighted(n);
    std::map<std::pair<int, int>, double> block;
    for (int i = witness - 1; i >= 1; --i) {
        for (int j = witness + 1; j <= n; ++j) {
            double lo = 0.5;
            if (j - 1 > witness) lo = std::max(lo, block.at({i, j - 1}));
            if (i + 1 < witness) lo = std::max(lo, block.at({i + 1, j}));
            const double v = rng.uniform(std::max(lo, 0.55), 0.95);
            block[{i, j}] = v;
            values[probe.pair_index(i, j)] = v;
        }
    }
    return ParamVector(n, std::move(values));
}

int run_recipe(const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string& name = opt.recipe;
    CheckList list;
    ordered_json inputs{{"recipe", name}};
    bool soft = false;

    if (name == "evidence-a") {
        const PermTable table = make_table(2, opt);
        for (double p12 : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const GapReport rep = gap_report(ParamVector(2, {p12}), table);
            list.add("lambda(p12=" + format_double(p12) + ")", 1.0, rep.lambda, 1e-12);
        }
    } else if (name == "evidence-b") {
        const PermTable table = make_table(3, opt);
        Rng rng(1001);
        int regular_count = 0;
        double worst_diff = 0.0;
        bool mult_ok = true;
        for (int trial = 0; trial < 100; ++trial) {
            const ParamVector p = (trial % 2 == 0) ? random_regular_param_vector(3, rng)
                                                   : random_param_vector(3, rng);
            const GapReport rep = gap_report(p, table);
            worst_diff = std::max(worst_diff, std::abs(rep.lambda - n3_gap_closed(p)));
            if (is_regular(p).regular) {
                ++regular_count;
                mult_ok = mult_ok && rep.beta_multiplicity == 2;
            }
        }
        list.add("max |closed form - solver| over 100 draws", 0.0, worst_diff, 1e-9);
        list.add_flag("beta multiplicity 2 on all " + std::to_string(regular_count) +
                          " regular draws",
                      mult_ok);
        for (double p13 : {0.55, 0.7, 0.9}) {
            const GapReport rep = gap_report(ParamVector(3, {0.5, p13, 0.5}), table);
            list.add("p13-irrelevance at p13=" + format_double(p13), 0.25, rep.lambda, 1e-9);
        }
    } else if (name == "evidence-c") {
        const int n = opt.n == 0 ? 4 : opt.n;
        const double step = opt.step;
        const PermTable table = make_table(n, opt);
        std::size_t last_percent = static_cast<std::size_t>(-1);
        const ScanResult result = scan_grid_min(
            GridSpec{n, step}, resolve_jobs(opt), table, kArgTol,
            [&](std::size_t done, std::size_t total) {
                const std::size_t percent = total == 0 ? 100 : done * 100 / total;
                if (percent != last_percent) {
                    std::cerr << "evidence-c: " << done << "/" << total << "\n";
                    last_percent = percent;
                }
            },
            opt.max_n_override > 0 ? opt.max_n_override : kDefaultMaxScanN);
        inputs["n"] = n;
        inputs["step"] = step;
        const ordered_json summary = scan_summary_json(result);
        list.add("min lambda equals unweighted gap", unweighted_gap(n), result.min_lambda, 1e-9);
        list.add_flag("argmin contains the unweighted point",
                      summary["unweighted_in_argmin"].get<bool>(),
                      ordered_json{{"argmin_count", result.argmin.size()},
                                   {"total_points", result.total}});
    } else if (name == "theorem-1") {
        const int n_max = opt.n == 0 ? 6 : opt.n;
        for (int n = 2; n <= n_max; ++n) {
            const PermTable table = make_table(n, opt);
            const GapReport rep = gap_report(ParamVector::unweighted(n), table);
            list.add("unweighted gap n=" + std::to_string(n), unweighted_gap(n), rep.lambda, 1e-9);
        }
    } else if (name == "theorem-2") {
        Rng rng(1002);
        for (int n : {3, 4}) {
            const PermTable table = make_table(n, opt);
            double worst_pairing = 0.0, worst_min_eig = 1.0, worst_similarity = 0.0,
                   worst_trace = 0.0;
            for (int trial = 0; trial < 100; ++trial) {
                const ParamVector p = random_param_vector(n, rng);
                const GapReport rep = gap_report(p, table);
                worst_pairing = std::max(worst_pairing, pairing_defect(rep.spectrum));
                worst_min_eig = std::min(worst_min_eig, rep.spectrum.eigenvalues.back());
                const SimilarityCertificate cert = similarity_certificate(p, table);
                worst_similarity = std::max(worst_similarity, cert.residual);
                worst_trace = std::max(worst_trace, std::abs(cert.trace_defect));
            }
            const std::string tag = " (n=" + std::to_string(n) + ", 100 draws)";
            list.add("max pairing defect" + tag, 0.0, worst_pairing, 1e-9);
            list.add_flag("min eigenvalue >= -1e-10" + tag, worst_min_eig >= -1e-10,
                          ordered_json{{"min_eigenvalue", worst_min_eig}});
            list.add("max similarity residual" + tag, 0.0, worst_similarity, 1e-8);
            list.add("max |trace - N/2|" + tag, 0.0, worst_trace, 1e-9);
        }
    } else if (name == "stronger-a") {
        const PermTable table = make_table(4, opt);
        const double l1 = gap_report(stronger_a_vector(0.5), table).lambda;
        const double l2 = gap_report(stronger_a_vector(0.6), table).lambda;
        list.add("lambda at p12=0.5", 0.1261, l1, 5e-4);
        list.add("lambda at p12=0.6", 0.1259, l2, 5e-4);
        list.add_flag("gap strictly decreases when p12 rises to 0.6", l2 < l1,
                      ordered_json{{"lambda_05", l1}, {"lambda_06", l2}});
    } else if (name == "stronger-b") {
        const PermTable table = make_table(4, opt);
        const GapReport base = gap_report(ParamVector::unweighted(4), table);
        // pairs (1,2),(1,3),(1,4),(2,3),(2,4),(3,4)
        const ParamVector bumped(4, {0.5, 0.5, 0.95, 0.5, 0.95, 0.5});
        const GapReport high = gap_report(bumped, table);
        list.add("unweighted fifth-largest", 0.7887, kth_largest(base.spectrum, 5), 5e-4);
        list.add("fifth-largest at p24=p14=0.95", 0.7944, kth_largest(high.spectrum, 5), 5e-4);
    } else if (name == "stronger-c") {
        soft = true;
        const PermTable table = make_table(4, opt);
        ParamVector probe = ParamVector::unweighted(4);

        const MultiplicityCensus unweighted = multiplicity_census(probe, table);
        list.add_flag("nu=4 (unweighted): mu = 3",
                      unweighted.nu == 4 && unweighted.mu == 3 &&
                          unweighted.gap_matches_unweighted,
                      census_json(unweighted));
        for (double p14 : {0.6, 0.9}) {
            std::vector<double> values(6, 0.5);
            values[probe.pair_index(1, 4)] = p14;
            const MultiplicityCensus census = multiplicity_census(ParamVector(4, values), table);
            list.add_flag("nu=2 pattern (p14=" + format_double(p14) + "): mu = 3",
                          census.nu == 2 && census.mu == 3 && census.gap_matches_unweighted,
                          census_json(census));
        }
        Rng rng(1005);
        for (int trial = 0; trial < 10; ++trial) {
            const int witness = 2 + (trial % 2);
            const ParamVector p = random_one_witness_pattern(4, witness, rng);
            const MultiplicityCensus census = multiplicity_census(p, table);
            list.add_flag("random witness-" + std::to_string(witness) + " pattern #" +
                              std::to_string(trial) + ": nu=1, mu=1, gap at minimum",
                          census.nu == 1 && census.mu == 1 && census.gap_matches_unweighted,
                          census_json(census));
        }
    } else if (name == "stronger-d") {
        soft = true;
        const PermTable table = make_table(4, opt);
        Rng rng(1003);
        bool all_mono = true, all_convex = true;
        for (int trial = 0; trial < 50; ++trial) {
            const PathScanResult path =
                scan_path(PathSpec{random_regular_param_vector(4, rng), 11}, table);
            all_mono = all_mono && path.nonincreasing;
            all_convex = all_convex && path.convex;
        }
        list.add_flag("lambda(t) nonincreasing on 50 random regular paths", all_mono);
        list.add_flag("lambda(t) convex on 50 random regular paths", all_convex);
    } else if (name == "rivest-esc") {
        Rng rng(1004);
        for (int n : {3, 4, 5}) {
            const PermTable table = make_table(n, opt);
            bool ok = true;
            double worst_excess = 0.0;
            for (int trial = 0; trial < 50; ++trial) {
                const ESCReport rep = esc_report(random_nonincreasing_weights(n, rng), table);
                worst_excess = std::max(worst_excess, rep.esc_ma1 - rep.esc_mtf);
                ok = ok && rep.esc_ma1 <= rep.esc_mtf + 1e-10;
            }
            list.add_flag("esc_ma1 <= esc_mtf on 50 draws at n=" + std::to_string(n), ok,
                          ordered_json{{"worst_ma1_minus_mtf", worst_excess}});
        }
        const PermTable table4 = make_table(4, opt);
        const ESCReport example = esc_report(WeightVector({8, 4, 2, 1}), table4);
        list.add_flag("w=(8,4,2,1): esc_ma1 <= esc_mtf",
                      example.esc_ma1 <= example.esc_mtf + 1e-10, esc_json(example));
    } else if (name == "geometric-slow") {
        for (int n = 3; n <= 6; ++n) {
            const PermTable table = make_table(n, opt);
            const WeightVector w = geometric_weights(n);
            const double front = front_probability(w, n - 1, n, table);
            if (n == 3) list.add("P(2 before 3) at n=3", 52.0 / 74.0, front, 1e-12);
            list.add_flag("P(n-1 before n) > 1/2 at n=" + std::to_string(n), front > 0.5,
                          ordered_json{{"front_probability", front}});

            // bad start: sorted except the last two records swapped
            Permutation bad(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) bad[static_cast<std::size_t>(i)] = i + 1;
            std::swap(bad[static_cast<std::size_t>(n - 2)], bad[static_cast<std::size_t>(n - 1)]);
            const TransitionMatrix ma1 = build_ma1_transition(w, table);
            const auto x = table.rank_of(bad);
            Permutation sorted = bad;
            std::swap(sorted[static_cast<std::size_t>(n - 2)],
                      sorted[static_cast<std::size_t>(n - 1)]);
            const auto y = table.rank_of(sorted);
            const double what_n1 = w.normalized()[static_cast<std::size_t>(n - 2)];
            list.add("one-step escape probability from the bad start at n=" + std::to_string(n),
                     what_n1,
                     ma1.entries(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)),
                     1e-15);
        }
        // The bad-start order cannot fix the (n, n-1) pair before record n-1
        // is requested, so d(t) >= (1 - w_hat_{n-1})^t - pi(n ahead of n-1).
        for (int n : {5, 6}) {
            const PermTable table = make_table(n, opt);
            const WeightVector w = geometric_weights(n);
            const double w_req = w.normalized()[static_cast<std::size_t>(n - 2)];
            const double pi_bad_order =
                1.0 - front_probability(w, n - 1, n, table);
            const int t_star = static_cast<int>(std::ceil(1.0 / w_req));

            Permutation bad(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) bad[static_cast<std::size_t>(i)] = i + 1;
            std::swap(bad[static_cast<std::size_t>(n - 2)], bad[static_cast<std::size_t>(n - 1)]);
            const TVCurve curve = tv_curve(build_ma1_transition(w, table),
                                           hendricks_stationary(w, table), table, bad, 2 * t_star);

            bool bound_holds = true;
            for (std::size_t t = 0; t < curve.d.size(); ++t) {
                const double lb = std::pow(1.0 - w_req, static_cast<double>(t)) - pi_bad_order;
                if (curve.d[t] < lb - 1e-12) bound_holds = false;
            }
            list.add_flag(
                "n=" + std::to_string(n) + " TV curve dominates the unswapped-pair bound",
                bound_holds,
                ordered_json{{"request_probability", w_req},
                             {"t_star", t_star},
                             {"d_at_t_star", curve.d[static_cast<std::size_t>(t_star)]},
                             {"bound_at_t_star",
                              std::pow(1.0 - w_req, t_star) - pi_bad_order}});
        }
    } else {
        throw Error(errc::invalid_argument,
                    "unknown recipe '" + name +
                        "' (evidence-a, evidence-b, evidence-c, theorem-1, theorem-2, "
                        "stronger-a, stronger-b, stronger-c, stronger-d, rivest-esc, "
                        "geometric-slow)");
    }

    ordered_json results{{"checks", list.checks},
                         {"all_passed", list.all_passed},
                         {"soft", soft}};
    emit_report(opt, make_report("reproduce", inputs, results, ordered_json::object(),
                                 seconds_since(t0)));
    if (!list.all_passed && (!soft || opt.strict)) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral gap toolkit for weighted adjacent-transposition chains"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool with_jobs = false) {
        cmd->add_option("--n", opt.n, "list length n");
        cmd->add_option("--p", opt.p_text, "parameters: 'i,j=v;...' text, JSON, or @file");
        cmd->add_option("--weights", opt.weights_text, "nonincreasing weights 'w1,w2,...'");
        cmd->add_option("--out", opt.out, "output file (default stdout)");
        cmd->add_option("--format", opt.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--max-n-override", opt.max_n_override,
                        "raise the size cap (default 7; env GAPFORGE_MAX_N)");
        if (with_jobs) cmd->add_option("--jobs", opt.jobs, "scan parallelism");
    };

    auto* gap = app.add_subcommand("gap", "spectral gap report");
    add_common(gap);
    auto* spectrum = app.add_subcommand("spectrum", "full eigenvalue list with clusters");
    add_common(spectrum);
    auto* verify = app.add_subcommand("verify", "reversibility, pairing and similarity certificates");
    add_common(verify);
    auto* scan_grid = app.add_subcommand("scan-grid", "gap minimization over the regular grid");
    add_common(scan_grid, true);
    scan_grid->add_option("--step", opt.step, "grid spacing (must divide 0.5)");
    auto* scan_path_cmd = app.add_subcommand("scan-path", "gap along the line to the unweighted vector");
    add_common(scan_path_cmd);
    scan_path_cmd->add_option("--steps", opt.steps, "points on the path (>= 2)");
    auto* census = app.add_subcommand("census", "all-half index count vs beta multiplicity");
    add_common(census);
    auto* mixing = app.add_subcommand("mixing", "total-variation decay from a start state");
    add_common(mixing);
    mixing->add_option("--kind", opt.kind, "uniform-position, ma1 or mtf");
    mixing->add_option("--start", opt.start_text, "start permutation, e.g. '2,1,3'");
    mixing->add_option("--t-max", opt.t_max, "horizon");
    auto* esc = app.add_subcommand("esc", "stationary expected search cost, ma1 vs mtf");
    add_common(esc);
    auto* reproduce = app.add_subcommand("reproduce", "run a named experiment recipe");
    add_common(reproduce, true);
    reproduce->add_option("recipe", opt.recipe, "recipe name")->required();
    reproduce->add_option("--step", opt.step, "grid spacing for evidence-c");
    reproduce->add_flag("--strict", opt.strict, "fail on soft findings too");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gap->parsed()) return cmd_gap(opt);
        if (spectrum->parsed()) return cmd_spectrum(opt);
        if (verify->parsed()) return cmd_verify(opt);
        if (scan_grid->parsed()) return cmd_scan_grid(opt);
        if (scan_path_cmd->parsed()) return cmd_scan_path(opt);
        if (census->parsed()) return cmd_census(opt);
        if (mixing->parsed()) return cmd_mixing(opt);
        if (esc->parsed()) return cmd_esc(opt);
        if (reproduce->parsed()) return run_recipe(opt);
    } catch (const Error& e) {
        ordered_json record{{"error", ordered_json{{"kind", e.kind()}, {"message", e.what()}}},
                            {"version", kVersion}};
        std::cout << record.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        ordered_json record{{"error", ordered_json{{"kind", "internal"}, {"message", e.what()}}},
                            {"version", kVersion}};
        std::cout << record.dump(2) << "\n";
        return 1;
    }
    return 0;
}
