#include "gapforge/params.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gapforge {

namespace {

double parse_double(const std::string& tok, const std::string& context) {
    try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw Error(errc::parse, "bad number '" + tok + "' in " + context);
    }
}

void check_open_unit(double v, const std::string& what) {
    if (!(v > kBoundaryTol && v < 1.0 - kBoundaryTol))
        throw Error(errc::validation,
                    what + "=" + std::to_string(v) + " outside the open interval (0,1)");
}

std::string format17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ParamVector::ParamVector(int n, std::vector<double> upper_triangle) : n_(n), p_(std::move(upper_triangle)) {
    if (n_ < 2) throw Error(errc::validation, "ParamVector requires n >= 2");
    const std::size_t want = static_cast<std::size_t>(n_) * (n_ - 1) / 2;
    if (p_.size() != want)
        throw Error(errc::dimension_mismatch,
                    "ParamVector for n=" + std::to_string(n_) + " needs " + std::to_string(want) +
                        " values, got " + std::to_string(p_.size()));
    for (std::size_t k = 0; k < p_.size(); ++k) check_open_unit(p_[k], "p");
}

ParamVector ParamVector::unweighted(int n) {
    if (n < 2) throw Error(errc::validation, "ParamVector requires n >= 2");
    return ParamVector(n, std::vector<double>(static_cast<std::size_t>(n) * (n - 1) / 2, 0.5));
}

std::size_t ParamVector::pair_index(int i, int j) const {
    if (!(1 <= i && i < j && j <= n_))
        throw Error(errc::invalid_argument,
                    "pair (" + std::to_string(i) + "," + std::to_string(j) + ") invalid for n=" +
                        std::to_string(n_));
    const std::size_t a = static_cast<std::size_t>(i - 1);
    return a * (2 * static_cast<std::size_t>(n_) - i) / 2 + static_cast<std::size_t>(j - i - 1);
}

double ParamVector::operator()(int i, int j) const {
    if (i == j)
        throw Error(errc::invalid_argument, "p(i,i) undefined");
    return i < j ? p_[pair_index(i, j)] : 1.0 - p_[pair_index(j, i)];
}

std::vector<std::pair<int, int>> pair_order(int n) {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) out.emplace_back(i, j);
    return out;
}

RegularityReport is_regular(const ParamVector& p) {
    const int n = p.n();
    // 1. p_{i-1,i} >= 1/2, reported by the condition index i (j unused)
    for (int i = 2; i <= n; ++i)
        if (!(p(i - 1, i) >= 0.5)) return {false, 1, i, 0};
    // 2. p_{i-1,j} >= p_{ij} for 2 <= i < j
    for (int i = 2; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!(p(i - 1, j) >= p(i, j))) return {false, 2, i, j};
    // 3. p_{i,j+1} >= p_{ij} for j <= n-1
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n - 1; ++j)
            if (!(p(i, j + 1) >= p(i, j))) return {false, 3, i, j};
    return {};
}

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
    if (w_.size() < 2) throw Error(errc::validation, "WeightVector requires n >= 2");
    for (std::size_t i = 0; i < w_.size(); ++i) {
        if (!(w_[i] > 0.0))
            throw Error(errc::validation, "weight w" + std::to_string(i + 1) + " must be positive");
        if (i > 0 && w_[i] > w_[i - 1])
            throw Error(errc::validation,
                        "weights must be nonincreasing (w" + std::to_string(i) + " < w" +
                            std::to_string(i + 1) + ")");
    }
}

std::vector<double> WeightVector::normalized() const {
    double total = 0.0;
    for (double v : w_) total += v;
    if (!(total > 0.0)) throw Error(errc::validation, "weight normalization failed");
    std::vector<double> out(w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i) out[i] = w_[i] / total;
    return out;
}

ParamVector params_from_weights(const WeightVector& w) {
    const int n = w.n();
    std::vector<double> p;
    p.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (auto [i, j] : pair_order(n))
        p.push_back(w[static_cast<std::size_t>(i - 1)] /
                    (w[static_cast<std::size_t>(i - 1)] + w[static_cast<std::size_t>(j - 1)]));
    return ParamVector(n, std::move(p));
}

ParamVector params_from_text(const std::string& text, int n) {
    if (n < 2) throw Error(errc::validation, "n must be >= 2");
    const std::size_t want = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::vector<double> values(want, -1.0);
    std::vector<bool> assigned(want, false);
    ParamVector probe = ParamVector::unweighted(n);  // for pair_index only

    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw Error(errc::parse, "expected 'i,j=v' in fragment '" + item + "'");
        const auto comma = item.find(',');
        if (comma == std::string::npos || comma > eq)
            throw Error(errc::parse, "expected 'i,j=v' in fragment '" + item + "'");
        const int i = static_cast<int>(parse_double(item.substr(0, comma), "'" + item + "'"));
        const int j = static_cast<int>(parse_double(item.substr(comma + 1, eq - comma - 1), "'" + item + "'"));
        if (!(1 <= i && i < j && j <= n))
            throw Error(errc::parse, "pair (" + std::to_string(i) + "," + std::to_string(j) +
                                         ") invalid for n=" + std::to_string(n) + " in '" + item + "'");
        const double v = parse_double(item.substr(eq + 1), "'" + item + "'");
        check_open_unit(v, "p_" + std::to_string(i) + "," + std::to_string(j));
        const std::size_t k = probe.pair_index(i, j);
        if (assigned[k])
            throw Error(errc::parse, "duplicate pair (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
        values[k] = v;
        assigned[k] = true;
    }

    std::string missing;
    for (auto [i, j] : pair_order(n)) {
        if (!assigned[probe.pair_index(i, j)]) {
            if (!missing.empty()) missing += ",";
            missing += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
    }
    if (!missing.empty()) throw Error(errc::parse, "missing pairs: " + missing);
    return ParamVector(n, std::move(values));
}

std::string params_to_text(const ParamVector& p) {
    std::string out;
    for (auto [i, j] : pair_order(p.n())) {
        if (!out.empty()) out += ';';
        out += std::to_string(i) + "," + std::to_string(j) + "=" + format17(p.upper(i, j));
    }
    return out;
}

ParamVector params_from_json_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(errc::parse, std::string("bad JSON parameter document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("p") || !doc["p"].is_object())
        throw Error(errc::parse, "JSON parameters need the form {\"n\": N, \"p\": {\"i,j\": v}}");
    const int n = doc["n"].get<int>();
    std::string flat;
    for (const auto& [key, value] : doc["p"].items()) {
        if (!value.is_number())
            throw Error(errc::parse, "value for pair '" + key + "' is not a number");
        if (!flat.empty()) flat += ';';
        flat += key + "=" + format17(value.get<double>());
    }
    return params_from_text(flat, n);
}

WeightVector weights_from_text(const std::string& text) {
    std::vector<double> w;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) w.push_back(parse_double(tok, "weights '" + text + "'"));
    return WeightVector(std::move(w));
}

std::string weights_to_text(const WeightVector& w) {
    std::string out;
    for (std::size_t i = 0; i < w.values().size(); ++i) {
        if (i > 0) out += ',';
        out += format17(w[i]);
    }
    return out;
}

}  // namespace gapforge
