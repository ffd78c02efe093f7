#pragma once

#include <string>

#include <json.hpp>

#include "gapforge/explorer.hpp"
#include "gapforge/mixing.hpp"

namespace gapforge {

using ordered_json = nlohmann::ordered_json;

// 17 significant digits; round-trips binary64 exactly.
std::string format_double(double v);

std::string spectrum_csv(const Spectrum& spectrum);
std::string scan_csv(const ScanResult& result);
std::string path_csv(const PathScanResult& result);
std::string tv_csv(const TVCurve& curve);

ordered_json gap_report_json(const GapReport& report);
ordered_json spectrum_json(const Spectrum& spectrum);
ordered_json similarity_json(const SimilarityCertificate& cert);
ordered_json census_json(const MultiplicityCensus& census);
ordered_json esc_json(const ESCReport& report);
ordered_json scan_summary_json(const ScanResult& result);
ordered_json path_json(const PathScanResult& result);
ordered_json tv_json(const TVCurve& curve);
ordered_json params_json(const ParamVector& p);

// {command, inputs, results, tolerances, timings, version}
ordered_json make_report(const std::string& command, ordered_json inputs, ordered_json results,
                         ordered_json tolerances, double wall_seconds);

}  // namespace gapforge
