#pragma once

#include "diolab/measures.hpp"
#include "diolab/montecarlo.hpp"
#include "diolab/series.hpp"

#include "json.hpp"

#include <string>

namespace diolab::json_io {

/// Insertion-ordered so identical inputs serialize to identical bytes.
using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// {"num": "...", "den": "..."}; decimal strings keep any magnitude lossless.
Json rat_json(const Rat& r);

/// Exact values keep the rational form; enclosures carry
/// {"value": midpoint, "abs_error": radius}.
Json value_json(const Value& v);

/// Endpoint pairs of the canonical half-open arcs.
Json arcs_json(const torus_sets::ArcUnion& u);

Json series_json(const series::SeriesReport& rep);
Json capital_psi_json(const series::CapitalPsiReport& rep);
Json mc_json(const montecarlo::MCReport& rep);
Json overlap_json(const measures::OverlapReport& rep);
Json window_json(const measures::WindowResult& res);
Json solution_json(const montecarlo::Solution& s);
Json counterexample_json(const montecarlo::CounterexampleReport& rep);

/// Top-level report: format version, canonical config echo, payload.
Json report(const std::string& config_echo, Json result);

/// The one serialization used for report files: 2-space indent, newline
/// terminated.
std::string to_text(const Json& j);

}  // namespace diolab::json_io
