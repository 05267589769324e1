#pragma once

// Machine-readable renderings of analysis results. JSON documents carry
// "schema_version": 1 and use a fixed key order; fractions are always
// "p/q" in lowest terms with an explicit denominator.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "contour/harness.hpp"
#include "contour/orbit.hpp"
#include "contour/spectrum.hpp"

namespace contour {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const ChainParams& params);
Json to_json(const SystemState& state);
Json to_json(const Exploration& exploration);

/// {schema_version, params, exploration, states_examined, admissible_count,
///  spectrum[{velocity, basin_count, representative, period, regime, delay_type}],
///  candidates}
Json to_json(const SpectrumReport& report);

/// Columns N,m,l,velocity,basin_count,period,regime; one row per velocity.
std::string to_csv(const SpectrumReport& report);
std::string to_text(const SpectrumReport& report);

/// Summary of a cycle reached from `initial`.
Json cycle_summary(const CycleAnalysis& analysis, const SystemState& initial, const ChainParams& params);
std::string cycle_summary_text(const CycleAnalysis& analysis, const SystemState& initial, const ChainParams& params);

/// {schema_version, grid, budget, points[{params, exploration, claims[...]}], summary}
Json to_json(const std::vector<PointReport>& points, const GridSpec& grid);
/// Columns N,m,l,claim,verdict,witness,detail.
std::string to_csv(const std::vector<PointReport>& points);
std::string to_text(const std::vector<PointReport>& points);

/// RFC 4180 quoting when the field needs it.
std::string csv_field(const std::string& field);

}  // namespace contour
