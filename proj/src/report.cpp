#include "contour/report.hpp"

#include <sstream>

namespace contour {

namespace {

std::string join(std::span<const Cell> cells, char sep) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(cells[i]);
    }
    return s;
}

}  // namespace

std::string csv_field(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

Json to_json(const ChainParams& params) {
    return Json{{"contours", params.contours()}, {"half_cells", params.half_cells()}, {"cluster_len", params.cluster_len()}};
}

Json to_json(const SystemState& state) {
    Json out = Json::array();
    for (auto x : state.positions()) out.push_back(x);
    return out;
}

Json to_json(const Exploration& exploration) {
    if (const auto* s = std::get_if<Sampled>(&exploration))
        return Json{{"mode", "sampled"}, {"budget_or_count", s->count}, {"seed", s->seed}, {"generator", "mt19937_64"}};
    return Json{{"mode", "exhaustive"}, {"budget_or_count", std::get<Exhaustive>(exploration).budget}, {"seed", nullptr}};
}

Json to_json(const SpectrumReport& report) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["params"] = to_json(report.params);
    doc["exploration"] = to_json(report.exploration);
    doc["states_examined"] = report.states_examined;
    doc["admissible_count"] = report.admissible_count;
    doc["spectrum"] = Json::array();
    for (const auto& e : report.entries)
        doc["spectrum"].push_back(Json{{"velocity", e.velocity.to_string()},
                                       {"basin_count", e.basin_count},
                                       {"representative", to_json(e.representative)},
                                       {"period", e.period},
                                       {"regime", to_string(e.regime)},
                                       {"delay_type", to_string(e.purity)}});
    doc["candidates"] = Json::array();
    for (const auto& c : report.candidates) doc["candidates"].push_back(c.to_string());
    return doc;
}

std::string to_csv(const SpectrumReport& report) {
    std::ostringstream out;
    out << "N,m,l,velocity,basin_count,period,regime\n";
    const auto& p = report.params;
    for (const auto& e : report.entries)
        out << p.contours() << ',' << p.half_cells() << ',' << p.cluster_len() << ',' << e.velocity.to_string() << ','
            << e.basin_count << ',' << e.period << ',' << to_string(e.regime) << '\n';
    return out.str();
}

std::string to_text(const SpectrumReport& report) {
    std::ostringstream out;
    out << "spectrum " << report.params.to_string() << '\n';
    if (const auto* s = std::get_if<Sampled>(&report.exploration))
        out << "exploration: sampled, " << s->count << " states, seed " << s->seed << " (mt19937_64)\n";
    else
        out << "exploration: exhaustive, budget " << std::get<Exhaustive>(report.exploration).budget << '\n';
    out << "states examined: " << report.states_examined << ", admissible: " << report.admissible_count << '\n';
    for (const auto& e : report.entries)
        out << "  v = " << e.velocity.to_string() << "  basin " << e.basin_count << "  period " << e.period << "  "
            << to_string(e.regime) << "  delays " << to_string(e.purity) << "  e.g. " << e.representative.to_string()
            << '\n';
    out << "candidates:";
    for (const auto& c : report.candidates) out << ' ' << c.to_string();
    out << '\n';
    return out.str();
}

Json cycle_summary(const CycleAnalysis& analysis, const SystemState& initial, const ChainParams& params) {
    const auto v = velocities(analysis);
    Json doc;
    doc["params"] = to_json(params);
    doc["initial"] = to_json(initial);
    doc["transient"] = analysis.transient_len;
    doc["period"] = analysis.period;
    doc["moves_per_cluster"] = analysis.moves_per_cluster;
    doc["velocity"] = analysis.velocity.to_string();
    doc["velocities_uniform"] = v.uniform;
    doc["regime"] = to_string(analysis.regime);
    doc["delay_type"] = to_string(analysis.purity);
    doc["delays_per_period"] = analysis.delay_log.size();
    return doc;
}

std::string cycle_summary_text(const CycleAnalysis& analysis, const SystemState& initial, const ChainParams& params) {
    std::ostringstream out;
    out << "params " << params.to_string() << ", initial " << initial.to_string() << '\n'
        << "transient " << analysis.transient_len << ", period " << analysis.period << '\n'
        << "velocity " << analysis.velocity.to_string() << (velocities(analysis).uniform ? " (uniform)" : " (NOT uniform)")
        << '\n'
        << "regime " << to_string(analysis.regime) << ", delay type " << to_string(analysis.purity) << ", "
        << analysis.delay_log.size() << " blocked step(s) per period\n";
    return out.str();
}

Json to_json(const std::vector<PointReport>& points, const GridSpec& grid) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["grid"] = grid.to_string();
    doc["budget"] = grid.budget;
    doc["points"] = Json::array();
    std::size_t counts[4] = {0, 0, 0, 0};
    for (const auto& point : points) {
        Json claims = Json::array();
        for (const auto& c : point.claims) {
            ++counts[static_cast<int>(c.verdict)];
            claims.push_back(Json{{"claim", c.claim},
                                  {"verdict", to_string(c.verdict)},
                                  {"witness", c.witness ? to_json(*c.witness) : Json(nullptr)},
                                  {"detail", c.detail}});
        }
        doc["points"].push_back(Json{{"params", to_json(point.params)},
                                     {"exploration", to_json(Exploration{Exhaustive{grid.budget}})},
                                     {"claims", std::move(claims)}});
    }
    doc["summary"] = Json{{"points", points.size()},
                          {"holds", counts[static_cast<int>(Verdict::Holds)]},
                          {"violated", counts[static_cast<int>(Verdict::Violated)]},
                          {"skipped", counts[static_cast<int>(Verdict::Skipped)]},
                          {"findings", counts[static_cast<int>(Verdict::Finding)]}};
    return doc;
}

std::string to_csv(const std::vector<PointReport>& points) {
    std::ostringstream out;
    out << "N,m,l,claim,verdict,witness,detail\n";
    for (const auto& point : points)
        for (const auto& c : point.claims)
            out << point.params.contours() << ',' << point.params.half_cells() << ',' << point.params.cluster_len() << ','
                << c.claim << ',' << to_string(c.verdict) << ','
                << (c.witness ? join(c.witness->positions(), ' ') : std::string()) << ',' << csv_field(c.detail) << '\n';
    return out.str();
}

std::string to_text(const std::vector<PointReport>& points) {
    std::ostringstream out;
    std::size_t violated = 0, findings = 0, skipped = 0;
    for (const auto& point : points) {
        out << point.params.to_string() << '\n';
        for (const auto& c : point.claims) {
            out << "  " << c.claim << ": " << to_string(c.verdict);
            if (c.witness) out << " witness " << c.witness->to_string();
            if (!c.detail.empty()) out << " - " << c.detail;
            out << '\n';
            violated += c.verdict == Verdict::Violated;
            findings += c.verdict == Verdict::Finding;
            skipped += c.verdict == Verdict::Skipped;
        }
    }
    out << points.size() << " point(s), " << violated << " violation(s), " << skipped << " skipped, " << findings
        << " finding(s)\n";
    return out.str();
}

}  // namespace contour
