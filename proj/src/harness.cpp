#include "contour/harness.hpp"

#include <algorithm>
#include <charconv>
#include <regex>
#include <set>

#include "contour/errors.hpp"

namespace contour {

namespace {

constexpr std::size_t kDecompositionLimit = 20'000;

const std::vector<std::string>& claim_order() {
    static const std::vector<std::string> order{
        "T1", "T10-12", "T7", "T8", "T9", "Eq4-soundness", "S6-sufficiency", "S6-second", "T3",
        "T5", "T6", "L1", "L2", "uniformity", "period", "delay-bounds", "T2-T4"};
    return order;
}

ClaimReport holds(std::string claim, std::string detail) {
    return {std::move(claim), Verdict::Holds, std::nullopt, std::move(detail)};
}

ClaimReport violated(std::string claim, SystemState witness, std::string detail) {
    return {std::move(claim), Verdict::Violated, std::move(witness), std::move(detail)};
}

ClaimReport finding(std::string claim, std::string detail) {
    return {std::move(claim), Verdict::Finding, std::nullopt, std::move(detail)};
}

SystemState zero_state(const ChainParams& params) {
    return SystemState(std::vector<Cell>(static_cast<std::size_t>(params.contours()), 0));
}

bool l_le_m(const ChainParams& p) { return p.cluster_len() <= p.half_cells(); }

int parse_int(std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw ContractViolation("grid: expected an integer, got '" + std::string(s) + "'");
    return v;
}

std::vector<int> parse_int_range(std::string_view text) {
    const auto dots = text.find("..");
    const int lo = parse_int(text.substr(0, dots));
    const int hi = dots == std::string_view::npos ? lo : parse_int(text.substr(dots + 2));
    std::vector<int> out;
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
}

MBound parse_bound(std::string_view text) {
    static const std::regex pattern(R"(^(?:(\d*)m([+-]\d+)?|(\d+))$)");
    std::cmatch match;
    if (!std::regex_match(text.begin(), text.end(), match, pattern))
        throw ContractViolation("grid: cannot parse l bound '" + std::string(text) + "'");
    if (match[3].matched) return {0, parse_int(match[3].str())};
    MBound b{match[1].length() ? parse_int(match[1].str()) : 1, 0};
    if (match[2].matched) {
        const auto off = match[2].str();
        b.offset = (off[0] == '-' ? -1 : 1) * parse_int(std::string_view(off).substr(1));
    }
    return b;
}

std::string render_range(const std::vector<int>& values) {
    if (values.empty()) return "1..0";
    if (values.size() == 1) return std::to_string(values.front());
    return std::to_string(values.front()) + ".." + std::to_string(values.back());
}

}  // namespace

std::string MBound::to_string() const {
    if (m_coefficient == 0) return std::to_string(offset);
    std::string s = m_coefficient == 1 ? "m" : std::to_string(m_coefficient) + "m";
    if (offset > 0) s += "+" + std::to_string(offset);
    if (offset < 0) s += std::to_string(offset);
    return s;
}

std::string GridSpec::to_string() const {
    return "N=" + render_range(contours) + ",m=" + render_range(half_cells) + ",l=" + cluster_len_lo.to_string() +
           ".." + cluster_len_hi.to_string();
}

GridSpec parse_grid(std::string_view text) {
    GridSpec grid{{2, 3, 4, 5}, {1, 2, 3, 4}};
    std::set<std::string> seen;
    if (text.empty()) return grid;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        pos = comma == std::string_view::npos ? text.size() + 1 : comma + 1;
        if (item.empty()) throw ContractViolation("grid: empty item in '" + std::string(text) + "'");
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw ContractViolation("grid: expected key=value, got '" + std::string(item) + "'");
        const std::string key(item.substr(0, eq));
        const auto value = item.substr(eq + 1);
        if (!seen.insert(key).second) throw ContractViolation("grid: duplicate key '" + key + "'");
        if (key == "N") {
            grid.contours = parse_int_range(value);
        } else if (key == "m") {
            grid.half_cells = parse_int_range(value);
        } else if (key == "l") {
            const auto dots = value.find("..");
            grid.cluster_len_lo = parse_bound(value.substr(0, dots));
            grid.cluster_len_hi = dots == std::string_view::npos ? grid.cluster_len_lo : parse_bound(value.substr(dots + 2));
        } else {
            throw ContractViolation("grid: unknown key '" + key + "' (expected N, m or l)");
        }
    }
    return grid;
}

std::vector<ChainParams> grid_points(const GridSpec& grid) {
    std::vector<ChainParams> points;
    for (int n : grid.contours)
        for (int m : grid.half_cells)
            for (int l = grid.cluster_len_lo.at(m); l <= grid.cluster_len_hi.at(m); ++l) points.emplace_back(n, m, l);
    return points;
}

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Holds: return "holds";
        case Verdict::Violated: return "violated";
        case Verdict::Skipped: return "skipped";
        case Verdict::Finding: return "finding";
    }
    return "?";
}

ClaimReport check_collapse(const StateSpaceSurvey& survey) {
    const auto& p = survey.params;
    for (const auto& cls : survey.cycles) {
        const bool collapse = cls.analysis.regime == Regime::Collapse;
        if (l_le_m(p) && collapse)
            return violated("T1", cls.representative, "collapse cycle although l <= m");
        if (!l_le_m(p) && !collapse)
            return violated("T1", cls.representative,
                            "non-collapse cycle (" + to_string(cls.analysis.regime) + ") although l > m");
    }
    return holds("T1", l_le_m(p) ? "l <= m: no collapse among " + std::to_string(survey.cycles.size()) + " cycle(s)"
                                 : "l > m: all " + std::to_string(survey.admissible_count) +
                                       " admissible states collapse");
}

ClaimReport check_free_movement_thresholds(const StateSpaceSurvey& survey) {
    const auto& p = survey.params;
    const long long nl = static_cast<long long>(p.contours()) * p.cluster_len();
    const long long bound = p.contours() % 2 == 1 ? p.half_cells() : 2LL * p.half_cells();
    const std::string hypothesis = (p.contours() % 2 == 1 ? "N odd, N*l=" : "N even, N*l=") + std::to_string(nl) +
                                   (p.contours() % 2 == 1 ? ", m=" : ", 2m=") + std::to_string(bound);
    const CycleClass* not_free = nullptr;
    for (const auto& cls : survey.cycles)
        if (cls.analysis.regime != Regime::FreeMovement) {
            not_free = &cls;
            break;
        }
    if (nl < bound) {
        if (not_free)
            return violated("T10-12", not_free->representative, hypothesis + ": state does not reach free movement");
        return holds("T10-12", hypothesis + ": every admissible state reaches free movement");
    }
    if (nl == bound)
        return finding("T10-12", hypothesis + " (boundary): " +
                                     (not_free ? "some states do not reach free movement, e.g. " +
                                                     not_free->representative.to_string()
                                               : std::string("every admissible state reaches free movement")));
    return holds("T10-12", hypothesis + ": hypothesis not met (vacuous)");
}

std::vector<ClaimReport> check_spectrum_claims(const StateSpaceSurvey& survey) {
    const auto& p = survey.params;
    const auto spectrum = spectrum_from_survey(survey);
    std::vector<ClaimReport> out;

    // Representative per velocity is what a witness needs.
    const SpectrumEntry* unit = nullptr;
    std::vector<const SpectrumEntry*> sub_unit;
    for (const auto& e : spectrum.entries) {
        if (e.velocity == Rational(1)) unit = &e;
        if (e.velocity != Rational(1) && e.velocity != Rational(0)) sub_unit.push_back(&e);
    }

    if (l_le_m(p) && !unit)
        out.push_back(violated("T7", zero_state(p), "l <= m but no free-movement cycle exists"));
    else if (!l_le_m(p) && unit)
        out.push_back(violated("T7", unit->representative, "free-movement cycle although l > m"));
    else
        out.push_back(holds("T7", unit ? "velocity 1 present, l <= m" : "velocity 1 absent, l > m"));

    if (!l_le_m(p)) {
        out.push_back(holds("T8", "l > m: no delayed cycles (vacuous)"));
        out.push_back(holds("T9", "l > m (vacuous)"));
    } else {
        const Rational two_thirds(2, 3);
        const bool strict = p.cluster_len() < p.half_cells();
        ClaimReport t8 = holds("T8", std::to_string(sub_unit.size()) + " sub-unit velocit" +
                                         (sub_unit.size() == 1 ? "y" : "ies") + " within [2/3, 1)" +
                                         (strict ? ", all above 2/3" : ""));
        for (const auto& cls : survey.cycles) {
            if (cls.analysis.regime != Regime::DelayedCycle) continue;
            const auto& v = cls.analysis.velocity;
            if (v < two_thirds || v >= Rational(1) || (strict && v == two_thirds)) {
                t8 = violated("T8", cls.representative, "delayed-cycle velocity " + v.to_string());
                break;
            }
        }
        out.push_back(std::move(t8));

        const auto cap = static_cast<std::size_t>(p.contours() / 3);
        if (sub_unit.size() > cap)
            out.push_back(violated("T9", sub_unit.back()->representative,
                                   std::to_string(sub_unit.size()) + " sub-unit velocities > floor(N/3) = " +
                                       std::to_string(cap)));
        else
            out.push_back(holds("T9", std::to_string(sub_unit.size()) + " sub-unit velocities <= floor(N/3) = " +
                                          std::to_string(cap)));
    }

    {
        ClaimReport eq4 = holds("Eq4-soundness", "all sub-unit velocities are candidates");
        for (const auto* e : sub_unit)
            if (std::find(spectrum.candidates.begin(), spectrum.candidates.end(), e->velocity) ==
                spectrum.candidates.end()) {
                eq4 = violated("Eq4-soundness", e->representative, e->velocity.to_string() + " is not a candidate");
                break;
            }
        out.push_back(std::move(eq4));
    }

    if (!l_le_m(p)) {
        out.push_back(holds("S6-sufficiency", "l > m (vacuous)"));
        out.push_back(finding("S6-second", "l > m (vacuous)"));
        return out;
    }

    auto realise = [&](DelayType type, std::optional<SystemState>& failed_state, std::string& failure) {
        const auto list = feasible_decompositions(p, type, kDecompositionLimit);
        std::size_t realised = 0;
        for (const auto& d : list.items) {
            try {
                construct_cycle_state(p, d);
                ++realised;
            } catch (const ConstructionFailed& e) {
                if (!failed_state) {
                    failed_state = e.state();
                    failure = e.what();
                }
            }
        }
        return std::make_tuple(realised, list.items.size(), list.complete);
    };

    {
        std::optional<SystemState> failed;
        std::string why;
        const auto [realised, total, complete] = realise(DelayType::First, failed, why);
        const std::string summary = std::to_string(realised) + "/" + std::to_string(total) +
                                    " first-type decompositions realised" + (complete ? "" : " (enumeration truncated)");
        out.push_back(failed ? violated("S6-sufficiency", *failed, summary + "; " + why) : holds("S6-sufficiency", summary));
    }
    {
        std::optional<SystemState> failed;
        std::string why;
        const auto [realised, total, complete] = realise(DelayType::Second, failed, why);
        out.push_back(finding("S6-second", std::to_string(realised) + "/" + std::to_string(total) +
                                               " second-type decompositions realised" +
                                               (complete ? "" : " (enumeration truncated)")));
    }
    return out;
}

std::vector<ClaimReport> check_cycle_structure(const StateSpaceSurvey& survey) {
    const auto& p = survey.params;
    const auto accounting = static_cast<std::uint64_t>(p.accounting_period());
    std::size_t delayed = 0;
    std::uint64_t pairs = 0, non_increasing = 0, equal = 0;

    std::vector<ClaimReport> out;
    for (const char* name : {"T3", "T5", "T6", "L1", "L2", "uniformity", "period", "delay-bounds"})
        out.push_back(holds(name, ""));
    auto flag = [&](std::size_t slot, const CycleClass& cls, std::string detail) {
        if (out[slot].verdict == Verdict::Violated) return;
        out[slot] = violated(out[slot].claim, cls.representative, std::move(detail));
    };

    for (const auto& cls : survey.cycles) {
        const auto& a = cls.analysis;
        if (!velocities(a).uniform) flag(5, cls, "per-cluster velocities differ");

        const bool period_ok = a.regime == Regime::Collapse       ? a.period == 1
                               : a.regime == Regime::FreeMovement ? a.period == static_cast<std::uint64_t>(p.cells())
                                                                  : accounting % a.period == 0;
        if (!period_ok) flag(6, cls, to_string(a.regime) + " cycle with period " + std::to_string(a.period));

        if (a.regime != Regime::DelayedCycle) continue;
        ++delayed;
        const auto report = verify_delay_structure(a, p);
        if (report.purity == DelayPurity::Mixed) flag(2, cls, "cycle mixes first- and second-type delays");
        for (const auto& e : report.chain_breaks)
            flag(e.type == DelayType::First ? 0 : 1, cls,
                 "delay of cluster " + std::to_string(e.cluster) + " starting at " + std::to_string(e.start) +
                     " has no chained successor m+l later");
        for (const auto& d : report.delta_mismatches)
            flag(d.episode.type == DelayType::First ? 3 : 4, cls,
                 "gap " + std::to_string(d.observed) + " (expected " + std::to_string(d.expected) +
                     ") at end of delay of cluster " + std::to_string(d.episode.cluster));
        for (const auto& e : report.overlong)
            flag(7, cls,
                 to_string(e.type) + "-type delay of " + std::to_string(e.duration) + " steps for cluster " +
                     std::to_string(e.cluster));
        pairs += report.chained_pairs;
        non_increasing += report.non_increasing_pairs;
        equal += report.equal_pairs;
    }

    const std::string scope = std::to_string(delayed) + " delayed cycle(s)";
    for (auto& c : out)
        if (c.verdict == Verdict::Holds) c.detail = delayed == 0 && c.claim != "uniformity" && c.claim != "period"
                                                        ? "no delayed cycles (vacuous)"
                                                        : "checked " + std::to_string(survey.cycles.size()) +
                                                              " cycle(s), " + scope;
    out.push_back(finding("T2-T4", std::to_string(non_increasing) + "/" + std::to_string(pairs) +
                                       " chained delay pairs non-increasing, " + std::to_string(equal) + " equal"));
    return out;
}

namespace {

ClaimReport skipped(std::string claim, const std::string& reason) {
    return {std::move(claim), Verdict::Skipped, std::nullopt, reason};
}

std::string over_budget(const ChainParams& params, std::uint64_t budget) {
    return "state space " + params.to_string() + " exceeds budget " + std::to_string(budget);
}

}  // namespace

ClaimReport check_collapse(const ChainParams& params, std::uint64_t budget) {
    if (params.state_space_size() > budget) return skipped("T1", over_budget(params, budget));
    return check_collapse(survey_state_space(params, budget));
}

ClaimReport check_free_movement_thresholds(const ChainParams& params, std::uint64_t budget) {
    if (params.state_space_size() > budget) return skipped("T10-12", over_budget(params, budget));
    return check_free_movement_thresholds(survey_state_space(params, budget));
}

std::vector<ClaimReport> check_spectrum_claims(const ChainParams& params, std::uint64_t budget) {
    if (params.state_space_size() > budget) {
        std::vector<ClaimReport> out;
        for (const char* c : {"T7", "T8", "T9", "Eq4-soundness", "S6-sufficiency", "S6-second"})
            out.push_back(skipped(c, over_budget(params, budget)));
        return out;
    }
    return check_spectrum_claims(survey_state_space(params, budget));
}

std::vector<ClaimReport> check_cycle_structure(const ChainParams& params, std::uint64_t budget) {
    if (params.state_space_size() > budget) {
        std::vector<ClaimReport> out;
        for (const char* c : {"T3", "T5", "T6", "L1", "L2", "uniformity", "period", "delay-bounds", "T2-T4"})
            out.push_back(skipped(c, over_budget(params, budget)));
        return out;
    }
    return check_cycle_structure(survey_state_space(params, budget));
}

PointReport check_point(const ChainParams& params, std::uint64_t budget, unsigned workers) {
    PointReport report{params, {}};
    if (params.state_space_size() > budget) {
        for (const auto& c : claim_order()) report.claims.push_back(skipped(c, over_budget(params, budget)));
        return report;
    }
    const auto survey = survey_state_space(params, budget, workers);
    report.claims.push_back(check_collapse(survey));
    report.claims.push_back(check_free_movement_thresholds(survey));
    for (auto& c : check_spectrum_claims(survey)) report.claims.push_back(std::move(c));
    for (auto& c : check_cycle_structure(survey)) report.claims.push_back(std::move(c));
    return report;
}

std::vector<PointReport> run_suite(const GridSpec& grid, unsigned workers) {
    std::vector<PointReport> reports;
    for (const auto& params : grid_points(grid)) reports.push_back(check_point(params, grid.budget, workers));
    return reports;
}

bool any_violation(const std::vector<PointReport>& reports) {
    for (const auto& r : reports)
        for (const auto& c : r.claims)
            if (c.verdict == Verdict::Violated) return true;
    return false;
}

}  // namespace contour
