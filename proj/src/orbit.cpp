#include "contour/orbit.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_map>

#include "contour/errors.hpp"

namespace contour {

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::FreeMovement: return "free_movement";
        case Regime::Collapse: return "collapse";
        case Regime::DelayedCycle: return "delayed_cycle";
    }
    return "?";
}

std::string to_string(DelayPurity purity) {
    switch (purity) {
        case DelayPurity::None: return "none";
        case DelayPurity::FirstOnly: return "first";
        case DelayPurity::SecondOnly: return "second";
        case DelayPurity::Mixed: return "mixed";
    }
    return "?";
}

namespace {

struct CycleLocation {
    std::uint64_t transient;
    std::uint64_t period;
};

[[noreturn]] void exhausted(const SystemState& initial, const ChainParams& params, std::uint64_t budget) {
    throw BudgetExceeded("no repeated state within " + std::to_string(budget) + " steps from " + initial.to_string() +
                         " for " + params.to_string());
}

CycleLocation locate_with_index(const SystemState& initial, const ChainParams& params, std::uint64_t budget) {
    std::unordered_map<std::uint64_t, std::uint64_t> first_seen;
    SystemState x = initial;
    SystemState next = initial;
    for (std::uint64_t t = 0;; ++t) {
        const auto [it, inserted] = first_seen.emplace(encode(x, params), t);
        if (!inserted) return {it->second, t - it->second};
        if (t == budget) exhausted(initial, params, budget);
        advance(x.positions(), std::span<Cell>(&next[0], next.size()), params);
        std::swap(x, next);
    }
}

// Brent's algorithm: the hare may run up to roughly twice the first repeat
// time, so the budget is doubled for it.
CycleLocation locate_with_brent(const SystemState& initial, const ChainParams& params, std::uint64_t budget) {
    auto f = [&](SystemState& s, SystemState& scratch) {
        advance(s.positions(), std::span<Cell>(&scratch[0], scratch.size()), params);
        std::swap(s, scratch);
    };
    const std::uint64_t hare_budget = budget > UINT64_MAX / 2 ? UINT64_MAX : 2 * budget;
    SystemState scratch = initial;
    SystemState tortoise = initial;
    SystemState hare = initial;
    f(hare, scratch);
    std::uint64_t power = 1, lambda = 1, hare_steps = 1;
    while (tortoise != hare) {
        if (power == lambda) {
            tortoise = hare;
            power *= 2;
            lambda = 0;
        }
        if (++hare_steps > hare_budget) exhausted(initial, params, budget);
        f(hare, scratch);
        ++lambda;
    }
    tortoise = initial;
    hare = initial;
    for (std::uint64_t i = 0; i < lambda; ++i) f(hare, scratch);
    std::uint64_t mu = 0;
    while (tortoise != hare) {
        f(tortoise, scratch);
        f(hare, scratch);
        ++mu;
    }
    return {mu, lambda};
}

}  // namespace

CycleAnalysis find_cycle(const SystemState& initial, const ChainParams& params, const CycleOptions& options) {
    require_admissible(initial, params);
    const auto budget = options.budget.value_or(params.state_space_size());

    auto method = options.method;
    if (method == CycleMethod::Auto) method = params.encodable() ? CycleMethod::VisitedIndex : CycleMethod::Brent;
    const auto where = method == CycleMethod::VisitedIndex ? locate_with_index(initial, params, budget)
                                                           : locate_with_brent(initial, params, budget);

    SystemState x = initial;
    SystemState scratch = initial;
    for (std::uint64_t t = 0; t < where.transient; ++t) {
        advance(x.positions(), std::span<Cell>(&scratch[0], scratch.size()), params);
        std::swap(x, scratch);
    }

    const auto n = static_cast<std::size_t>(params.contours());
    CycleAnalysis result;
    result.transient_len = where.transient;
    result.period = where.period;
    result.moves_per_cluster.assign(n, 0);
    bool saw_first = false, saw_second = false;
    for (std::uint64_t t = 0; t < where.period; ++t) {
        auto stepped = step(x, params);
        for (std::size_t i = 0; i < n; ++i) result.moves_per_cluster[i] += stepped.moved[i] ? 1 : 0;
        for (const auto& d : stepped.delays) {
            result.delay_log.push_back({t, d.cluster, d.type, d.node});
            (d.type == DelayType::First ? saw_first : saw_second) = true;
        }
        if (options.keep_states) result.cycle_states.push_back(std::move(x));
        x = std::move(stepped.next);
    }

    const auto& moves = result.moves_per_cluster;
    if (std::all_of(moves.begin(), moves.end(), [](auto c) { return c == 0; }))
        result.regime = Regime::Collapse;
    else if (std::all_of(moves.begin(), moves.end(), [&](auto c) { return c == where.period; }))
        result.regime = Regime::FreeMovement;
    else
        result.regime = Regime::DelayedCycle;

    result.purity = saw_first && saw_second ? DelayPurity::Mixed
                    : saw_first             ? DelayPurity::FirstOnly
                    : saw_second            ? DelayPurity::SecondOnly
                                            : DelayPurity::None;
    result.velocity = Rational(static_cast<std::int64_t>(moves[0]), static_cast<std::int64_t>(where.period));
    return result;
}

VelocityReport velocities(const CycleAnalysis& analysis) {
    VelocityReport report;
    for (auto moves : analysis.moves_per_cluster)
        report.per_cluster.emplace_back(static_cast<std::int64_t>(moves), static_cast<std::int64_t>(analysis.period));
    for (const auto& v : report.per_cluster)
        if (v != report.per_cluster.front()) report.uniform = false;
    return report;
}

DelayStructureReport verify_delay_structure(const CycleAnalysis& analysis, const ChainParams& params) {
    DelayStructureReport report;
    report.purity = analysis.purity;
    if (analysis.regime != Regime::DelayedCycle) return report;
    if (analysis.cycle_states.size() != analysis.period)
        throw ContractViolation("verify_delay_structure needs the cycle states (CycleOptions::keep_states)");

    const auto period = analysis.period;
    const auto n = static_cast<std::size_t>(params.contours());
    const int m = params.half_cells();
    const int l = params.cluster_len();

    std::vector<std::vector<std::optional<DelayType>>> blocked_at(period, std::vector<std::optional<DelayType>>(n));
    for (const auto& rec : analysis.delay_log) blocked_at[rec.time][rec.cluster] = rec.type;

    for (std::size_t i = 0; i < n; ++i) {
        for (std::uint64_t t = 0; t < period; ++t) {
            const auto prev = (t + period - 1) % period;
            if (!blocked_at[t][i] || blocked_at[prev][i]) continue;
            std::uint64_t duration = 0;
            while (duration < period && blocked_at[(t + duration) % period][i]) ++duration;
            report.episodes.push_back({i, *blocked_at[t][i], t, duration, (t + duration) % period});
        }
    }

    std::map<std::tuple<std::size_t, DelayType, std::uint64_t>, std::uint64_t> durations;
    for (const auto& e : report.episodes) durations[{e.cluster, e.type, e.start}] = e.duration;

    const auto chain_step = static_cast<std::uint64_t>(m + l) % period;
    for (const auto& e : report.episodes) {
        const auto& at_end = analysis.cycle_states[e.end];
        const bool first = e.type == DelayType::First;
        // First-type delays are caused by the left neighbour, second-type by the right.
        const auto gap_index = first ? (e.cluster + n - 1) % n : e.cluster;
        const Cell expected = static_cast<Cell>(((first ? m - l : m + l) % (2 * m) + 2 * m) % (2 * m));
        const Cell observed = delta(at_end, gap_index, params);
        if (observed != expected) report.delta_mismatches.push_back({e, observed, expected});

        if (e.duration > static_cast<std::uint64_t>(first ? l : l - 1)) report.overlong.push_back(e);

        const auto next_cluster = first ? (e.cluster + 1) % n : (e.cluster + n - 1) % n;
        const auto key = std::make_tuple(next_cluster, e.type, (e.start + chain_step) % period);
        const auto found = durations.find(key);
        if (found == durations.end()) {
            report.chain_breaks.push_back(e);
            continue;
        }
        const auto successor = found->second;
        ++report.chained_pairs;
        if (e.duration >= successor) ++report.non_increasing_pairs;
        if (e.duration == successor) ++report.equal_pairs;
    }
    return report;
}

void write_trace(std::ostream& out, const SystemState& initial, const ChainParams& params, std::uint64_t steps) {
    require_admissible(initial, params);
    out << "t";
    for (int i = 0; i < params.contours(); ++i) out << ",x" << i;
    out << ",moved,delays\n";
    SystemState x = initial;
    for (std::uint64_t t = 0; t <= steps; ++t) {
        auto stepped = step(x, params);
        out << t;
        for (auto p : x.positions()) out << ',' << p;
        out << ',';
        for (bool b : stepped.moved) out << (b ? '1' : '0');
        out << ',';
        for (std::size_t k = 0; k < stepped.delays.size(); ++k) {
            const auto& d = stepped.delays[k];
            out << (k ? ";" : "") << d.cluster << ':' << to_string(d.type) << ':' << d.node;
        }
        out << '\n';
        x = std::move(stepped.next);
    }
}

}  // namespace contour
