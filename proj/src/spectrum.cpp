#include "contour/spectrum.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <random>

#include "contour/errors.hpp"
#include "parallel.hpp"

namespace contour {

namespace {

constexpr std::uint64_t kInadmissible = std::numeric_limits<std::uint64_t>::max();

struct EncodingOrder {
    bool operator()(const SystemState& a, const SystemState& b) const { return encoding_less(a, b); }
};

SystemState min_encoded(const std::vector<SystemState>& states) {
    return *std::min_element(states.begin(), states.end(), EncodingOrder{});
}

// Successor index of every state (kInadmissible for inadmissible ones).
std::vector<std::uint64_t> successor_table(const ChainParams& params, std::uint64_t size, unsigned workers) {
    std::vector<std::uint64_t> successor(size);
    detail::parallel_ranges(size, workers, [&](std::uint64_t begin, std::uint64_t end) {
        SystemState next = decode(begin, params);
        for (std::uint64_t k = begin; k < end; ++k) {
            const SystemState x = decode(k, params);
            if (!is_admissible(x, params)) {
                successor[k] = kInadmissible;
                continue;
            }
            advance(x.positions(), std::span<Cell>(&next[0], next.size()), params);
            successor[k] = encode(next, params);
        }
    });
    return successor;
}

}  // namespace

StateSpaceSurvey survey_state_space(const ChainParams& params, std::uint64_t budget, unsigned workers) {
    const auto size = params.state_space_size();
    if (size > budget)
        throw BudgetExceeded("state space of " + params.to_string() + " has " +
                             (params.encodable() ? std::to_string(size) : std::string("more than 2^64")) +
                             " states, over the budget of " + std::to_string(budget) + "; use sampling");

    const auto successor = successor_table(params, size, workers);

    // Label the functional graph: walk each unvisited path until it hits a
    // labelled state (joins a known basin) or itself (closes a new cycle).
    enum : std::uint8_t { kUnvisited, kOnPath, kDone };
    std::vector<std::uint8_t> mark(size, kUnvisited);
    std::vector<std::uint32_t> label(size, 0);
    std::vector<std::uint64_t> cycle_entry;
    std::vector<std::uint64_t> basin;
    std::vector<std::uint64_t> path;
    std::uint64_t admissible = 0;

    for (std::uint64_t s = 0; s < size; ++s) {
        if (successor[s] == kInadmissible || mark[s] == kDone) continue;
        path.clear();
        auto x = s;
        while (mark[x] == kUnvisited) {
            mark[x] = kOnPath;
            path.push_back(x);
            x = successor[x];
            if (x == kInadmissible) throw std::logic_error("step left the admissible set");
        }
        std::uint32_t id;
        if (mark[x] == kOnPath) {
            id = static_cast<std::uint32_t>(cycle_entry.size());
            cycle_entry.push_back(x);
            basin.push_back(0);
        } else {
            id = label[x];
        }
        for (auto p : path) {
            label[p] = id;
            mark[p] = kDone;
        }
        basin[id] += path.size();
        admissible += path.size();
    }

    StateSpaceSurvey survey{params, size, admissible, {}};
    survey.cycles.resize(cycle_entry.size());
    detail::parallel_ranges(cycle_entry.size(), workers, [&](std::uint64_t begin, std::uint64_t end) {
        for (auto c = begin; c < end; ++c) {
            auto best = cycle_entry[c];
            for (auto x = successor[best]; x != cycle_entry[c]; x = successor[x]) best = std::min(best, x);
            auto& cls = survey.cycles[c];
            cls.representative = decode(best, params);
            cls.analysis = find_cycle(cls.representative, params);
            cls.basin_count = basin[c];
        }
    });
    std::sort(survey.cycles.begin(), survey.cycles.end(),
              [](const CycleClass& a, const CycleClass& b) { return encoding_less(a.representative, b.representative); });
    return survey;
}

std::vector<Rational> candidate_velocities(const ChainParams& params) {
    if (params.cluster_len() > params.half_cells()) return {Rational(0)};
    const auto period = params.accounting_period();
    const std::int64_t turn = params.cells();
    std::vector<Rational> out{Rational(1)};
    for (std::int64_t r = 1; turn * r < period; ++r) {
        const auto residual = period - turn * r;
        if (residual >= 1 && residual <= r * params.cluster_len()) out.emplace_back(turn * r, period);
    }
    std::sort(out.begin(), out.end(), std::greater<>{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SpectrumReport spectrum_from_survey(const StateSpaceSurvey& survey, std::uint64_t budget) {
    SpectrumReport report{survey.params, Exhaustive{budget}, survey.states_examined, survey.admissible_count, {},
                          candidate_velocities(survey.params)};
    std::map<Rational, SpectrumEntry, std::greater<>> by_velocity;
    for (const auto& cls : survey.cycles) {
        const auto& a = cls.analysis;
        auto [it, inserted] =
            by_velocity.try_emplace(a.velocity, SpectrumEntry{a.velocity, 0, cls.representative, a.period, a.regime, a.purity});
        it->second.basin_count += cls.basin_count;
    }
    for (auto& [v, entry] : by_velocity) report.entries.push_back(std::move(entry));
    return report;
}

namespace {

Cell draw_cell(std::mt19937_64& gen, std::uint64_t bound) {
    // Reject the top 2^64 mod bound raw values so every cell is equally likely.
    const std::uint64_t excess = (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
    std::uint64_t r = gen();
    while (excess != 0 && r >= 0 - excess) r = gen();
    return static_cast<Cell>(r % bound);
}

SpectrumReport sampled_spectrum(const ChainParams& params, const Sampled& sampled, unsigned workers) {
    if (sampled.count == 0) throw ContractViolation("sample count must be positive");
    const std::uint64_t max_draws = sampled.count * 10'000 + 1'000'000;

    std::mt19937_64 gen(sampled.seed);
    const auto bound = static_cast<std::uint64_t>(params.cells());
    std::vector<SystemState> accepted;
    accepted.reserve(sampled.count);
    std::uint64_t draws = 0;
    std::vector<Cell> cells(static_cast<std::size_t>(params.contours()));
    while (accepted.size() < sampled.count) {
        if (++draws > max_draws)
            throw BudgetExceeded("admissible states too rare: " + std::to_string(accepted.size()) + " accepted after " +
                                 std::to_string(max_draws) + " draws");
        for (auto& c : cells) c = draw_cell(gen, bound);
        SystemState candidate(cells);
        if (is_admissible(candidate, params)) accepted.push_back(std::move(candidate));
    }

    std::vector<SystemState> canonical(accepted.size());
    detail::parallel_ranges(accepted.size(), workers, [&](std::uint64_t begin, std::uint64_t end) {
        for (auto k = begin; k < end; ++k) canonical[k] = min_encoded(find_cycle(accepted[k], params).cycle_states);
    });

    std::map<SystemState, std::uint64_t, EncodingOrder> tally;
    for (auto& c : canonical) ++tally[c];

    StateSpaceSurvey survey{params, draws, accepted.size(), {}};
    for (const auto& [rep, count] : tally)
        survey.cycles.push_back({rep, find_cycle(rep, params, {.budget = std::nullopt, .method = CycleMethod::Auto, .keep_states = false}), count});
    auto report = spectrum_from_survey(survey);
    report.exploration = sampled;
    return report;
}

}  // namespace

SpectrumReport empirical_spectrum(const ChainParams& params, const Exploration& exploration, unsigned workers) {
    if (const auto* sampled = std::get_if<Sampled>(&exploration)) return sampled_spectrum(params, *sampled, workers);
    const auto budget = std::get<Exhaustive>(exploration).budget;
    return spectrum_from_survey(survey_state_space(params, budget, workers), budget);
}

int DelayDecomposition::sum() const {
    int total = 0;
    for (auto k : delays) total += k;
    return total;
}

void require_feasible(const DelayDecomposition& decomposition, const ChainParams& params) {
    const int l = params.cluster_len();
    const long long r = static_cast<long long>(decomposition.delays.size());
    const long long residual = params.accounting_period() - params.cells() * r - decomposition.sum();
    auto fail = [&](const std::string& why) { throw InfeasibleDecomposition(why, residual); };
    if (l > params.half_cells()) fail("no delayed cycles exist when l > m");
    if (r == 0) fail("at least one turn is required");
    const int max_delay = decomposition.type == DelayType::First ? l : l - 1;
    for (auto k : decomposition.delays)
        if (k < 0 || k > max_delay)
            fail("delay " + std::to_string(k) + " outside [0, " + std::to_string(max_delay) + "] for " +
                 to_string(decomposition.type) + "-type delays");
    if (residual != 0)
        fail("N(m+l) = 2mr + sum(k) violated: " + std::to_string(residual) + " step(s) of the period " +
             (residual > 0 ? "unassigned" : "over-assigned"));
}

DecompositionList feasible_decompositions(const ChainParams& params, DelayType type, std::size_t limit) {
    DecompositionList list;
    const int l = params.cluster_len();
    if (l > params.half_cells()) return list;
    const int max_delay = type == DelayType::First ? l : l - 1;
    const auto period = params.accounting_period();

    std::vector<int> current;
    std::function<void(int, int)> fill = [&](int parts_left, int remaining) {
        if (!list.complete) return;
        if (parts_left == 0) {
            if (remaining != 0) return;
            if (list.items.size() == limit) {
                list.complete = false;
                return;
            }
            list.items.push_back({current, type});
            return;
        }
        for (int k = 0; k <= std::min(max_delay, remaining); ++k) {
            if (remaining - k > static_cast<long long>(parts_left - 1) * max_delay) continue;
            current.push_back(k);
            fill(parts_left - 1, remaining - k);
            current.pop_back();
        }
    };
    for (std::int64_t r = 1; params.cells() * r < period; ++r) {
        const auto residual = period - params.cells() * r;
        if (residual > r * max_delay) continue;
        fill(static_cast<int>(r), static_cast<int>(residual));
    }
    return list;
}

SystemState construct_cycle_state(const ChainParams& params, const DelayDecomposition& decomposition) {
    require_feasible(decomposition, params);
    const int m = params.half_cells();
    const int cells = params.cells();
    const auto period = params.accounting_period();
    const bool first = decomposition.type == DelayType::First;

    // Schedule of cluster 0 over one accounting period: r turns of 2m cells,
    // dwelling k+1 steps at the waiting cell (m for first-type delays, 0 for
    // second-type) and one step everywhere else.
    const Cell wait_cell = first ? m : 0;
    const Cell turn_start = first ? 1 : m + 1;
    std::vector<Cell> schedule;
    schedule.reserve(static_cast<std::size_t>(period));
    for (int k : decomposition.delays) {
        for (int s = 0; s < cells; ++s) {
            const Cell x = (turn_start + s) % cells;
            schedule.insert(schedule.end(), x == wait_cell ? k + 1 : 1, x);
        }
    }
    if (static_cast<std::int64_t>(schedule.size()) != period)
        throw std::logic_error("schedule length does not match the accounting period");

    // First-type chains run rightwards (cluster j lags cluster j-1 by m+l
    // steps), second-type chains leftwards.
    const auto lag = static_cast<std::int64_t>(m + params.cluster_len());
    std::vector<Cell> positions;
    for (std::int64_t j = 0; j < params.contours(); ++j) {
        const auto shift = first ? -j * lag : j * lag;
        positions.push_back(schedule[static_cast<std::size_t>(((shift % period) + period) % period)]);
    }
    SystemState state(std::move(positions));

    auto fail = [&](const std::string& why) {
        throw ConstructionFailed("construction for " + params.to_string() + " gave " + state.to_string() + ": " + why,
                                 state);
    };
    if (!is_admissible(state, params)) fail("state is inadmissible");
    const auto analysis = find_cycle(state, params, {.budget = std::nullopt, .method = CycleMethod::Auto, .keep_states = false});
    const Rational expected(period - decomposition.sum(), period);
    const auto expected_purity = decomposition.sum() == 0 ? DelayPurity::None
                                 : first                  ? DelayPurity::FirstOnly
                                                          : DelayPurity::SecondOnly;
    if (analysis.transient_len != 0) fail("state is not on its limit cycle");
    if (analysis.velocity != expected)
        fail("velocity " + analysis.velocity.to_string() + ", expected " + expected.to_string());
    if (analysis.purity != expected_purity) fail("delay types " + to_string(analysis.purity));
    return state;
}

SystemState mirror_state(const SystemState& state, const ChainParams& params) {
    require_well_formed(state, params);
    auto p = state.positions();
    return SystemState(std::vector<Cell>(p.rbegin(), p.rend()));
}

}  // namespace contour
