#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "contour/chain.hpp"
#include "contour/orbit.hpp"
#include "contour/rational.hpp"

namespace contour {

inline constexpr std::uint64_t kDefaultStateBudget = 1'000'000;

/// One distinct limit cycle found by enumeration. The representative is the
/// cycle state with the smallest encoding; `analysis` starts from it.
struct CycleClass {
    SystemState representative;
    CycleAnalysis analysis;
    std::uint64_t basin_count = 0;
};

/// Every admissible state of a parameter point, partitioned by limit cycle.
struct StateSpaceSurvey {
    ChainParams params;
    std::uint64_t states_examined = 0;
    std::uint64_t admissible_count = 0;
    std::vector<CycleClass> cycles;  // ordered by representative encoding
};

/// Exhaustive enumeration. Throws BudgetExceeded if (2m)^N > budget.
/// `workers` = 0 picks the hardware concurrency; results do not depend on it.
StateSpaceSurvey survey_state_space(const ChainParams& params, std::uint64_t budget = kDefaultStateBudget,
                                    unsigned workers = 0);

struct Exhaustive {
    std::uint64_t budget = kDefaultStateBudget;
};

/// Uniform draws with replacement from the admissible states, by rejection.
/// Generator: std::mt19937_64(seed), one unbiased draw per contour in index
/// order, taken by rejection on the raw 64-bit output.
struct Sampled {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
};

using Exploration = std::variant<Exhaustive, Sampled>;

struct SpectrumEntry {
    Rational velocity;
    std::uint64_t basin_count = 0;
    SystemState representative;
    std::uint64_t period = 0;
    Regime regime = Regime::DelayedCycle;
    DelayPurity purity = DelayPurity::None;
};

struct SpectrumReport {
    ChainParams params;
    Exploration exploration;
    std::uint64_t states_examined = 0;
    std::uint64_t admissible_count = 0;
    std::vector<SpectrumEntry> entries;  // distinct velocities, descending
    std::vector<Rational> candidates;    // descending
};

/// {0} if l > m; otherwise {1} together with 2mr / N(m+l) for every r >= 1
/// with 1 <= N(m+l) - 2mr <= r*l. Descending.
std::vector<Rational> candidate_velocities(const ChainParams& params);

SpectrumReport empirical_spectrum(const ChainParams& params, const Exploration& exploration, unsigned workers = 0);

/// Aggregates a survey by velocity. The representative of a velocity is the
/// smallest-encoded representative among its cycles.
SpectrumReport spectrum_from_survey(const StateSpaceSurvey& survey, std::uint64_t budget = kDefaultStateBudget);

/// r = delays.size() turns per accounting period; delays[i] is the wait in turn i.
struct DelayDecomposition {
    std::vector<int> delays;
    DelayType type = DelayType::First;

    int sum() const;
};

/// Throws InfeasibleDecomposition unless l <= m, r >= 1, every delay lies in
/// [0, l] (first) or [0, l-1] (second) and 2mr + sum = N(m+l).
void require_feasible(const DelayDecomposition& decomposition, const ChainParams& params);

/// All ordered feasible decompositions with sum >= 1, up to `limit` of them
/// (the returned flag is false if the limit cut the enumeration short).
struct DecompositionList {
    std::vector<DelayDecomposition> items;
    bool complete = true;
};
DecompositionList feasible_decompositions(const ChainParams& params, DelayType type, std::size_t limit);

/// Builds the initial state of a cycle realising the decomposition and checks
/// it by simulation: transient 0, velocity 1 - sum/N(m+l), delays of the
/// requested type only. Throws InfeasibleDecomposition or ConstructionFailed.
SystemState construct_cycle_state(const ChainParams& params, const DelayDecomposition& decomposition);

/// Reverses the contour order.
SystemState mirror_state(const SystemState& state, const ChainParams& params);

}  // namespace contour
