#pragma once

// Brute-force checks of the structural claims about the chain, run over
// exhaustively enumerable parameter grids.
//
// Asserted claims (a violation carries a replayable witness initial state):
//   T1            collapse iff l > m, from every admissible state
//   T3            first-type delay chains: cluster i at t0 -> cluster i+1 at t0+m+l
//   T5            second-type delay chains: cluster i at t0 -> cluster i-1 at t0+m+l
//   T6            a cycle has delays of one type only
//   T7            a velocity-1 cycle exists iff l <= m
//   T8            delayed-cycle velocity in [2/3, 1), above 2/3 when l < m
//   T9            at most floor(N/3) sub-unit velocities when l <= m
//   T10-12        all states reach free movement when N odd and N*l < m, or
//                 N even and N*l < 2m (equality is recorded as a finding)
//   L1, L2        neighbour gap m-l / m+l at every first / second-type delay end
//   uniformity    every cluster has the same velocity on a cycle
//   period        delayed periods divide N(m+l); free-movement period is 2m
//   delay-bounds  first-type delays last at most l steps, second-type l-1
//   Eq4-soundness sub-unit velocities lie in candidate_velocities
//   S6-sufficiency every feasible first-type decomposition is constructible
// Report-only findings: T2-T4 (chained delay durations never increase),
// S6-second (second-type decompositions realised).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contour/chain.hpp"
#include "contour/spectrum.hpp"

namespace contour {

/// Bound of the form coefficient*m + offset, for l ranges relative to m.
struct MBound {
    int m_coefficient = 0;
    int offset = 0;

    int at(int m) const { return m_coefficient * m + offset; }
    std::string to_string() const;
};

struct GridSpec {
    std::vector<int> contours;
    std::vector<int> half_cells;
    MBound cluster_len_lo{0, 1};
    MBound cluster_len_hi{2, -1};
    std::uint64_t budget = kDefaultStateBudget;

    std::string to_string() const;
};

/// Parses "N=2..5,m=1..4,l=1..2m-1". N and m take an integer or a range a..b;
/// l takes bounds like 3, m, 2m-1 or m+1. Keys may come in any order; omitted
/// keys fall back to N=2..5, m=1..4, l=1..2m-1. Throws ContractViolation.
GridSpec parse_grid(std::string_view text);

/// Grid points in canonical order (N, then m, then l). Throws
/// ContractViolation if any point breaks the ChainParams invariants.
std::vector<ChainParams> grid_points(const GridSpec& grid);

enum class Verdict { Holds, Violated, Skipped, Finding };

std::string to_string(Verdict verdict);

struct ClaimReport {
    std::string claim;
    Verdict verdict = Verdict::Holds;
    std::optional<SystemState> witness;  // set iff Violated
    std::string detail;
};

struct PointReport {
    ChainParams params;
    std::vector<ClaimReport> claims;
};

ClaimReport check_collapse(const StateSpaceSurvey& survey);
ClaimReport check_free_movement_thresholds(const StateSpaceSurvey& survey);
std::vector<ClaimReport> check_spectrum_claims(const StateSpaceSurvey& survey);
std::vector<ClaimReport> check_cycle_structure(const StateSpaceSurvey& survey);

// Convenience forms that enumerate first; over-budget points come back Skipped.
ClaimReport check_collapse(const ChainParams& params, std::uint64_t budget = kDefaultStateBudget);
ClaimReport check_free_movement_thresholds(const ChainParams& params, std::uint64_t budget = kDefaultStateBudget);
std::vector<ClaimReport> check_spectrum_claims(const ChainParams& params, std::uint64_t budget = kDefaultStateBudget);
std::vector<ClaimReport> check_cycle_structure(const ChainParams& params, std::uint64_t budget = kDefaultStateBudget);

/// Every check at every grid point, one enumeration per point.
PointReport check_point(const ChainParams& params, std::uint64_t budget, unsigned workers = 0);
std::vector<PointReport> run_suite(const GridSpec& grid, unsigned workers = 0);

bool any_violation(const std::vector<PointReport>& reports);

}  // namespace contour
