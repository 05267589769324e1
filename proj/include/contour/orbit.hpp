#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "contour/chain.hpp"
#include "contour/rational.hpp"

namespace contour {

enum class Regime { FreeMovement, Collapse, DelayedCycle };
enum class DelayPurity { None, FirstOnly, SecondOnly, Mixed };

std::string to_string(Regime regime);
std::string to_string(DelayPurity purity);

/// A blocked cluster at step `time` of the cycle (0 = first cycle state).
struct DelayRecord {
    std::uint64_t time;
    std::size_t cluster;
    DelayType type;
    std::size_t node;

    friend bool operator==(const DelayRecord&, const DelayRecord&) = default;
};

struct CycleAnalysis {
    std::uint64_t transient_len = 0;
    std::uint64_t period = 0;  // minimal
    std::vector<std::uint64_t> moves_per_cluster;
    Rational velocity;  // moves of cluster 0 over one period; see velocities()
    Regime regime = Regime::DelayedCycle;
    std::vector<DelayRecord> delay_log;
    DelayPurity purity = DelayPurity::None;
    std::vector<SystemState> cycle_states;  // empty unless retained
};

enum class CycleMethod {
    Auto,          // visited index when the state space is 64-bit encodable, else Brent
    VisitedIndex,  // hash map keyed by encode()
    Brent,         // constant memory
};

struct CycleOptions {
    /// Maximum number of transitions before giving up; defaults to (2m)^N,
    /// which always suffices.
    std::optional<std::uint64_t> budget;
    CycleMethod method = CycleMethod::Auto;
    bool keep_states = true;
};

/// Follows the trajectory from `initial` into its limit cycle and analyses
/// one period of it. Throws InadmissibleState or BudgetExceeded.
CycleAnalysis find_cycle(const SystemState& initial, const ChainParams& params, const CycleOptions& options = {});

struct VelocityReport {
    std::vector<Rational> per_cluster;
    bool uniform = true;
};

VelocityReport velocities(const CycleAnalysis& analysis);

/// One maximal run of consecutive blocked steps of a cluster, taken cyclically
/// over the period. `end` is the first cycle step at which the cluster moves.
struct DelayEpisode {
    std::size_t cluster;
    DelayType type;
    std::uint64_t start;
    std::uint64_t duration;
    std::uint64_t end;

    friend bool operator==(const DelayEpisode&, const DelayEpisode&) = default;
};

struct DeltaMismatch {
    DelayEpisode episode;
    Cell observed;
    Cell expected;
};

struct DelayStructureReport {
    DelayPurity purity = DelayPurity::None;
    std::vector<DelayEpisode> episodes;
    /// Delay ends where the neighbour gap is not m-l (first) or m+l (second).
    std::vector<DeltaMismatch> delta_mismatches;
    /// Episodes whose chained successor (first: cluster i+1, second: cluster
    /// i-1, starting m+l steps later mod period) is missing.
    std::vector<DelayEpisode> chain_breaks;
    /// Episodes longer than l (first) or l-1 (second).
    std::vector<DelayEpisode> overlong;

    // Report-only: duration of an episode against its chained successor.
    std::uint64_t chained_pairs = 0;
    std::uint64_t non_increasing_pairs = 0;
    std::uint64_t equal_pairs = 0;

    bool ok() const {
        return purity != DelayPurity::Mixed && delta_mismatches.empty() && chain_breaks.empty() && overlong.empty();
    }
};

/// Requires cycle_states to have been retained. Collapse and free-movement
/// cycles produce an empty report.
DelayStructureReport verify_delay_structure(const CycleAnalysis& analysis, const ChainParams& params);

/// Writes `steps + 1` CSV rows "t,x_0..x_{N-1},moved,delays" after a header.
/// `moved` is a 0/1 string; `delays` is ';'-separated "cluster:type:node".
/// Row t describes the state at time t and the transition it takes.
void write_trace(std::ostream& out, const SystemState& initial, const ChainParams& params, std::uint64_t steps);

}  // namespace contour
