#pragma once

// State space and single-step dynamics of a closed chain of contours.
//
// Contour i has 2m cells numbered 0..2m-1 in the direction of motion and
// carries one cluster of l particles. Its state is the cell of the cluster's
// leading particle. Node (i,i+1) sits between cells 0 and 1 of contour i and
// between cells m and m+1 of contour i+1. A cluster "is at" its right node in
// state 0 and at its left node in state m; it "occupies" the right node in
// states 1..l-1 and the left node in states m+1..m+l-1 (mod 2m).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace contour {

using Cell = int;

class ChainParams {
public:
    /// Throws ContractViolation unless N >= 2, m >= 1 and 1 <= l <= 2m-1.
    ChainParams(int contours, int half_cells, int cluster_len);

    int contours() const noexcept { return contours_; }
    int half_cells() const noexcept { return half_cells_; }
    int cluster_len() const noexcept { return cluster_len_; }
    int cells() const noexcept { return 2 * half_cells_; }

    /// N(m+l), the accounting period of a delayed cycle.
    std::int64_t accounting_period() const noexcept {
        return static_cast<std::int64_t>(contours_) * (half_cells_ + cluster_len_);
    }

    /// (2m)^N, saturating at UINT64_MAX.
    std::uint64_t state_space_size() const noexcept;

    /// True when every state has a distinct 64-bit encoding.
    bool encodable() const noexcept;

    std::string to_string() const;

    friend bool operator==(const ChainParams&, const ChainParams&) = default;

private:
    int contours_;
    int half_cells_;
    int cluster_len_;
};

class SystemState {
public:
    SystemState() = default;
    explicit SystemState(std::vector<Cell> positions) : positions_(std::move(positions)) {}
    SystemState(std::initializer_list<Cell> positions) : positions_(positions) {}

    std::size_t size() const noexcept { return positions_.size(); }
    Cell operator[](std::size_t i) const { return positions_[i]; }
    Cell& operator[](std::size_t i) { return positions_[i]; }
    std::span<const Cell> positions() const noexcept { return positions_; }

    /// "(1,5,8)"
    std::string to_string() const;

    friend bool operator==(const SystemState&, const SystemState&) = default;
    friend auto operator<=>(const SystemState&, const SystemState&) = default;

private:
    std::vector<Cell> positions_;
};

enum class DelayType { First, Second };

std::string to_string(DelayType type);

/// One blocked cluster in a transition. `node` is j for node (j, j+1).
struct DelayEvent {
    std::size_t cluster;
    DelayType type;
    std::size_t node;

    friend bool operator==(const DelayEvent&, const DelayEvent&) = default;
};

struct StepResult {
    SystemState next;
    std::vector<bool> moved;
    std::vector<DelayEvent> delays;
};

/// Throws ContractViolation on wrong length or an out-of-range cell.
void require_well_formed(const SystemState& state, const ChainParams& params);

/// Throws InadmissibleState (after the well-formedness check).
void require_admissible(const SystemState& state, const ChainParams& params);

bool occupies_right_node(Cell x, const ChainParams& params);
bool occupies_left_node(Cell x, const ChainParams& params);

bool is_admissible(const SystemState& state, const ChainParams& params);

/// Whether cluster i waits this step. First: at cell m while the left
/// neighbour is in 0..l-1 (occupying the node, or winning a simultaneous
/// arrival). Second: at cell 0 while the right neighbour occupies the node.
std::optional<DelayType> blocked(const SystemState& state, std::size_t i, const ChainParams& params);

/// Synchronous update: every decision reads the time-t state.
StepResult step(const SystemState& state, const ChainParams& params);

/// Same transition as step() without the bookkeeping; `out` must have size N.
void advance(std::span<const Cell> in, std::span<Cell> out, const ChainParams& params);

/// (x_{i+1} - x_i) mod 2m.
Cell delta(const SystemState& state, std::size_t i, const ChainParams& params);

/// Little-endian mixed radix, base 2m: sum x_i (2m)^i.
std::uint64_t encode(const SystemState& state, const ChainParams& params);
SystemState decode(std::uint64_t index, const ChainParams& params);

/// Order matching encode() (most significant contour compared first); usable
/// when the state space exceeds 64 bits.
bool encoding_less(const SystemState& a, const SystemState& b);

}  // namespace contour
