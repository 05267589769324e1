#include "contour/chain.hpp"

#include <limits>

#include "contour/errors.hpp"

namespace contour {

namespace {

Cell mod(long long a, long long n) {
    const auto r = a % n;
    return static_cast<Cell>(r < 0 ? r + n : r);
}

std::size_t left_of(std::size_t i, std::size_t n) { return i == 0 ? n - 1 : i - 1; }
std::size_t right_of(std::size_t i, std::size_t n) { return i + 1 == n ? 0 : i + 1; }

bool in_right_set(Cell x, int l) { return x >= 1 && x <= l - 1; }

bool in_left_set(Cell x, int m, int l) {
    // {m+1, ..., m+l-1} mod 2m, which wraps past 0 when l > m.
    return mod(static_cast<long long>(x) - m - 1, 2LL * m) < l - 1;
}

// Shared by blocked() and advance(): x is the cluster, left/right its neighbours.
std::optional<DelayType> blocking(Cell x, Cell left, Cell right, int m, int l) {
    if (x == 0 && in_left_set(right, m, l)) return DelayType::Second;
    if (x == m && (left == 0 || in_right_set(left, l))) return DelayType::First;
    return std::nullopt;
}

}  // namespace

ChainParams::ChainParams(int contours, int half_cells, int cluster_len)
    : contours_(contours), half_cells_(half_cells), cluster_len_(cluster_len) {
    if (contours < 2) throw ContractViolation("N >= 2 required (got " + std::to_string(contours) + ")");
    if (half_cells < 1) throw ContractViolation("m >= 1 required (got " + std::to_string(half_cells) + ")");
    if (cluster_len < 1 || cluster_len > 2 * half_cells - 1)
        throw ContractViolation("1 <= l <= 2m-1 required (got l=" + std::to_string(cluster_len) +
                                ", m=" + std::to_string(half_cells) + ")");
}

std::uint64_t ChainParams::state_space_size() const noexcept {
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    const auto base = static_cast<std::uint64_t>(cells());
    std::uint64_t size = 1;
    for (int i = 0; i < contours_; ++i) {
        if (size > max / base) return max;
        size *= base;
    }
    return size;
}

bool ChainParams::encodable() const noexcept {
    return state_space_size() != std::numeric_limits<std::uint64_t>::max();
}

std::string ChainParams::to_string() const {
    return "(N=" + std::to_string(contours_) + ", m=" + std::to_string(half_cells_) +
           ", l=" + std::to_string(cluster_len_) + ")";
}

std::string SystemState::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(positions_[i]);
    }
    return s + ")";
}

std::string to_string(DelayType type) { return type == DelayType::First ? "first" : "second"; }

void require_well_formed(const SystemState& state, const ChainParams& params) {
    if (state.size() != static_cast<std::size_t>(params.contours()))
        throw ContractViolation("state has " + std::to_string(state.size()) + " entries, expected " +
                                std::to_string(params.contours()));
    for (std::size_t i = 0; i < state.size(); ++i)
        if (state[i] < 0 || state[i] >= params.cells())
            throw ContractViolation("state entry " + std::to_string(i) + " = " + std::to_string(state[i]) +
                                    " outside [0, " + std::to_string(params.cells()) + ")");
}

void require_admissible(const SystemState& state, const ChainParams& params) {
    require_well_formed(state, params);
    if (!is_admissible(state, params))
        throw InadmissibleState("inadmissible state " + state.to_string() + ": a node is occupied by two clusters");
}

bool occupies_right_node(Cell x, const ChainParams& params) { return in_right_set(x, params.cluster_len()); }

bool occupies_left_node(Cell x, const ChainParams& params) {
    return in_left_set(x, params.half_cells(), params.cluster_len());
}

bool is_admissible(const SystemState& state, const ChainParams& params) {
    require_well_formed(state, params);
    const auto n = state.size();
    for (std::size_t i = 0; i < n; ++i)
        if (occupies_right_node(state[i], params) && occupies_left_node(state[right_of(i, n)], params)) return false;
    return true;
}

std::optional<DelayType> blocked(const SystemState& state, std::size_t i, const ChainParams& params) {
    const auto n = state.size();
    return blocking(state[i], state[left_of(i, n)], state[right_of(i, n)], params.half_cells(),
                    params.cluster_len());
}

StepResult step(const SystemState& state, const ChainParams& params) {
    const auto n = state.size();
    StepResult result{state, std::vector<bool>(n, true), {}};
    for (std::size_t i = 0; i < n; ++i) {
        if (auto type = blocked(state, i, params)) {
            result.moved[i] = false;
            const auto node = *type == DelayType::Second ? i : left_of(i, n);
            result.delays.push_back({i, *type, node});
        } else {
            result.next[i] = state[i] + 1 == params.cells() ? 0 : state[i] + 1;
        }
    }
    return result;
}

void advance(std::span<const Cell> in, std::span<Cell> out, const ChainParams& params) {
    const auto n = in.size();
    const int m = params.half_cells();
    const int l = params.cluster_len();
    const int cells = params.cells();
    for (std::size_t i = 0; i < n; ++i) {
        const Cell x = in[i];
        out[i] = blocking(x, in[left_of(i, n)], in[right_of(i, n)], m, l) ? x : (x + 1 == cells ? 0 : x + 1);
    }
}

Cell delta(const SystemState& state, std::size_t i, const ChainParams& params) {
    return mod(static_cast<long long>(state[right_of(i, state.size())]) - state[i], params.cells());
}

std::uint64_t encode(const SystemState& state, const ChainParams& params) {
    require_well_formed(state, params);
    if (!params.encodable()) throw ContractViolation("state space of " + params.to_string() + " exceeds 64 bits");
    std::uint64_t index = 0;
    const auto base = static_cast<std::uint64_t>(params.cells());
    for (std::size_t i = state.size(); i-- > 0;) index = index * base + static_cast<std::uint64_t>(state[i]);
    return index;
}

SystemState decode(std::uint64_t index, const ChainParams& params) {
    if (!params.encodable() || index >= params.state_space_size())
        throw ContractViolation("state index " + std::to_string(index) + " out of range for " + params.to_string());
    const auto base = static_cast<std::uint64_t>(params.cells());
    std::vector<Cell> positions(static_cast<std::size_t>(params.contours()));
    for (auto& x : positions) {
        x = static_cast<Cell>(index % base);
        index /= base;
    }
    return SystemState(std::move(positions));
}

bool encoding_less(const SystemState& a, const SystemState& b) {
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

}  // namespace contour
