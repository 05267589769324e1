#pragma once

#include <stdexcept>
#include <string>

#include "contour/chain.hpp"

namespace contour {

/// Raised when an argument breaks a documented precondition (malformed
/// parameters, wrong state arity, out-of-range cell index).
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The state offered to an analysis entry point has a doubly occupied node.
class InadmissibleState : public ContractViolation {
public:
    using ContractViolation::ContractViolation;
};

/// A search or enumeration would need more steps/states than it was allowed.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InfeasibleDecomposition : public std::invalid_argument {
public:
    InfeasibleDecomposition(const std::string& what, long long residual)
        : std::invalid_argument(what), residual_(residual) {}

    /// N(m+l) - 2mr - sum(k): the part of the accounting period left unassigned.
    long long residual() const noexcept { return residual_; }

private:
    long long residual_;
};

/// A decomposition passed its invariants but simulation did not reproduce
/// the requested cycle.
class ConstructionFailed : public std::runtime_error {
public:
    ConstructionFailed(const std::string& what, SystemState state)
        : std::runtime_error(what), state_(std::move(state)) {}

    const SystemState& state() const noexcept { return state_; }

private:
    SystemState state_;
};

}  // namespace contour
