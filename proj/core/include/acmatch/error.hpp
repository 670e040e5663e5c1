#pragma once

#include <stdexcept>
#include <string>

namespace acmatch {

// Bad input values (invalid arity, rank out of range, mismatched signatures).
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Caller broke a documented precondition (forcing an exhausted stream,
// extracting a substitution from a reducible conjunction, ...).
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

// The normalization step budget ran out.  Termination is guaranteed for
// well-formed inputs, so this signals an engine bug, not a user error.
struct StepBudgetExceeded : std::runtime_error {
    explicit StepBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace acmatch
