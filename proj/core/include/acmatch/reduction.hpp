#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "acmatch/constraint.hpp"

namespace acmatch {

// Test instrumentation: seeded engine faults for the differential harness.
// NextOrFlip inverts the side condition of the next_or rule, the seeded bug
// the comparison harness is expected to catch.
enum class InjectedFault { None, NextOrFlip };

struct NormalizeStats {
    std::uint64_t rule_applications = 0;
    std::uint64_t ranks_expanded = 0;  // match_surj_next/last applications
    std::uint64_t sat_iterations = 0;

    NormalizeStats& operator+=(const NormalizeStats& other) {
        rule_applications += other.rule_applications;
        ranks_expanded += other.ranks_expanded;
        sat_iterations += other.sat_iterations;
        return *this;
    }
};

// One rewrite: the subtree `before` at `path` (child indices from the root)
// was replaced by `after`.  Replaying a trace from the initial constraint
// reproduces the final one.
struct ReductionStep {
    std::string rule;
    std::vector<std::size_t> path;
    ConstraintPtr before;
    ConstraintPtr after;
};
using ReductionTrace = std::vector<ReductionStep>;

struct NormalizeOptions {
    // Rule applications allowed per normalization.  Termination is a theorem,
    // so running out flags an engine bug (StepBudgetExceeded).
    std::uint64_t step_budget = 10'000'000;
    InjectedFault fault = InjectedFault::None;
    // When set, normalization runs on the step-exact engine and appends
    // every rule application here.
    ReductionTrace* trace = nullptr;
};

}  // namespace acmatch
