#pragma once

#include <functional>
#include <optional>

#include "acmatch/reduction.hpp"

namespace acmatch {

// Single-step rewriting over constraints: redexes are enumerated explicitly
// and contracted one at a time.  This engine is the reference used by the
// trace replayer and by the confluence tests; the recursive normalizer in
// lazy.hpp must agree with it on every input.

struct Redex {
    std::string rule;
    std::vector<std::size_t> path;
    // fail_next: index of the F disjunct; DNF_1/DNF_2: index of the left
    // operand of the binary instance.  Unused otherwise.
    std::size_t arg = 0;
};

// Every redex of the matching system (R1) and the Next system (R2), listed
// innermost first, left to right.  fail_next instances take the maximal
// disjunction tail; shorter tails converge to the same normal form.
std::vector<Redex> find_redexes_r12(const ConstraintPtr& c,
                                    InjectedFault fault = InjectedFault::None);

// The one DNF step permitted by the ordered strategy: the tail of a
// conjunction is brought to disjunctive normal form before its head is
// expanded, and a disjunction is always split head-first.
std::optional<Redex> find_redex_r3_down(const ConstraintPtr& c);

// Contracts the redex, rebuilding the spine through the constraint factories.
// Counts against opts.step_budget and appends to opts.trace when set.
ConstraintPtr apply_redex(const ConstraintPtr& c, const Redex& redex,
                          const NormalizeOptions& opts, NormalizeStats& stats);

// Picks which redex to contract next; defaults to the first (innermost
// leftmost).  The confluence tests pass a randomized picker.
using RedexPicker = std::function<std::size_t(const std::vector<Redex>&)>;

ConstraintPtr normalize_r12_steps(const ConstraintPtr& c, const NormalizeOptions& opts,
                                  NormalizeStats& stats, const RedexPicker& picker = {});
ConstraintPtr normalize_r3_down_steps(const ConstraintPtr& c, const NormalizeOptions& opts,
                                      NormalizeStats& stats);

// sat-down on the step engine: saturate R1 u R2, then R3-down, to fixpoint.
ConstraintPtr lazy_normal_form_steps(const ConstraintPtr& c, const NormalizeOptions& opts,
                                     NormalizeStats& stats);

// Applies each recorded step, checking that the subtree found at each path
// is the recorded `before`.  ContractViolation on any mismatch.
ConstraintPtr replay_trace(const ConstraintPtr& initial, const ReductionTrace& trace);

}  // namespace acmatch
