#pragma once

#include <optional>

#include "acmatch/reduction.hpp"
#include "acmatch/term.hpp"

namespace acmatch {

// Demand-driven AC-matching.
//
// A matching problem reduces under two saturation phases iterated to a
// global fixpoint: the matching and Next rules first (normalize_R12), then
// the ordered DNF expansion (normalize_R3_down).  The resulting normal form
// is a lazy list: Fail, Id, an irreducible land-substitution, or a head
// substitution disjoined with a suspended tail.  Forcing the tail wraps it
// in Next and normalizes again, which expands exactly one more surjection
// rank per suspended triplet.
//
// Normalization is recursive and order-independent (the rule systems are
// confluent); when opts.trace is set it runs on the step-exact engine
// instead so every rule application is recorded with its position.

ConstraintPtr normalize_R12(const ConstraintPtr& c, const NormalizeOptions& opts,
                            NormalizeStats& stats);

ConstraintPtr normalize_R3_down(const ConstraintPtr& c, const NormalizeOptions& opts,
                                NormalizeStats& stats);

ConstraintPtr lazy_normal_form(const ConstraintPtr& c, const NormalizeOptions& opts,
                               NormalizeStats& stats);

// Convenience closure over lazy_normal_form for the lazy-list recognizer.
NormalFormFn normal_form_fn(NormalizeOptions opts = {});

// One substitution at a time.  Value type: copy freely, transfer between
// threads, but do not force one instance from two threads.
class SolutionStream {
  public:
    const ConstraintPtr& current() const { return current_; }
    bool exhausted() const;

    // Empty substitution for Id; nullopt when exhausted.  ContractViolation
    // if the current constraint is not a lazy list (cannot happen for
    // streams produced by match_lazy on a healthy engine).
    std::optional<Substitution> head() const;

    // Drops the head solution, normalizing the suspended tail.
    // ContractViolation when already exhausted.
    void advance();

    // Cumulative over the initial normalization and every advance.
    const NormalizeStats& stats() const { return stats_; }

  private:
    friend SolutionStream match_lazy(const TermPtr&, const TermPtr&, const NormalizeOptions&);
    SolutionStream(ConstraintPtr current, NormalizeOptions opts, NormalizeStats stats)
        : current_(std::move(current)), opts_(std::move(opts)), stats_(stats) {}

    ConstraintPtr current_;
    NormalizeOptions opts_;
    NormalizeStats stats_;
};

// Both terms must be flat; all symbols must come from one signature
// (DomainError otherwise).
SolutionStream match_lazy(const TermPtr& pattern, const TermPtr& subject,
                          const NormalizeOptions& opts = {});

}  // namespace acmatch
