#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "acmatch/bigint.hpp"
#include "acmatch/term.hpp"

namespace acmatch {

class Constraint;
using ConstraintPtr = std::shared_ptr<const Constraint>;

enum class ConstraintKind {
    Fail,     // F: no solution
    Id,       // I: identity substitution
    Match,    // pattern << subject
    And,      // conjunction, flattened, >= 2 children
    Or,       // disjunction, flattened, >= 2 children
    Next,     // activates delayed computations
    Triplet,  // <t, u, s>: matching of t against u suspended at rank s
};

// Delayed matching constraint.  Conjunctions and disjunctions are kept as
// flattened sequences (never directly nesting the same connective), the
// identity is dropped from conjunctions and a failing conjunct collapses
// the conjunction; those are properties of the constraint algebra, so the
// factories maintain them.  Disjunctions never touch F: in the lazy system
// F is not a neutral element for the disjunction.
class Constraint {
  public:
    static ConstraintPtr fail();
    static ConstraintPtr id();
    static ConstraintPtr match(TermPtr pattern, TermPtr subject);
    static ConstraintPtr conj(std::vector<ConstraintPtr> children);
    static ConstraintPtr disj(std::vector<ConstraintPtr> children);
    static ConstraintPtr next(ConstraintPtr inner);
    static ConstraintPtr triplet(TermPtr pattern, TermPtr subject, BigUint rank);

    ConstraintKind kind() const { return kind_; }
    bool is(ConstraintKind k) const { return kind_ == k; }

    const TermPtr& pattern() const { return pattern_; }  // Match / Triplet
    const TermPtr& subject() const { return subject_; }  // Match / Triplet
    const BigUint& rank() const { return rank_; }        // Triplet
    const BigUint& rank_total() const { return rank_total_; }
    const std::vector<ConstraintPtr>& children() const { return children_; }
    const ConstraintPtr& inner() const { return children_.front(); }  // Next

  private:
    explicit Constraint(ConstraintKind kind) : kind_(kind) {}

    ConstraintKind kind_;
    TermPtr pattern_;
    TermPtr subject_;
    BigUint rank_;
    BigUint rank_total_;  // |S_{n,k}| cached for the triplet's terms
    std::vector<ConstraintPtr> children_;
};

bool equal(const ConstraintPtr& a, const ConstraintPtr& b);

// Paper-notation printer for logs and test diffs.
std::string to_string(const ConstraintPtr& c);

// Removes Id from conjunctions, collapses conjunctions containing Fail,
// flattens nested same connectives; leaves disjunction heads alone (F or C
// is a rewrite rule of the lazy system, not an algebraic identity here).
// Idempotent.
ConstraintPtr simplify_algebraic(const ConstraintPtr& c);

// True for a conjunction of variable matches (or a single one).
bool is_land_substitution(const ConstraintPtr& c);

// A land-substitution is irreducible when no variable is bound to two
// AC-unequal terms.  AC-inequality, not syntactic inequality: surjection
// regrouping produces syntactically distinct but AC-equal bindings for
// non-linear variables.
bool is_irreducible_land_substitution(const ConstraintPtr& c);

// Post-processing of an irreducible land-substitution (or Id): drops x<<x,
// binds x<<t, keeps the first of AC-equal duplicates.  ContractViolation on
// conflicting bindings or on a constraint that is not a land-substitution.
Substitution extract_substitution(const ConstraintPtr& c);

// Normal-form grammars of the lazy system.
//   G: conjunctions/disjunctions over variable matches, Id and triplet
//      tails (the normal forms of the matching rules alone)
//   K: conjunctions of variable matches and triplets
//   F: disjunctions of K (constraints in DNF)
//   S: conjunctions of variable matches
//   H: S | I | (S or I) followed by a DNF tail
enum class Grammar { G, K, F, S, H };

bool matches_grammar(const ConstraintPtr& c, Grammar g);

// The shape every fully normalized matching problem takes: Fail, Id, an
// irreducible land-substitution, or a head substitution disjoined with a
// tail whose forcing is again a lazy list.  `normal_form` supplies the
// engine's normalization to force tails.
using NormalFormFn = std::function<ConstraintPtr(const ConstraintPtr&)>;
bool is_lazy_list(const ConstraintPtr& c, const NormalFormFn& normal_form);

// Head-only check: the part of is_lazy_list that does not force the tail.
bool is_lazy_list_head(const ConstraintPtr& c);

}  // namespace acmatch
