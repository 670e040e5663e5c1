#pragma once

#include <memory>
#include <optional>

#include "acmatch/lazy.hpp"
#include "acmatch/reduction.hpp"
#include "acmatch/term.hpp"

namespace acmatch {

class TermList;
using TermListPtr = std::shared_ptr<const TermList>;

enum class TermListKind {
    Empty,    // the empty list, neutral for concatenation
    Concat,   // flattened sequence of >= 2 non-empty parts
    Leaf,     // a single term
    Pending,  // a lazy list of constraints applied to a term, not yet forced
};

// Lazy list of terms.  Pending nodes carry a constraint in lazy-list normal
// form together with the term it will be applied to; forcing them costs one
// tail normalization each.
class TermList {
  public:
    static TermListPtr empty();
    static TermListPtr leaf(TermPtr term);
    static TermListPtr pending(ConstraintPtr constraint, TermPtr target);
    static TermListPtr concat(std::vector<TermListPtr> parts);

    TermListKind kind() const { return kind_; }
    bool is(TermListKind k) const { return kind_ == k; }

    const TermPtr& term() const { return term_; }              // Leaf
    const ConstraintPtr& constraint() const { return constraint_; }  // Pending
    const TermPtr& target() const { return term_; }            // Pending
    const std::vector<TermListPtr>& parts() const { return parts_; }  // Concat

  private:
    explicit TermList(TermListKind kind) : kind_(kind) {}

    TermListKind kind_;
    TermPtr term_;
    ConstraintPtr constraint_;
    std::vector<TermListPtr> parts_;
};

bool equal(const TermListPtr& a, const TermListPtr& b);
std::string to_string(const TermListPtr& l);

// Fail(t) is empty, Id(t) is t, a substitution head applies to t, and a
// disjunction yields its applied head followed by the suspended tail.
// ContractViolation unless c has a lazy-list head shape.
TermListPtr apply_constraint_to_term(const ConstraintPtr& c, const TermPtr& t,
                                     const NormalizeOptions& opts, NormalizeStats& stats);

// One step of the leftmost pending computation (the Next rules for term
// lists); leaves and the empty list are fixed points.
TermListPtr force_next_termlist(const TermListPtr& l, const NormalizeOptions& opts,
                                NormalizeStats& stats);

// Rewrite rule l -> r with Var(r) included in Var(l); both sides flat.
struct RewriteRule {
    TermPtr lhs;
    TermPtr rhs;
    static RewriteRule make(TermPtr lhs, TermPtr rhs);  // DomainError on violations
};

enum class TraversalKind {
    LeftmostOutermost,
    LeftmostInnermost,
    ParallelOutermost,
    ParallelInnermost,
};

class Strategy;
using StrategyPtr = std::shared_ptr<const Strategy>;

enum class StrategyKind { Id, Fail, Top, Seq, Traverse };

class Strategy {
  public:
    static StrategyPtr id();
    static StrategyPtr fail();
    static StrategyPtr top(RewriteRule rule);
    // [outer; inner]: inner applies first.
    static StrategyPtr seq(StrategyPtr outer, StrategyPtr inner);
    static StrategyPtr traverse(TraversalKind kind, RewriteRule rule);

    StrategyKind kind() const { return kind_; }
    const RewriteRule& rule() const { return rule_; }
    TraversalKind traversal() const { return traversal_; }
    const StrategyPtr& outer() const { return outer_; }
    const StrategyPtr& inner() const { return inner_; }

  private:
    explicit Strategy(StrategyKind kind) : kind_(kind) {}

    StrategyKind kind_;
    RewriteRule rule_{};
    TraversalKind traversal_ = TraversalKind::ParallelOutermost;
    StrategyPtr outer_;
    StrategyPtr inner_;
};

// Applies the strategy over the spine of the list.  Pending elements other
// than the ones a consumer forces are transformed by forcing them as they
// are reached, so composed strategies stay correct on finite lists at the
// cost of some laziness; a plain top-rule or traversal application of a
// single term keeps its tail suspended.
TermListPtr apply_strategy(const StrategyPtr& strategy, const TermListPtr& input,
                           const NormalizeOptions& opts, NormalizeStats& stats);

// Traversal of a single term.  Parallel-outermost follows the published
// rule: root application wins when it has at least one solution (or the
// term is a variable); otherwise every child position is rewritten and the
// decorated product is lifted, so one empty child empties the whole result.
TermListPtr apply_traversal(TraversalKind kind, const RewriteRule& rule, const TermPtr& t,
                            const NormalizeOptions& opts, NormalizeStats& stats);

using Position = std::vector<std::size_t>;

// Term with pairwise incomparable positions replaced by lazy term lists.
struct DecoratedTerm {
    TermPtr base;
    std::vector<Position> positions;
    std::vector<TermListPtr> lists;

    // Validates sizes, position existence and incomparability.
    static DecoratedTerm make(TermPtr base, std::vector<Position> positions,
                              std::vector<TermListPtr> lists);
};

// Enumerates the product of the decorated lists in lexicographic index
// order (rightmost position fastest) and substitutes each tuple into the
// base term.  Zero positions yield the base term itself; any empty list
// empties the product.
TermListPtr lift_decorated(const DecoratedTerm& d, const NormalizeOptions& opts,
                           NormalizeStats& stats);

// Stream facade over the Next rules for term lists.
class TermStream {
  public:
    explicit TermStream(TermListPtr list, NormalizeOptions opts = {});

    // Forces pendings until the first term is concrete; nullopt when empty.
    std::optional<TermPtr> head();
    // Drops the head; ContractViolation when exhausted.
    void next();
    bool done();

    const NormalizeStats& stats() const { return stats_; }

  private:
    TermListPtr list_;
    NormalizeOptions opts_;
    NormalizeStats stats_;
};

// Convenience: force up to `limit` terms out of the list.
std::vector<TermPtr> drain_termlist(const TermListPtr& l, const NormalizeOptions& opts = {},
                                    std::size_t limit = static_cast<std::size_t>(-1));

}  // namespace acmatch
