#pragma once

#include <vector>

#include "acmatch/term.hpp"

namespace acmatch {

// Set of substitutions: no two members are equal as maps with AC-equal
// images.  The empty set encodes a failed matching problem; the set holding
// one empty substitution encodes a trivially solved one.
class SolutionSet {
  public:
    bool insert(Substitution s);  // false if an AC-equal member already exists
    bool contains(const Substitution& s) const;

    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }
    const std::vector<Substitution>& items() const { return items_; }

    friend bool operator==(const SolutionSet& a, const SolutionSet& b);
    friend bool operator!=(const SolutionSet& a, const SolutionSet& b) { return !(a == b); }

  private:
    std::vector<Substitution> items_;
};

// All solutions at once, closely following the eager rule system: AC nodes
// expand every surjection up front, free nodes decompose positionally,
// conflicting variable bindings (modulo AC) kill a disjunct, and the
// post-processing turns surviving disjuncts into deduplicated
// substitutions.  Exponential on purpose; correctness reference only.
SolutionSet eager_match(const TermPtr& pattern, const TermPtr& subject);

// Ground-truth oracle, independent of the constraint machinery: a plain
// recursive enumerator that threads partial bindings through subterm pairs
// and iterates surjections at AC nodes.
SolutionSet brute_force_match(const TermPtr& pattern, const TermPtr& subject);

}  // namespace acmatch
