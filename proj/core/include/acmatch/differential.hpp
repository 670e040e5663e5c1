#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "acmatch/eager.hpp"
#include "acmatch/lazy.hpp"
#include "acmatch/term.hpp"

namespace acmatch {

// Random flat matching instances over a fixed fixture signature, plus the
// three-way agreement check (lazy stream vs eager system vs brute force)
// behind the compare command and the oracle-equivalence tests.

struct GenLimits {
    std::size_t max_pattern_symbols = 9;  // application nodes in the pattern
    std::size_t max_subject_symbols = 12;
    std::size_t max_ac_arity = 5;
    std::size_t max_distinct_ac = 2;
    std::size_t max_vars = 4;
    bool vars_in_subject = true;  // rarely, to exercise var-subject clashes
};

struct Instance {
    TermPtr pattern;
    TermPtr subject;
};

// Owns the signature the random instances are built over:
// AC symbols + and *, free f/2, g/1 and constants a..d, variables X Y Z W.
class InstanceSpace {
  public:
    InstanceSpace();
    const Signature& signature() const { return signature_; }

    Instance sample(std::mt19937_64& rng, const GenLimits& limits) const;

  private:
    TermPtr random_term(std::mt19937_64& rng, const GenLimits& limits, std::size_t budget,
                        std::size_t depth, bool allow_vars) const;

    Signature signature_;
};

// Drains the lazy stream (checking the lazy-list shape at every state),
// deduplicates, and compares against eager_match and brute_force_match.
// nullopt on agreement; otherwise a human-readable discrepancy report.
// Engine exceptions (as triggered by injected faults) count as
// disagreements.
std::optional<std::string> check_three_way(const Instance& instance,
                                           const NormalizeOptions& opts);

// Greedy structural shrinking: drop AC arguments or replace subtrees by
// their first argument while the disagreement persists.
Instance shrink_instance(const Instance& instance, const NormalizeOptions& opts);

struct CompareFailure {
    std::uint64_t index = 0;
    Instance instance;
    Instance shrunk;
    std::string detail;
};

struct CompareReport {
    std::uint64_t checked = 0;
    std::vector<CompareFailure> failures;
    bool ok() const { return failures.empty(); }
};

CompareReport run_compare(const InstanceSpace& space, std::uint64_t count, std::uint64_t seed,
                          const GenLimits& limits, const NormalizeOptions& opts,
                          std::size_t max_failures = 5);

}  // namespace acmatch
