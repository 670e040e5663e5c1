#include "acmatch/eager.hpp"

#include "acmatch/error.hpp"
#include "acmatch/surjection.hpp"

namespace acmatch {

bool SolutionSet::insert(Substitution s) {
    if (contains(s)) return false;
    items_.push_back(std::move(s));
    return true;
}

bool SolutionSet::contains(const Substitution& s) const {
    for (const Substitution& member : items_) {
        if (equal_modulo_ac(member, s)) return true;
    }
    return false;
}

bool operator==(const SolutionSet& a, const SolutionSet& b) {
    if (a.size() != b.size()) return false;
    for (const Substitution& s : a.items_) {
        if (!b.contains(s)) return false;
    }
    return true;
}

namespace {

// A candidate solution while rules still run: bindings in first-occurrence
// order, identity bindings x -> x included so that a later x -> t clashes
// with them exactly as fail_gen prescribes.
struct Candidate {
    std::vector<std::pair<std::string, TermPtr>> entries;

    const TermPtr* lookup(const std::string& var) const {
        for (const auto& [name, value] : entries) {
            if (name == var) return &value;
        }
        return nullptr;
    }

    bool bind(const std::string& var, const TermPtr& value) {
        if (const TermPtr* existing = lookup(var)) {
            return ac_equal(*existing, value);
        }
        entries.emplace_back(var, value);
        return true;
    }

    Substitution to_substitution() const {
        Substitution result;
        for (const auto& [name, value] : entries) {
            result.try_bind(name, value);  // drops x -> x
        }
        return result;
    }
};

// --- eager system ---------------------------------------------------------

std::vector<Candidate> eager_solve(const TermPtr& pattern, const TermPtr& subject);

// Conjunction: DNF product of the disjunct lists, dropping clashing
// combinations (F is neutral for the disjunction here).
std::vector<Candidate> eager_product(std::vector<Candidate> acc,
                                     const std::vector<Candidate>& parts) {
    std::vector<Candidate> merged;
    for (const Candidate& left : acc) {
        for (const Candidate& right : parts) {
            Candidate combined = left;
            bool ok = true;
            for (const auto& [var, value] : right.entries) {
                if (!combined.bind(var, value)) {
                    ok = false;
                    break;
                }
            }
            if (ok) merged.push_back(std::move(combined));
        }
    }
    return merged;
}

std::vector<Candidate> eager_solve(const TermPtr& pattern, const TermPtr& subject) {
    if (pattern->is_var()) {
        Candidate c;
        c.bind(pattern->var_name(), subject);
        return {std::move(c)};
    }
    if (subject->is_var()) {
        return {};  // E_var_clash
    }
    if (&pattern->symbol() != &subject->symbol()) {
        return {};  // E_match_fail
    }
    if (!pattern->symbol().is_ac()) {
        std::vector<Candidate> acc{Candidate{}};
        for (std::size_t i = 0; i < pattern->args().size() && !acc.empty(); ++i) {
            acc = eager_product(std::move(acc),
                                eager_solve(pattern->args()[i], subject->args()[i]));
        }
        return acc;
    }
    const std::size_t k = pattern->args().size();
    const std::size_t n = subject->args().size();
    if (k > n) {
        return {};  // E_match_AC_fail
    }
    // E_match_AC: one disjunct bundle per surjection rank
    std::vector<Candidate> all;
    const BigUint total = surjection_count(n, k);
    for (BigUint j{1}; j <= total; j += BigUint{1}) {
        std::vector<TermPtr> groups = apply_surjection(unrank(n, k, j), subject);
        std::vector<Candidate> acc{Candidate{}};
        for (std::size_t i = 0; i < k && !acc.empty(); ++i) {
            acc = eager_product(std::move(acc), eager_solve(pattern->args()[i], groups[i]));
        }
        all.insert(all.end(), acc.begin(), acc.end());
    }
    return all;
}

// --- brute force (surjection enumeration, no constraint algebra) ----------

void brute_force(const TermPtr& pattern, const TermPtr& subject, const Candidate& partial,
                 std::vector<Candidate>& out) {
    if (pattern->is_var()) {
        Candidate extended = partial;
        if (extended.bind(pattern->var_name(), subject)) {
            out.push_back(std::move(extended));
        }
        return;
    }
    if (subject->is_var() || &pattern->symbol() != &subject->symbol()) {
        return;
    }
    if (!pattern->symbol().is_ac()) {
        std::vector<Candidate> acc{partial};
        for (std::size_t i = 0; i < pattern->args().size() && !acc.empty(); ++i) {
            std::vector<Candidate> next;
            for (const Candidate& c : acc) {
                brute_force(pattern->args()[i], subject->args()[i], c, next);
            }
            acc = std::move(next);
        }
        out.insert(out.end(), acc.begin(), acc.end());
        return;
    }
    const std::size_t k = pattern->args().size();
    const std::size_t n = subject->args().size();
    if (k > n) return;
    const BigUint total = surjection_count(n, k);
    for (BigUint j{1}; j <= total; j += BigUint{1}) {
        std::vector<TermPtr> groups = apply_surjection(unrank(n, k, j), subject);
        std::vector<Candidate> acc{partial};
        for (std::size_t i = 0; i < k && !acc.empty(); ++i) {
            std::vector<Candidate> next;
            for (const Candidate& c : acc) {
                brute_force(pattern->args()[i], groups[i], c, next);
            }
            acc = std::move(next);
        }
        out.insert(out.end(), acc.begin(), acc.end());
    }
}

void check_flat_inputs(const TermPtr& pattern, const TermPtr& subject, const char* who) {
    if (!is_flat(pattern) || !is_flat(subject)) {
        throw ContractViolation(std::string(who) + ": inputs must be flat");
    }
}

}  // namespace

SolutionSet eager_match(const TermPtr& pattern, const TermPtr& subject) {
    check_flat_inputs(pattern, subject, "eager_match");
    SolutionSet result;
    for (const Candidate& c : eager_solve(pattern, subject)) {
        result.insert(c.to_substitution());
    }
    return result;
}

SolutionSet brute_force_match(const TermPtr& pattern, const TermPtr& subject) {
    check_flat_inputs(pattern, subject, "brute_force_match");
    std::vector<Candidate> candidates;
    brute_force(pattern, subject, Candidate{}, candidates);
    SolutionSet result;
    for (const Candidate& c : candidates) {
        result.insert(c.to_substitution());
    }
    return result;
}

}  // namespace acmatch
