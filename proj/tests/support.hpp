#pragma once

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "acmatch/constraint.hpp"
#include "acmatch/surjection.hpp"
#include "acmatch/term.hpp"

// Shared fixtures and independent oracles.  Oracles stay deliberately naive:
// enumeration and canonical sorting, nothing from the engines under test.
namespace testsupport {

using namespace acmatch;

struct Fixture {
    Signature sig;
    const Symbol& PLUS;
    const Symbol& TIMES;
    const Symbol& F;
    const Symbol& G;
    TermPtr a, b, c, d;

    Fixture()
        : PLUS(sig.add_ac("+")),
          TIMES(sig.add_ac("*")),
          F(sig.add_free("f", 2)),
          G(sig.add_free("g", 1)),
          a(Term::app(sig.add_free("a", 0), {})),
          b(Term::app(sig.add_free("b", 0), {})),
          c(Term::app(sig.add_free("c", 0), {})),
          d(Term::app(sig.add_free("d", 0), {})) {}

    TermPtr var(const std::string& name) const { return Term::var(name); }
    TermPtr plus(std::vector<TermPtr> args) const { return Term::app(PLUS, std::move(args)); }
    TermPtr times(std::vector<TermPtr> args) const { return Term::app(TIMES, std::move(args)); }
    TermPtr f(TermPtr x, TermPtr y) const {
        return Term::app(F, {std::move(x), std::move(y)});
    }
    TermPtr g(TermPtr x) const { return Term::app(G, {std::move(x)}); }
};

// All surjections [n] -> [k] in lexicographic tuple order, by filtering the
// k^n value tuples.
inline std::vector<std::vector<std::uint32_t>> enumerate_surjections(std::size_t n,
                                                                     std::size_t k) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> tuple(n, 1);
    while (true) {
        std::vector<bool> seen(k, false);
        for (std::uint32_t v : tuple) seen[v - 1] = true;
        bool onto = true;
        for (bool s : seen) onto = onto && s;
        if (onto) out.push_back(tuple);
        std::size_t pos = n;
        while (pos-- > 0) {
            if (++tuple[pos] <= k) break;
            tuple[pos] = 1;
            if (pos == 0) return out;
        }
    }
}

// Total term order: variables before applications, then by name, arity and
// children lexicographically.
inline int term_compare(const TermPtr& x, const TermPtr& y) {
    if (x->is_var() || y->is_var()) {
        if (x->is_var() != y->is_var()) return x->is_var() ? -1 : 1;
        return x->var_name().compare(y->var_name());
    }
    if (int c = x->symbol().name.compare(y->symbol().name); c != 0) return c;
    if (x->args().size() != y->args().size()) {
        return x->args().size() < y->args().size() ? -1 : 1;
    }
    for (std::size_t i = 0; i < x->args().size(); ++i) {
        if (int c = term_compare(x->args()[i], y->args()[i]); c != 0) return c;
    }
    return 0;
}

// Canonical representative of the AC-equivalence class of a flat term:
// arguments of AC applications sorted under the total order, recursively.
inline TermPtr canonical_form(const TermPtr& t) {
    if (t->is_var()) return t;
    std::vector<TermPtr> args;
    args.reserve(t->args().size());
    for (const TermPtr& child : t->args()) args.push_back(canonical_form(child));
    if (t->symbol().is_ac()) {
        std::sort(args.begin(), args.end(),
                  [](const TermPtr& x, const TermPtr& y) { return term_compare(x, y) < 0; });
    }
    return Term::app(t->symbol(), std::move(args));
}

inline bool ac_equal_oracle(const TermPtr& x, const TermPtr& y) {
    return equal(canonical_form(x), canonical_form(y));
}

// Possibly nested raw term, for flatten and substitution properties.
inline TermPtr random_raw_term(const Fixture& fx, std::mt19937_64& rng, std::size_t depth,
                               bool allow_vars) {
    auto pick = [&](std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    };
    static const char* vars[] = {"X", "Y", "Z"};
    if (allow_vars && pick(100) < 25) return fx.var(vars[pick(3)]);
    if (depth == 0 || pick(100) < 30) {
        const TermPtr consts[] = {fx.a, fx.b, fx.c, fx.d};
        return consts[pick(4)];
    }
    switch (pick(4)) {
        case 0:
        case 1: {
            const Symbol& sym = pick(2) ? fx.PLUS : fx.TIMES;
            std::vector<TermPtr> args;
            const std::size_t arity = 2 + pick(2);
            for (std::size_t i = 0; i < arity; ++i) {
                args.push_back(random_raw_term(fx, rng, depth - 1, allow_vars));
            }
            return Term::app(sym, std::move(args));
        }
        case 2:
            return fx.f(random_raw_term(fx, rng, depth - 1, allow_vars),
                        random_raw_term(fx, rng, depth - 1, allow_vars));
        default:
            return fx.g(random_raw_term(fx, rng, depth - 1, allow_vars));
    }
}

// Term for random matching constraints: free nesting is unrestricted but AC
// nodes only take leaf arguments, keeping surjection spaces small enough for
// exhaustive properties.
inline TermPtr random_match_term(const Fixture& fx, std::mt19937_64& rng, std::size_t depth,
                                 bool allow_vars) {
    auto pick = [&](std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    };
    static const char* vars[] = {"X", "Y", "Z"};
    auto leaf = [&]() -> TermPtr {
        if (allow_vars && pick(100) < 35) return fx.var(vars[pick(3)]);
        const TermPtr consts[] = {fx.a, fx.b, fx.c, fx.d};
        return consts[pick(4)];
    };
    if (depth == 0 || pick(100) < 30) return leaf();
    switch (pick(4)) {
        case 0: {
            const Symbol& sym = pick(2) ? fx.PLUS : fx.TIMES;
            std::vector<TermPtr> args;
            for (std::size_t i = 0, n = 2 + pick(3); i < n; ++i) args.push_back(leaf());
            return Term::app(sym, std::move(args));
        }
        case 1:
            return fx.f(random_match_term(fx, rng, depth - 1, allow_vars),
                        random_match_term(fx, rng, depth - 1, allow_vars));
        case 2:
            return fx.g(random_match_term(fx, rng, depth - 1, allow_vars));
        default:
            return leaf();
    }
}

// Small random constraint over the fixture, for confluence and idempotence
// properties.  Triplets are built valid (in-range rank over matching AC
// roots).
inline ConstraintPtr random_constraint(const Fixture& fx, std::mt19937_64& rng,
                                       std::size_t depth) {
    auto pick = [&](std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    };
    auto random_flat = [&](bool vars) {
        return flatten(random_match_term(fx, rng, 2, vars));
    };
    if (depth == 0 || pick(100) < 25) {
        switch (pick(4)) {
            case 0:
                return Constraint::fail();
            case 1:
                return Constraint::id();
            default:
                return Constraint::match(random_flat(true), random_flat(pick(4) == 0));
        }
    }
    switch (pick(5)) {
        case 0: {
            std::vector<ConstraintPtr> children;
            for (std::size_t i = 0, n = 2 + pick(2); i < n; ++i) {
                children.push_back(random_constraint(fx, rng, depth - 1));
            }
            return Constraint::conj(std::move(children));
        }
        case 1: {
            std::vector<ConstraintPtr> children;
            for (std::size_t i = 0, n = 2 + pick(2); i < n; ++i) {
                children.push_back(random_constraint(fx, rng, depth - 1));
            }
            return Constraint::disj(std::move(children));
        }
        case 2:
            return Constraint::next(random_constraint(fx, rng, depth - 1));
        case 3: {
            const std::size_t k = 2 + pick(2);
            const std::size_t n = k + pick(3);
            std::vector<TermPtr> pattern_args;
            std::vector<TermPtr> subject_args;
            for (std::size_t i = 0; i < k; ++i) {
                pattern_args.push_back(pick(2) ? fx.var(std::array{"X", "Y", "Z"}[pick(3)])
                                               : fx.a);
            }
            const TermPtr consts[] = {fx.a, fx.b, fx.c, fx.d};
            for (std::size_t i = 0; i < n; ++i) {
                subject_args.push_back(consts[pick(4)]);
            }
            const std::uint64_t total = surjection_count(n, k).to_u64();
            return Constraint::triplet(
                Term::app(fx.PLUS, std::move(pattern_args)),
                Term::app(fx.PLUS, std::move(subject_args)),
                BigUint{1 + pick(static_cast<std::size_t>(std::min<std::uint64_t>(total, 6)))});
        }
        default:
            return Constraint::match(random_flat(true), random_flat(false));
    }
}

}  // namespace testsupport
