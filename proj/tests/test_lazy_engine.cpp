#include <doctest.h>

#include "acmatch/differential.hpp"
#include "acmatch/eager.hpp"
#include "acmatch/error.hpp"
#include "acmatch/lazy.hpp"
#include "acmatch/rewrite_step.hpp"
#include "support.hpp"

using namespace acmatch;
using testsupport::Fixture;

namespace {

ConstraintPtr vm(const char* var, const TermPtr& t) {
    return Constraint::match(Term::var(var), t);
}

ConstraintPtr nf12_of(const ConstraintPtr& c) {
    NormalizeStats stats;
    return normalize_R12(c, {}, stats);
}

ConstraintPtr nf_of(const ConstraintPtr& c) {
    NormalizeStats stats;
    return lazy_normal_form(c, {}, stats);
}

std::vector<Substitution> drain(SolutionStream stream, std::size_t limit = 100000) {
    std::vector<Substitution> out;
    while (!stream.exhausted() && out.size() < limit) {
        out.push_back(*stream.head());
        stream.advance();
    }
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("lazy");

TEST_CASE("normalize_R12 on the matching rules") {
    Fixture fx;
    // arity excess fails
    CHECK(nf12_of(Constraint::match(fx.plus({fx.var("X1"), fx.var("X2"), fx.var("X3")}),
                                    fx.plus({fx.a, fx.b})))
              ->is(ConstraintKind::Fail));
    // distinct free roots fail
    CHECK(nf12_of(Constraint::match(fx.f(fx.var("X"), fx.a), fx.g(fx.a)))
              ->is(ConstraintKind::Fail));
    CHECK(nf12_of(Constraint::match(fx.g(fx.var("X")), fx.var("Y")))
              ->is(ConstraintKind::Fail));  // var_clash

    // +(x,y) << +(a,b) expands the first surjection and suspends the second
    TermPtr pat = fx.plus({fx.var("X"), fx.var("Y")});
    TermPtr sub = fx.plus({fx.a, fx.b});
    ConstraintPtr expected = Constraint::disj(
        {Constraint::conj({vm("X", fx.a), vm("Y", fx.b)}),
         Constraint::triplet(pat, sub, BigUint{2})});
    CHECK(equal(nf12_of(Constraint::match(pat, sub)), expected));
}

TEST_CASE("normalize_R3_down expands head-first") {
    Fixture fx;
    ConstraintPtr A = vm("X", fx.a);
    ConstraintPtr B = vm("Y", fx.b);
    ConstraintPtr C = vm("Z", fx.c);
    ConstraintPtr D = vm("W", fx.d);
    NormalizeStats stats;

    // (A v B) ^ C -> (A ^ C) v (B ^ C)
    ConstraintPtr lhs = Constraint::conj({Constraint::disj({A, B}), C});
    ConstraintPtr rhs = Constraint::disj(
        {Constraint::conj({A, C}), Constraint::conj({B, C})});
    CHECK(equal(normalize_R3_down(lhs, {}, stats), rhs));

    // already in DNF: unchanged
    ConstraintPtr plain = Constraint::conj({A, B});
    CHECK(equal(normalize_R3_down(plain, {}, stats), plain));

    // (A1 v A2) ^ (B1 v B2): disjunct order follows the head-first strategy
    ConstraintPtr both =
        Constraint::conj({Constraint::disj({A, B}), Constraint::disj({C, D})});
    ConstraintPtr expanded = Constraint::disj(
        {Constraint::conj({A, C}), Constraint::conj({A, D}), Constraint::conj({B, C}),
         Constraint::conj({B, D})});
    CHECK(equal(normalize_R3_down(both, {}, stats), expanded));
}

TEST_CASE("lazy_normal_form on the basic problems") {
    Fixture fx;
    CHECK(nf_of(Constraint::match(fx.a, fx.a))->is(ConstraintKind::Id));
    // both surjections clash on x, fail_next exhausts the triplet
    CHECK(nf_of(Constraint::match(fx.plus({fx.var("X"), fx.var("X")}), fx.plus({fx.a, fx.b})))
              ->is(ConstraintKind::Fail));
}

TEST_CASE("nested AC problem forces to the known two solutions") {
    Fixture fx;
    TermPtr pattern = fx.f(fx.var("X"), fx.plus({fx.var("Y"), fx.var("Z")}));
    TermPtr subject = fx.f(fx.a, fx.plus({fx.b, fx.c}));
    SolutionStream stream = match_lazy(pattern, subject);

    Substitution first = *stream.head();
    CHECK(equal(*first.lookup("X"), fx.a));
    CHECK(equal(*first.lookup("Y"), fx.b));
    CHECK(equal(*first.lookup("Z"), fx.c));

    stream.advance();
    Substitution second = *stream.head();
    CHECK(equal(*second.lookup("X"), fx.a));
    CHECK(equal(*second.lookup("Y"), fx.c));
    CHECK(equal(*second.lookup("Z"), fx.b));

    stream.advance();
    CHECK(stream.exhausted());
    CHECK_THROWS_AS(stream.advance(), ContractViolation);
}

TEST_CASE("match_lazy streams") {
    Fixture fx;
    // variable pattern binds the whole subject
    SolutionStream whole = match_lazy(fx.var("X"), fx.plus({fx.a, fx.b}));
    CHECK(equal(*whole.head()->lookup("X"), fx.plus({fx.a, fx.b})));
    whole.advance();
    CHECK(whole.exhausted());

    // two solutions in surjection order
    auto sols = drain(match_lazy(fx.plus({fx.var("X"), fx.var("Y")}), fx.plus({fx.a, fx.b})));
    REQUIRE(sols.size() == 2);
    CHECK(equal(*sols[0].lookup("X"), fx.a));
    CHECK(equal(*sols[0].lookup("Y"), fx.b));
    CHECK(equal(*sols[1].lookup("X"), fx.b));
    CHECK(equal(*sols[1].lookup("Y"), fx.a));

    // first solution groups the first two arguments; six in total
    SolutionStream six =
        match_lazy(fx.plus({fx.var("X"), fx.var("Y")}), fx.plus({fx.a, fx.b, fx.c}));
    CHECK(equal(*six.head()->lookup("X"), fx.plus({fx.a, fx.b})));
    CHECK(equal(*six.head()->lookup("Y"), fx.c));
    CHECK(drain(std::move(six)).size() == 6);

    // ground identity: one empty substitution
    SolutionStream ground = match_lazy(fx.a, fx.a);
    CHECK(ground.head()->empty());
    ground.advance();
    CHECK(ground.exhausted());
    CHECK(ground.head() == std::nullopt);
}

TEST_CASE("non-linear patterns emit duplicates per surjection") {
    Fixture fx;
    TermPtr pattern = fx.plus({fx.var("X"), fx.var("X")});
    TermPtr subject = fx.plus({fx.a, fx.a, fx.b, fx.b});
    auto sols = drain(match_lazy(pattern, subject));
    // four of the |S_{4,2}| = 14 surjections split {a,a,b,b} into two
    // AC-equal halves; each emits the same substitution
    CHECK(sols.size() == 4);
    for (const Substitution& s : sols) {
        CHECK(ac_equal(*s.lookup("X"), fx.plus({fx.a, fx.b})));
    }
    SolutionSet dedup;
    for (const Substitution& s : sols) dedup.insert(s);
    CHECK(dedup.size() == 1);
}

TEST_CASE("signature and flatness preconditions") {
    Fixture fx;
    Signature other;
    const Symbol& oplus = other.add_ac("+");
    TermPtr foreign = Term::app(oplus, {Term::var("X"), Term::var("Y")});
    CHECK_THROWS_AS(match_lazy(foreign, fx.plus({fx.a, fx.b})), DomainError);
    TermPtr nested = Term::app(fx.PLUS, {fx.a, Term::app(fx.PLUS, {fx.b, fx.c})});
    CHECK_THROWS_AS(match_lazy(fx.var("X"), nested), ContractViolation);
}

TEST_CASE("soundness: every emitted substitution solves the problem") {
    InstanceSpace space;
    GenLimits limits;
    std::mt19937_64 rng(31);
    for (int i = 0; i < 120; ++i) {
        Instance inst = space.sample(rng, limits);
        for (const Substitution& s : drain(match_lazy(inst.pattern, inst.subject))) {
            CHECK(ac_equal(subst_apply(s, inst.pattern), inst.subject));
        }
    }
}

TEST_CASE("agreement with the eager engine and the brute-force oracle") {
    InstanceSpace space;
    GenLimits limits;
    std::mt19937_64 rng(32);
    for (int i = 0; i < 150; ++i) {
        Instance inst = space.sample(rng, limits);
        CAPTURE(to_string(inst.pattern));
        CAPTURE(to_string(inst.subject));
        CHECK(check_three_way(inst, {}) == std::nullopt);
    }
}

TEST_CASE("every stream state is a lazy list") {
    InstanceSpace space;
    GenLimits limits;
    std::mt19937_64 rng(33);
    NormalFormFn nf = normal_form_fn();
    for (int i = 0; i < 40; ++i) {
        Instance inst = space.sample(rng, limits);
        SolutionStream stream = match_lazy(inst.pattern, inst.subject);
        std::size_t guard = 0;
        while (true) {
            CHECK(is_lazy_list(stream.current(), nf));
            if (stream.exhausted() || ++guard > 3000) break;
            stream.advance();
        }
    }
}

TEST_CASE("laziness: one surjection rank per solution") {
    Fixture fx;
    std::vector<TermPtr> vars;
    std::vector<TermPtr> consts;
    Signature sig;
    const Symbol& plus = sig.add_ac("+");
    for (int i = 1; i <= 6; ++i) {
        vars.push_back(Term::var("X" + std::to_string(i)));
        consts.push_back(Term::app(sig.add_free("a" + std::to_string(i), 0), {}));
    }
    SolutionStream stream = match_lazy(Term::app(plus, vars), Term::app(plus, consts));
    for (std::uint64_t m = 1; m <= 10; ++m) {
        CHECK(stream.head().has_value());
        CHECK(stream.stats().ranks_expanded == m);
        stream.advance();
    }
}

TEST_CASE("trailing failures stay in normal forms") {
    Fixture fx;
    // F is not a neutral element for the disjunction: a failure in head
    // position activates the tail, a trailing failure just stays
    ConstraintPtr trailing = Constraint::disj({vm("X", fx.a), Constraint::fail()});
    CHECK(equal(nf_of(trailing), trailing));
    CHECK(is_lazy_list(trailing, normal_form_fn()));
    CHECK(is_lazy_list_head(trailing));

    ConstraintPtr leading = Constraint::disj({Constraint::fail(), vm("X", fx.a)});
    CHECK(equal(nf_of(leading), vm("X", fx.a)));
}

TEST_CASE("saturation iterates until new clashes are resolved") {
    Fixture fx;
    // the DNF expansion merges X << a with X << b, fail_gen kills the head,
    // fail_next wakes the remaining surjection, which succeeds
    TermPtr pattern = fx.f(fx.plus({fx.var("X"), fx.var("Y")}), fx.var("X"));
    TermPtr subject = fx.f(fx.plus({fx.a, fx.b}), fx.b);
    NormalizeStats stats;
    ConstraintPtr nf = lazy_normal_form(Constraint::match(pattern, subject), {}, stats);
    CHECK(stats.sat_iterations >= 2);
    Substitution expected;
    expected.bind("X", fx.b);
    expected.bind("Y", fx.a);
    CHECK(equal_modulo_ac(extract_substitution(nf), expected));

    SolutionStream stream = match_lazy(pattern, subject);
    CHECK(equal_modulo_ac(*stream.head(), expected));
    stream.advance();
    CHECK(stream.exhausted());
}

TEST_CASE("lazy_normal_form is idempotent") {
    Fixture fx;
    std::mt19937_64 rng(37);
    for (int i = 0; i < 80; ++i) {
        ConstraintPtr nf = nf_of(testsupport::random_constraint(fx, rng, 3));
        CHECK(equal(nf_of(nf), nf));
    }
}

TEST_CASE("fast normalizer agrees with the step engine") {
    Fixture fx;
    std::mt19937_64 rng(34);
    for (int i = 0; i < 120; ++i) {
        ConstraintPtr c = testsupport::random_constraint(fx, rng, 3);
        NormalizeStats fast_stats;
        NormalizeStats step_stats;
        ConstraintPtr fast_nf = lazy_normal_form(c, {}, fast_stats);
        ConstraintPtr step_nf = lazy_normal_form_steps(c, {}, step_stats);
        CAPTURE(to_string(c));
        CHECK(equal(fast_nf, step_nf));
    }
}

TEST_CASE("R1 u R2 is confluent under random reduction orders") {
    Fixture fx;
    std::mt19937_64 rng(35);
    for (int i = 0; i < 12; ++i) {
        ConstraintPtr c = testsupport::random_constraint(fx, rng, 3);
        NormalizeStats stats;
        ConstraintPtr reference = normalize_r12_steps(c, {}, stats);
        for (int order = 0; order < 15; ++order) {
            NormalizeStats s2;
            RedexPicker random_pick = [&rng](const std::vector<Redex>& rs) {
                return std::uniform_int_distribution<std::size_t>(0, rs.size() - 1)(rng);
            };
            CHECK(equal(normalize_r12_steps(c, {}, s2, random_pick), reference));
        }
    }
}

TEST_CASE("next_or critical pair converges with the side condition") {
    Fixture fx;
    // Next(F v C) must reduce like Next(C)
    ConstraintPtr c = Constraint::triplet(fx.plus({fx.var("X"), fx.var("Y")}),
                                          fx.plus({fx.a, fx.b, fx.c}), BigUint{2});
    ConstraintPtr left = nf_of(Constraint::next(Constraint::disj({Constraint::fail(), c})));
    ConstraintPtr right = nf_of(Constraint::next(c));
    CHECK(equal(left, right));
}

TEST_CASE("trace replay reproduces every normal form") {
    Fixture fx;
    std::mt19937_64 rng(36);
    for (int i = 0; i < 60; ++i) {
        ConstraintPtr c = testsupport::random_constraint(fx, rng, 3);
        ReductionTrace trace;
        NormalizeOptions opts;
        opts.trace = &trace;
        NormalizeStats stats;
        ConstraintPtr nf = lazy_normal_form(c, opts, stats);
        CHECK(equal(replay_trace(c, trace), nf));
        CHECK(trace.size() == stats.rule_applications);
    }
    // the traced engine and the fast engine reach the same normal form
    ReductionTrace trace;
    NormalizeOptions traced;
    traced.trace = &trace;
    NormalizeStats s1, s2;
    TermPtr pattern = fx.f(fx.var("X"), fx.plus({fx.var("Y"), fx.var("Z")}));
    TermPtr subject = fx.f(fx.a, fx.plus({fx.b, fx.c}));
    ConstraintPtr problem = Constraint::match(pattern, subject);
    CHECK(equal(lazy_normal_form(problem, traced, s1), lazy_normal_form(problem, {}, s2)));
    CHECK(!trace.empty());
}

TEST_CASE("step budget exhaustion is reported") {
    Fixture fx;
    NormalizeOptions opts;
    opts.step_budget = 1;
    NormalizeStats stats;
    TermPtr pattern = fx.plus({fx.var("X"), fx.var("Y"), fx.var("Z")});
    TermPtr subject = fx.plus({fx.a, fx.b, fx.c, fx.d});
    CHECK_THROWS_AS(lazy_normal_form(Constraint::match(pattern, subject), opts, stats),
                    StepBudgetExceeded);
    // a normalization that stays within the budget is unaffected
    NormalizeOptions enough;
    enough.step_budget = 2;
    NormalizeStats s2;
    CHECK_NOTHROW(lazy_normal_form(Constraint::match(pattern, subject), enough, s2));
}

TEST_CASE("seeded next_or fault is observable") {
    Fixture fx;
    TermPtr pattern = fx.f(fx.plus({fx.var("X"), fx.var("Y")}),
                           fx.times({fx.var("Z"), fx.var("W")}));
    TermPtr subject = fx.f(fx.plus({fx.a, fx.b}), fx.times({fx.c, fx.d}));
    NormalizeOptions faulty;
    faulty.fault = InjectedFault::NextOrFlip;

    CHECK(drain(match_lazy(pattern, subject)).size() == 4);
    SolutionStream broken = match_lazy(pattern, subject, faulty);
    CHECK(broken.head().has_value());
    broken.advance();
    CHECK_THROWS_AS(broken.head(), ContractViolation);

    CHECK(check_three_way(Instance{pattern, subject}, faulty).has_value());
    CHECK(check_three_way(Instance{pattern, subject}, {}) == std::nullopt);
}

TEST_SUITE_END();
