#include <doctest.h>

#include "acmatch/error.hpp"
#include "support.hpp"

using namespace acmatch;
using testsupport::Fixture;

TEST_SUITE_BEGIN("terms");

TEST_CASE("signature rejects duplicates and enforces arities") {
    Signature sig;
    sig.add_ac("+");
    sig.add_free("f", 2);
    CHECK_THROWS_AS(sig.add_free("+", 1), DomainError);
    CHECK_THROWS_AS(sig.add_ac("f"), DomainError);
    CHECK_THROWS_AS(Term::app(sig.at("f"), {Term::var("X")}), DomainError);
    CHECK_THROWS_AS(Term::app(sig.at("+"), {Term::var("X")}), DomainError);
    CHECK(sig.find("missing") == nullptr);
    CHECK_THROWS_AS(sig.at("missing"), DomainError);
}

TEST_CASE("flatten merges nested AC applications") {
    Fixture fx;
    // +(a, +(b, c)) -> +(a, b, c)
    TermPtr nested = Term::app(fx.PLUS, {fx.a, Term::app(fx.PLUS, {fx.b, fx.c})});
    CHECK(equal(flatten(nested), fx.plus({fx.a, fx.b, fx.c})));

    // no AC nesting: identity
    TermPtr free_app = fx.f(fx.a, fx.b);
    CHECK(flatten(free_app).get() == free_app.get());

    // +(+(a,b), *(c, *(d,e))) -> +(a, b, *(c, d, e)); hand expansion of the
    // nested argument multisets
    Signature& sig = fx.sig;
    TermPtr e = Term::app(sig.add_free("e", 0), {});
    TermPtr deep = Term::app(
        fx.PLUS, {Term::app(fx.PLUS, {fx.a, fx.b}),
                  Term::app(fx.TIMES, {fx.c, Term::app(fx.TIMES, {fx.d, e})})});
    CHECK(equal(flatten(deep), fx.plus({fx.a, fx.b, fx.times({fx.c, fx.d, e})})));
}

TEST_CASE("flatten is idempotent and establishes flatness") {
    Fixture fx;
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        TermPtr raw = testsupport::random_raw_term(fx, rng, 4, true);
        TermPtr flat = flatten(raw);
        CHECK(is_flat(flat));
        CHECK(equal(flatten(flat), flat));
        CHECK(testsupport::ac_equal_oracle(flat, flat));
    }
}

TEST_CASE("ac_equal on the AC axioms") {
    Fixture fx;
    CHECK(ac_equal(fx.plus({fx.a, fx.b}), fx.plus({fx.b, fx.a})));
    CHECK_FALSE(ac_equal(fx.f(fx.a, fx.b), fx.f(fx.b, fx.a)));
    // +(a, *(b,c)) = +(*(c,b), a), derived via the canonical-form oracle
    TermPtr left = fx.plus({fx.a, fx.times({fx.b, fx.c})});
    TermPtr right = fx.plus({fx.times({fx.c, fx.b}), fx.a});
    CHECK(testsupport::ac_equal_oracle(left, right));
    CHECK(ac_equal(left, right));
}

TEST_CASE("ac_equal agrees with the canonical-form oracle") {
    Fixture fx;
    std::mt19937_64 rng(12);
    for (int i = 0; i < 400; ++i) {
        TermPtr x = flatten(testsupport::random_raw_term(fx, rng, 3, true));
        TermPtr y = flatten(testsupport::random_raw_term(fx, rng, 3, true));
        CHECK(ac_equal(x, y) == testsupport::ac_equal_oracle(x, y));
        CHECK(ac_equal(x, x));
        CHECK(ac_equal(x, y) == ac_equal(y, x));
    }
}

TEST_CASE("ac_equal accepts any reassociation") {
    Fixture fx;
    TermPtr flat = fx.plus({fx.a, fx.b, fx.c, fx.d});
    TermPtr reassoc1 = Term::app(fx.PLUS, {Term::app(fx.PLUS, {fx.a, fx.b}),
                                           Term::app(fx.PLUS, {fx.c, fx.d})});
    TermPtr reassoc2 =
        Term::app(fx.PLUS, {fx.d, Term::app(fx.PLUS, {fx.c, Term::app(fx.PLUS, {fx.b, fx.a})})});
    CHECK(ac_equal(flat, flatten(reassoc1)));
    CHECK(ac_equal(flat, flatten(reassoc2)));
}

TEST_CASE("ac_equal reduces to equality without AC symbols") {
    Fixture fx;
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        // rebuild random terms out of free symbols only
        TermPtr x = fx.f(fx.g(fx.a), i % 2 ? fx.b : fx.c);
        TermPtr y = i % 3 ? fx.f(fx.g(fx.a), fx.b) : fx.f(fx.g(fx.b), fx.b);
        CHECK(ac_equal(x, y) == equal(x, y));
    }
}

TEST_CASE("subst_apply substitutes and re-flattens") {
    Fixture fx;
    Substitution s1;
    s1.bind("X", fx.plus({fx.a, fx.b}));
    CHECK(equal(subst_apply(s1, fx.plus({fx.var("X"), fx.c})), fx.plus({fx.a, fx.b, fx.c})));

    CHECK(equal(subst_apply(Substitution{}, fx.g(fx.a)), fx.g(fx.a)));

    Substitution s2;
    s2.bind("X", fx.a);
    s2.bind("Y", fx.plus({fx.b, fx.c}));
    TermPtr t = fx.f(fx.var("X"), fx.plus({fx.var("Y"), fx.d}));
    CHECK(equal(subst_apply(s2, t), fx.f(fx.a, fx.plus({fx.b, fx.c, fx.d}))));
}

TEST_CASE("subst_apply output is always flat") {
    Fixture fx;
    std::mt19937_64 rng(14);
    for (int i = 0; i < 300; ++i) {
        Substitution s;
        s.try_bind("X", flatten(testsupport::random_raw_term(fx, rng, 2, false)));
        s.try_bind("Y", flatten(testsupport::random_raw_term(fx, rng, 2, false)));
        TermPtr t = flatten(testsupport::random_raw_term(fx, rng, 3, true));
        CHECK(is_flat(subst_apply(s, t)));
    }
}

TEST_CASE("count_ac_symbols counts AC positions") {
    Fixture fx;
    CHECK(count_ac_symbols(fx.a) == 0);
    CHECK(count_ac_symbols(fx.plus({fx.a, fx.b})) == 1);
    TermPtr t = fx.plus({fx.a, fx.times({fx.b, fx.c}), fx.g(fx.times({fx.d, fx.a}))});
    // position enumeration oracle: walk every subterm explicitly
    std::vector<TermPtr> stack{t};
    std::size_t expected = 0;
    while (!stack.empty()) {
        TermPtr cur = stack.back();
        stack.pop_back();
        if (cur->is_app()) {
            if (cur->symbol().is_ac()) ++expected;
            for (const TermPtr& child : cur->args()) stack.push_back(child);
        }
    }
    CHECK(expected == 3);
    CHECK(count_ac_symbols(t) == expected);
}

TEST_CASE("substitutions drop identities and print in binding order") {
    Fixture fx;
    Substitution s;
    s.bind("X", fx.var("X"));  // dropped
    s.bind("Y", fx.plus({fx.b, fx.a}));
    s.bind("Z", fx.a);
    CHECK(s.size() == 2);
    CHECK(s.lookup("X") == nullptr);
    CHECK(s.to_string() == "{Y -> +(b, a), Z -> a}");
    CHECK_THROWS_AS(s.bind("Y", fx.a), ContractViolation);

    Substitution t;
    t.bind("Z", fx.a);
    t.bind("Y", fx.plus({fx.a, fx.b}));
    CHECK(equal_modulo_ac(s, t));
    CHECK(t.try_bind("Y", fx.plus({fx.b, fx.a})));
    CHECK_FALSE(t.try_bind("Z", fx.b));
}

TEST_SUITE_END();
