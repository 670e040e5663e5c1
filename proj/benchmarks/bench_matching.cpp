#include <benchmark/benchmark.h>

#include "acmatch/eager.hpp"
#include "acmatch/lazy.hpp"
#include "acmatch/strategy.hpp"
#include "acmatch/surjection.hpp"

namespace {

using namespace acmatch;

// X1 + ... + Xk matched against a1 + ... + an over a fresh signature.
struct Problem {
    std::unique_ptr<Signature> sig;
    TermPtr pattern;
    TermPtr subject;

    static Problem make(std::size_t n, std::size_t k) {
        Problem p;
        p.sig = std::make_unique<Signature>();
        const Symbol& plus = p.sig->add_ac("+");
        std::vector<TermPtr> vars;
        std::vector<TermPtr> consts;
        for (std::size_t i = 1; i <= n; ++i) {
            consts.push_back(Term::app(p.sig->add_free("a" + std::to_string(i), 0), {}));
        }
        for (std::size_t i = 1; i <= k; ++i) {
            vars.push_back(Term::var("X" + std::to_string(i)));
        }
        p.pattern = Term::app(plus, vars);
        p.subject = Term::app(plus, consts);
        return p;
    }
};

void BM_FirstSolution(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Problem p = Problem::make(n, n);
    for (auto _ : state) {
        SolutionStream stream = match_lazy(p.pattern, p.subject);
        benchmark::DoNotOptimize(stream.head());
    }
}
BENCHMARK(BM_FirstSolution)->Arg(6)->Arg(10)->Arg(14)->Arg(18);

void BM_Next100Solutions(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Problem p = Problem::make(n, n);
    for (auto _ : state) {
        SolutionStream stream = match_lazy(p.pattern, p.subject);
        for (int i = 0; i < 100 && !stream.exhausted(); ++i) {
            benchmark::DoNotOptimize(stream.head());
            stream.advance();
        }
    }
}
BENCHMARK(BM_Next100Solutions)->Arg(8)->Arg(12)->Arg(18);

void BM_LazyFullDrain(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Problem p = Problem::make(n, n);
    for (auto _ : state) {
        SolutionStream stream = match_lazy(p.pattern, p.subject);
        std::size_t count = 0;
        while (!stream.exhausted()) {
            ++count;
            stream.advance();
        }
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_LazyFullDrain)->Arg(4)->Arg(5)->Arg(6);

void BM_EagerFull(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Problem p = Problem::make(n, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eager_match(p.pattern, p.subject));
    }
}
BENCHMARK(BM_EagerFull)->Arg(4)->Arg(5)->Arg(6);

void BM_Unrank(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const BigUint total = surjection_count(n, n / 2);
    BigUint mid = total;
    mid.divmod_u32(2);
    if (mid.is_zero()) mid = BigUint{1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(unrank(n, n / 2, mid));
    }
}
BENCHMARK(BM_Unrank)->Arg(8)->Arg(12)->Arg(16);

void BM_TopRewriteFirst(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Problem p = Problem::make(n, 2);
    RewriteRule rule = RewriteRule::make(
        p.pattern, Term::app(p.sig->add_free("pair", 2),
                             {Term::var("X1"), Term::var("X2")}));
    for (auto _ : state) {
        NormalizeStats stats;
        TermListPtr result =
            apply_strategy(Strategy::top(rule), TermList::leaf(p.subject), {}, stats);
        TermStream stream(result);
        benchmark::DoNotOptimize(stream.head());
    }
}
BENCHMARK(BM_TopRewriteFirst)->Arg(6)->Arg(10)->Arg(14);

}  // namespace

BENCHMARK_MAIN();
