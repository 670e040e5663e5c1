#include "acmatch/differential.hpp"

#include <array>
#include <sstream>

#include "acmatch/error.hpp"

namespace acmatch {

InstanceSpace::InstanceSpace() {
    signature_.add_ac("+");
    signature_.add_ac("*");
    signature_.add_free("f", 2);
    signature_.add_free("g", 1);
    for (const char* c : {"a", "b", "c", "d"}) {
        signature_.add_free(c, 0);
    }
}

namespace {

const char* kVarPool[] = {"X", "Y", "Z", "W"};

std::size_t symbol_nodes(const TermPtr& t) {
    if (t->is_var()) return 0;
    std::size_t n = 1;
    for (const TermPtr& child : t->args()) n += symbol_nodes(child);
    return n;
}

std::size_t max_ac_arity_of(const TermPtr& t) {
    if (t->is_var()) return 0;
    std::size_t m = t->symbol().is_ac() ? t->args().size() : 0;
    for (const TermPtr& child : t->args()) m = std::max(m, max_ac_arity_of(child));
    return m;
}

// AC-preserving argument shuffle, applied recursively.
TermPtr shuffle_ac_args(const TermPtr& t, std::mt19937_64& rng) {
    if (t->is_var()) return t;
    std::vector<TermPtr> args;
    args.reserve(t->args().size());
    for (const TermPtr& child : t->args()) args.push_back(shuffle_ac_args(child, rng));
    if (t->symbol().is_ac()) {
        std::shuffle(args.begin(), args.end(), rng);
    }
    return Term::app(t->symbol(), std::move(args));
}

}  // namespace

TermPtr InstanceSpace::random_term(std::mt19937_64& rng, const GenLimits& limits,
                                   std::size_t budget, std::size_t depth,
                                   bool allow_vars) const {
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    const std::size_t var_count = std::min(limits.max_vars, std::size_t{4});
    if (allow_vars && var_count > 0 && pick(100) < 30) {
        return Term::var(kVarPool[pick(var_count)]);
    }
    if (budget <= 1 || depth >= 3) {
        return Term::app(signature_.at(std::array{"a", "b", "c", "d"}[pick(4)]), {});
    }
    const std::size_t roll = pick(100);
    if (roll < 40) {  // AC node
        const char* name = limits.max_distinct_ac >= 2 && pick(2) ? "*" : "+";
        const std::size_t arity = 2 + pick(std::max<std::size_t>(limits.max_ac_arity - 1, 1));
        std::vector<TermPtr> args;
        for (std::size_t i = 0; i < arity; ++i) {
            args.push_back(
                random_term(rng, limits, (budget - 1) / 2 + 1, depth + 1, allow_vars));
        }
        return Term::app(signature_.at(name), std::move(args));
    }
    if (roll < 65) {
        std::vector<TermPtr> args;
        for (int i = 0; i < 2; ++i) {
            args.push_back(
                random_term(rng, limits, (budget - 1) / 2 + 1, depth + 1, allow_vars));
        }
        return Term::app(signature_.at("f"), std::move(args));
    }
    if (roll < 75) {
        return Term::app(signature_.at("g"),
                         {random_term(rng, limits, budget - 1, depth + 1, allow_vars)});
    }
    return Term::app(signature_.at(std::array{"a", "b", "c", "d"}[pick(4)]), {});
}

Instance InstanceSpace::sample(std::mt19937_64& rng, const GenLimits& limits) const {
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    TermPtr pattern;
    do {
        pattern = flatten(random_term(rng, limits, limits.max_pattern_symbols, 0, true));
    } while (symbol_nodes(pattern) > limits.max_pattern_symbols ||
             max_ac_arity_of(pattern) > limits.max_ac_arity);

    // Mostly derive the subject by instantiating and scrambling the pattern,
    // so instances have real solution sets; independent subjects cover the
    // failure paths.
    if (pick(10) < 6) {
        for (int attempt = 0; attempt < 8; ++attempt) {
            Substitution inst;
            for (const std::string& var : variables_of(pattern)) {
                inst.try_bind(var, random_term(rng, limits, 1 + pick(3), 1, false));
            }
            TermPtr subject = shuffle_ac_args(subst_apply(inst, pattern), rng);
            if (max_ac_arity_of(subject) <= limits.max_ac_arity &&
                symbol_nodes(subject) <= limits.max_subject_symbols) {
                return Instance{std::move(pattern), flatten(subject)};
            }
        }
    }
    const bool subject_vars = limits.vars_in_subject && pick(10) == 0;
    TermPtr subject;
    do {
        subject = flatten(
            random_term(rng, limits, limits.max_subject_symbols, 0, subject_vars));
    } while (symbol_nodes(subject) > limits.max_subject_symbols ||
             max_ac_arity_of(subject) > limits.max_ac_arity);
    return Instance{std::move(pattern), std::move(subject)};
}

namespace {

std::string describe_sets(const SolutionSet& lazy_set, const SolutionSet& eager_set,
                          const SolutionSet& brute_set) {
    auto dump = [](const SolutionSet& s) {
        std::ostringstream out;
        out << "{";
        for (std::size_t i = 0; i < s.items().size(); ++i) {
            if (i) out << ", ";
            out << s.items()[i].to_string();
        }
        out << "}";
        return out.str();
    };
    std::ostringstream out;
    out << "lazy=" << dump(lazy_set) << " eager=" << dump(eager_set)
        << " brute=" << dump(brute_set);
    return out.str();
}

constexpr std::size_t kDrainGuard = 200'000;

}  // namespace

std::optional<std::string> check_three_way(const Instance& instance,
                                           const NormalizeOptions& opts) {
    SolutionSet brute = brute_force_match(instance.pattern, instance.subject);
    SolutionSet eager = eager_match(instance.pattern, instance.subject);

    SolutionSet lazy_set;
    try {
        SolutionStream stream = match_lazy(instance.pattern, instance.subject, opts);
        std::size_t guard = 0;
        while (!stream.exhausted()) {
            if (++guard > kDrainGuard) {
                return "lazy stream did not exhaust within the drain guard";
            }
            std::optional<Substitution> head = stream.head();
            if (!head) break;
            lazy_set.insert(*head);
            stream.advance();
        }
    } catch (const std::exception& e) {
        return std::string("lazy engine failed: ") + e.what();
    }

    if (lazy_set == eager && eager == brute && lazy_set == brute) {
        return std::nullopt;
    }
    return describe_sets(lazy_set, eager, brute);
}

namespace {

// In-place subtree simplifications used for shrinking, coarse to fine.
std::vector<TermPtr> shrink_candidates(const TermPtr& t) {
    std::vector<TermPtr> out;
    if (t->is_var()) return out;
    // replace the whole node by one of its arguments
    for (const TermPtr& child : t->args()) {
        out.push_back(child);
    }
    // drop one argument of an AC node
    if (t->symbol().is_ac() && t->args().size() > 2) {
        for (std::size_t i = 0; i < t->args().size(); ++i) {
            std::vector<TermPtr> args = t->args();
            args.erase(args.begin() + i);
            out.push_back(Term::app(t->symbol(), std::move(args)));
        }
    }
    // shrink one argument recursively
    for (std::size_t i = 0; i < t->args().size(); ++i) {
        for (const TermPtr& smaller : shrink_candidates(t->args()[i])) {
            std::vector<TermPtr> args = t->args();
            args[i] = smaller;
            out.push_back(Term::app(t->symbol(), std::move(args)));
        }
    }
    return out;
}

}  // namespace

Instance shrink_instance(const Instance& instance, const NormalizeOptions& opts) {
    Instance current = instance;
    bool improved = true;
    while (improved) {
        improved = false;
        for (bool shrink_pattern : {true, false}) {
            const TermPtr& side = shrink_pattern ? current.pattern : current.subject;
            for (const TermPtr& candidate : shrink_candidates(side)) {
                Instance smaller = current;
                (shrink_pattern ? smaller.pattern : smaller.subject) = flatten(candidate);
                if (check_three_way(smaller, opts).has_value()) {
                    current = std::move(smaller);
                    improved = true;
                    break;
                }
            }
            if (improved) break;
        }
    }
    return current;
}

CompareReport run_compare(const InstanceSpace& space, std::uint64_t count, std::uint64_t seed,
                          const GenLimits& limits, const NormalizeOptions& opts,
                          std::size_t max_failures) {
    std::mt19937_64 rng(seed);
    CompareReport report;
    for (std::uint64_t i = 0; i < count; ++i) {
        Instance instance = space.sample(rng, limits);
        ++report.checked;
        std::optional<std::string> detail = check_three_way(instance, opts);
        if (!detail) continue;
        CompareFailure failure;
        failure.index = i;
        failure.instance = instance;
        failure.shrunk = shrink_instance(instance, opts);
        failure.detail = *detail;
        report.failures.push_back(std::move(failure));
        if (report.failures.size() >= max_failures) break;
    }
    return report;
}

}  // namespace acmatch
