#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "acmatch/error.hpp"

namespace acmatch::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t micros_between(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration_cast<std::chrono::microseconds>(b - a).count();
}

std::string path_to_string(const std::vector<std::size_t>& path) {
    std::string out = "[";
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += ".";
        out += std::to_string(path[i]);
    }
    return out + "]";
}

void flush_trace(ReductionTrace& trace, std::size_t& cursor, std::ostream& err) {
    for (; cursor < trace.size(); ++cursor) {
        err << "trace: " << trace[cursor].rule << " @ " << path_to_string(trace[cursor].path)
            << "\n";
    }
}

nlohmann::json substitution_json(const Substitution& subst) {
    nlohmann::json obj = nlohmann::json::object();
    for (const auto& [var, value] : subst.items()) {
        obj[var] = to_string(value);
    }
    return obj;
}

struct InterSolutionTimes {
    std::vector<double> deltas_us;

    double mean() const {
        if (deltas_us.empty()) return 0.0;
        double sum = 0;
        for (double d : deltas_us) sum += d;
        return sum / static_cast<double>(deltas_us.size());
    }
    double median() const {
        if (deltas_us.empty()) return 0.0;
        std::vector<double> sorted = deltas_us;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t mid = sorted.size() / 2;
        return sorted.size() % 2 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
    }
    double stddev() const {
        if (deltas_us.size() < 2) return 0.0;
        const double m = mean();
        double acc = 0;
        for (double d : deltas_us) acc += (d - m) * (d - m);
        return std::sqrt(acc / static_cast<double>(deltas_us.size() - 1));
    }
    double cv() const {
        const double m = mean();
        return m == 0.0 ? 0.0 : stddev() / m;
    }
};

}  // namespace

int cmd_match(const SessionConfig& config, const std::string& pattern_text,
              const std::string& subject_text, std::ostream& out, std::ostream& err,
              bool trace) {
    TermPtr pattern;
    TermPtr subject;
    try {
        pattern = parse_term(pattern_text, *config.signature);
        subject = parse_term(subject_text, *config.signature);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    NormalizeOptions opts = config.engine;
    ReductionTrace trace_log;
    std::size_t trace_cursor = 0;
    if (trace) opts.trace = &trace_log;

    std::uint64_t printed = 0;
    std::vector<Substitution> seen;
    const auto start = Clock::now();
    auto previous = start;
    try {
        SolutionStream stream = match_lazy(pattern, subject, opts);
        while (!stream.exhausted()) {
            if (config.limit && printed >= *config.limit) break;
            std::optional<Substitution> solution = stream.head();
            if (!solution) break;
            if (trace) flush_trace(trace_log, trace_cursor, err);
            bool fresh = true;
            if (config.dedup) {
                fresh = std::none_of(seen.begin(), seen.end(), [&](const Substitution& s) {
                    return equal_modulo_ac(s, *solution);
                });
                if (fresh) seen.push_back(*solution);
            }
            if (fresh) {
                const auto now = Clock::now();
                ++printed;
                if (config.format == OutputFormat::Records) {
                    nlohmann::json record{{"index", printed},
                                          {"substitution", substitution_json(*solution)},
                                          {"micros_since_previous", micros_between(previous, now)}};
                    out << record.dump() << "\n";
                } else {
                    out << solution->to_string() << "\n";
                }
                previous = now;
            }
            stream.advance();
        }
        if (trace) flush_trace(trace_log, trace_cursor, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return printed > 0 ? kExitSolutions : kExitNoSolution;
}

int cmd_rewrite(const SessionConfig& config, const std::string& strategy_text,
                const std::string& subject_text, std::ostream& out, std::ostream& err) {
    StrategyPtr strategy;
    TermPtr subject;
    try {
        strategy = parse_strategy(strategy_text, config);
        subject = parse_term(subject_text, *config.signature);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::uint64_t printed = 0;
    auto previous = Clock::now();
    try {
        NormalizeStats stats;
        TermListPtr result =
            apply_strategy(strategy, TermList::leaf(subject), config.engine, stats);
        TermStream stream(result, config.engine);
        while (!config.limit || printed < *config.limit) {
            std::optional<TermPtr> term = stream.head();
            if (!term) break;
            const auto now = Clock::now();
            ++printed;
            if (config.format == OutputFormat::Records) {
                nlohmann::json record{{"index", printed},
                                      {"term", to_string(*term)},
                                      {"micros_since_previous", micros_between(previous, now)}};
                out << record.dump() << "\n";
            } else {
                out << to_string(*term) << "\n";
            }
            previous = now;
            stream.next();
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return printed > 0 ? kExitSolutions : kExitNoSolution;
}

int cmd_compare(const SessionConfig& config, const CompareConfig& compare, std::ostream& out,
                std::ostream& err) {
    InstanceSpace space;
    CompareReport report =
        run_compare(space, compare.count, config.seed, compare.limits, config.engine);
    out << "checked " << report.checked << " instances (seed " << config.seed << "): "
        << report.failures.size() << " disagreements\n";
    for (const CompareFailure& failure : report.failures) {
        err << "disagreement at instance " << failure.index << "\n";
        err << "  pattern: " << to_string(failure.instance.pattern) << "\n";
        err << "  subject: " << to_string(failure.instance.subject) << "\n";
        err << "  shrunk pattern: " << to_string(failure.shrunk.pattern) << "\n";
        err << "  shrunk subject: " << to_string(failure.shrunk.subject) << "\n";
        err << "  " << failure.detail << "\n";
        err << "  reproduce: acmatch compare --seed " << config.seed << " --count "
            << compare.count << "\n";
    }
    return report.ok() ? kExitSolutions : kExitDisagreement;
}

int cmd_bench(const SessionConfig& config, const BenchConfig& bench, std::ostream& out,
              std::ostream& err) {
    if (bench.k < 1 || bench.n < bench.k) {
        err << "error: bench needs n >= k >= 1\n";
        return kExitUsage;
    }
    Signature sig;
    const Symbol* plus = bench.n >= 2 ? &sig.add_ac("+") : nullptr;
    std::vector<TermPtr> constants;
    for (std::size_t i = 1; i <= bench.n; ++i) {
        constants.push_back(Term::app(sig.add_free("a" + std::to_string(i), 0), {}));
    }
    std::vector<TermPtr> vars;
    for (std::size_t i = 1; i <= bench.k; ++i) {
        vars.push_back(Term::var("X" + std::to_string(i)));
    }
    const TermPtr pattern = bench.k >= 2 ? Term::app(*plus, vars) : vars.front();
    const TermPtr subject = bench.n >= 2 ? Term::app(*plus, constants) : constants.front();

    const auto start = Clock::now();
    SolutionStream stream = match_lazy(pattern, subject, config.engine);
    std::uint64_t streamed = 0;
    std::int64_t time_to_first_us = 0;
    InterSolutionTimes inter;
    auto previous = start;
    while (!stream.exhausted()) {
        if (!stream.head()) break;
        const auto now = Clock::now();
        ++streamed;
        if (streamed == 1) {
            time_to_first_us = micros_between(start, now);
        } else {
            inter.deltas_us.push_back(static_cast<double>(micros_between(previous, now)));
        }
        previous = now;
        if (bench.count != 0 && streamed >= bench.count) {
            // don't force a tail nobody will consume; dropping a bare head
            // is free and confirms exhaustion
            if (!stream.current()->is(ConstraintKind::Or)) stream.advance();
            break;
        }
        stream.advance();
    }
    const bool exhausted = stream.exhausted();
    const std::uint64_t ranks = stream.stats().ranks_expanded;

    if (config.format == OutputFormat::Records) {
        nlohmann::json record{{"n", bench.n},
                              {"k", bench.k},
                              {"requested", bench.count},
                              {"solutions", streamed},
                              {"exhausted", exhausted},
                              {"time_to_first_us", time_to_first_us},
                              {"inter_mean_us", inter.mean()},
                              {"inter_median_us", inter.median()},
                              {"inter_std_us", inter.stddev()},
                              {"inter_cv", inter.cv()},
                              {"ranks_expanded", ranks}};
        out << record.dump() << "\n";
        return kExitSolutions;
    }
    out << "pattern X1+...+X" << bench.k << " matched against a1+...+a" << bench.n << "\n";
    out << "solutions streamed: " << streamed << (exhausted ? " (exhausted)" : "") << "\n";
    out << "time to first solution: " << time_to_first_us << " us\n";
    out << "inter-solution time: mean " << inter.mean() << " us, median " << inter.median()
        << " us, std " << inter.stddev() << " us, cv " << inter.cv() << "\n";
    out << "surjection ranks expanded: " << ranks << "\n";
    out << "csv: n,k,requested,solutions,exhausted,time_to_first_us,inter_mean_us,"
           "inter_median_us,inter_std_us,inter_cv,ranks_expanded\n";
    std::ostringstream csv;
    csv << bench.n << ',' << bench.k << ',' << bench.count << ',' << streamed << ','
        << (exhausted ? 1 : 0) << ',' << time_to_first_us << ',' << inter.mean() << ','
        << inter.median() << ',' << inter.stddev() << ',' << inter.cv() << ',' << ranks;
    out << "csv: " << csv.str() << "\n";
    return kExitSolutions;
}

}  // namespace acmatch::cli
