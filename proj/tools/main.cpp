#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace acmatch;
using namespace acmatch::cli;

struct CommonFlags {
    std::string ac_spec;
    std::string free_spec;
    std::string rules_path;
    std::uint64_t budget = NormalizeOptions{}.step_budget;
    std::uint64_t limit = 0;
    bool dedup = false;
    std::string format = "text";
    std::uint64_t seed = 1;
    std::string inject_fault;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--ac", flags.ac_spec, "AC symbols, e.g. \"+,*\" (optional /2 suffix)");
    cmd->add_option("--free", flags.free_spec, "free symbols with arity, e.g. \"f/2,g/1,a/0\"");
    cmd->add_option("--budget", flags.budget, "rule applications allowed per normalization");
    cmd->add_option("--limit", flags.limit, "stop after this many results (0: no limit)");
    cmd->add_flag("--dedup", flags.dedup, "suppress AC-equal duplicate solutions");
    cmd->add_option("--format", flags.format, "text | records")
        ->check(CLI::IsMember({"text", "records"}));
    cmd->add_option("--seed", flags.seed, "random seed (compare)");
    cmd->add_option("--inject-fault", flags.inject_fault, "seeded engine fault (testing)")
        ->check(CLI::IsMember({"next-or-flip"}))
        ->group("");
}

int build_config(const CommonFlags& flags, SessionConfig& config, std::ostream& err) {
    try {
        if (!flags.ac_spec.empty()) declare_ac_symbols(*config.signature, flags.ac_spec);
        if (!flags.free_spec.empty()) declare_free_symbols(*config.signature, flags.free_spec);
        if (!flags.rules_path.empty()) {
            std::ifstream in(flags.rules_path);
            if (!in) {
                err << "error: cannot open rules file '" << flags.rules_path << "'\n";
                return kExitUsage;
            }
            std::ostringstream text;
            text << in.rdbuf();
            config.rules = parse_rules(text.str(), *config.signature);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    config.engine.step_budget = flags.budget;
    if (flags.inject_fault == "next-or-flip") {
        config.engine.fault = InjectedFault::NextOrFlip;
    }
    if (flags.limit > 0) config.limit = flags.limit;
    config.dedup = flags.dedup;
    config.format = flags.format == "records" ? OutputFormat::Records : OutputFormat::Text;
    config.seed = flags.seed;
    return kExitSolutions;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lazy AC-matching and AC-rewriting"};
    app.require_subcommand(1);

    CommonFlags match_flags;
    bool match_trace = false;
    std::string pattern_text;
    std::string subject_text;
    CLI::App* match = app.add_subcommand("match", "enumerate matching substitutions on demand");
    match->add_option("pattern", pattern_text, "pattern term")->required();
    match->add_option("subject", subject_text, "subject term")->required();
    add_common(match, match_flags);
    match->add_flag("--trace", match_trace, "log every rule application to stderr");

    CommonFlags rewrite_flags;
    std::string strategy_text;
    std::string rewrite_subject;
    CLI::App* rewrite = app.add_subcommand("rewrite", "apply a strategy and stream results");
    rewrite->add_option("strategy", strategy_text, "e.g. \"po(r1)\" or \"top(r1) ; top(r2)\"")
        ->required();
    rewrite->add_option("subject", rewrite_subject, "subject term")->required();
    rewrite->add_option("--rules", rewrite_flags.rules_path, "rules file, one lhs -> rhs per line")
        ->required();
    add_common(rewrite, rewrite_flags);

    CommonFlags compare_flags;
    CompareConfig compare_config;
    CLI::App* compare =
        app.add_subcommand("compare", "differential test: lazy vs eager vs brute force");
    compare->add_option("--count", compare_config.count, "number of random instances");
    compare->add_option("--max-ac-arity", compare_config.limits.max_ac_arity, "AC arity bound");
    compare->add_option("--max-pattern-symbols", compare_config.limits.max_pattern_symbols,
                        "pattern size bound");
    compare->add_option("--max-vars", compare_config.limits.max_vars, "distinct variable bound");
    add_common(compare, compare_flags);

    CommonFlags bench_flags;
    BenchConfig bench_config;
    CLI::App* bench = app.add_subcommand("bench", "inter-solution timing on X1+...+Xk << a1+...+an");
    bench->add_option("-n,--subject-arity", bench_config.n, "subject arity")->required();
    bench->add_option("-k,--pattern-arity", bench_config.k, "pattern arity")->required();
    bench->add_option("--count", bench_config.count, "solutions to stream (0: all)");
    add_common(bench, bench_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return acmatch::cli::kExitUsage;
    }

    auto run = [&](const CommonFlags& flags, auto&& body) {
        SessionConfig config;
        const int rc = build_config(flags, config, std::cerr);
        if (rc != kExitSolutions) return rc;
        return body(config);
    };

    if (match->parsed()) {
        return run(match_flags, [&](const SessionConfig& config) {
            return cmd_match(config, pattern_text, subject_text, std::cout, std::cerr,
                             match_trace);
        });
    }
    if (rewrite->parsed()) {
        return run(rewrite_flags, [&](const SessionConfig& config) {
            return cmd_rewrite(config, strategy_text, rewrite_subject, std::cout, std::cerr);
        });
    }
    if (compare->parsed()) {
        return run(compare_flags, [&](const SessionConfig& config) {
            return cmd_compare(config, compare_config, std::cout, std::cerr);
        });
    }
    if (bench->parsed()) {
        return run(bench_flags, [&](const SessionConfig& config) {
            return cmd_bench(config, bench_config, std::cout, std::cerr);
        });
    }
    return kExitUsage;
}
