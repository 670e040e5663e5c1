#pragma once

#include <iosfwd>

#include "acmatch/differential.hpp"
#include "parser.hpp"

namespace acmatch::cli {

// Exit codes shared by all commands.
inline constexpr int kExitSolutions = 0;
inline constexpr int kExitNoSolution = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDisagreement = 3;

// Streams matching solutions one per line as they are forced.
int cmd_match(const SessionConfig& config, const std::string& pattern_text,
              const std::string& subject_text, std::ostream& out, std::ostream& err,
              bool trace = false);

// Applies a strategy to a subject term and streams the result terms.
int cmd_rewrite(const SessionConfig& config, const std::string& strategy_text,
                const std::string& subject_text, std::ostream& out, std::ostream& err);

struct CompareConfig {
    std::uint64_t count = 500;
    GenLimits limits;
};

// Differential test: lazy stream vs eager system vs brute force on random
// instances; prints shrunken reproducers for any disagreement.
int cmd_compare(const SessionConfig& config, const CompareConfig& compare, std::ostream& out,
                std::ostream& err);

struct BenchConfig {
    std::size_t n = 10;
    std::size_t k = 10;
    std::uint64_t count = 0;  // 0: drain everything
};

// Streams solutions of X1+...+Xk << a1+...+an and reports time to first
// solution, inter-solution statistics and the number of expanded ranks.
int cmd_bench(const SessionConfig& config, const BenchConfig& bench, std::ostream& out,
              std::ostream& err);

}  // namespace acmatch::cli
