#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "acmatch/strategy.hpp"
#include "acmatch/term.hpp"

namespace acmatch::cli {

struct ParseError : std::runtime_error {
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                             message),
          line(line),
          column(column) {}
    std::size_t line;
    std::size_t column;
};

enum class OutputFormat { Text, Records };

// One command invocation's environment: the signature, the rule base and
// the engine knobs.
struct SessionConfig {
    std::shared_ptr<Signature> signature = std::make_shared<Signature>();
    std::vector<std::pair<std::string, RewriteRule>> rules;
    NormalizeOptions engine;
    bool dedup = false;
    std::optional<std::uint64_t> limit;
    OutputFormat format = OutputFormat::Text;
    std::uint64_t seed = 1;

    const RewriteRule* find_rule(const std::string& name) const;
};

// "sym[/2],sym,...": declares AC symbols (the optional suffix documents the
// minimum arity and must be 2 when present).
void declare_ac_symbols(Signature& sig, const std::string& spec);

// "f/2,g/1,a/0,...": declares free symbols with their arities.
void declare_free_symbols(Signature& sig, const std::string& spec);

// Terms: identifiers starting with an uppercase letter are variables,
// anything else must be a declared symbol.  `f(X, a)` is an application,
// `a + b + c` is an infix chain of one AC symbol (mixed chains need
// parentheses) and parses to one flat application.  The result is
// arity-checked and flat.
TermPtr parse_term(const std::string& text, const Signature& sig);

// Rules file: one `lhs -> rhs` per line, optional `name:` prefix,
// `#` starts a comment.  Unnamed rules are named r1, r2, ... by position.
std::vector<std::pair<std::string, RewriteRule>> parse_rules(const std::string& text,
                                                             const Signature& sig);

// Strategy grammar:
//   id | fail | top(NAME) | lo(NAME) | li(NAME) | po(NAME) | pi(NAME)
//   | STRAT ; STRAT         (right associative, rightmost applies first)
StrategyPtr parse_strategy(const std::string& text, const SessionConfig& config);

}  // namespace acmatch::cli
