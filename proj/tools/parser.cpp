#include "parser.hpp"

#include <cctype>
#include <sstream>

#include "acmatch/error.hpp"

namespace acmatch::cli {

const RewriteRule* SessionConfig::find_rule(const std::string& name) const {
    for (const auto& [rule_name, rule] : rules) {
        if (rule_name == name) return &rule;
    }
    return nullptr;
}

namespace {

bool is_operator_char(char c) {
    return std::string_view("+*-/&|^%!~<>=.@#$?").find(c) != std::string_view::npos;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

struct Token {
    enum class Kind { Ident, Operator, LParen, RParen, Comma, Colon, Semicolon, Arrow, End };
    Kind kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
  public:
    Lexer(const std::string& text, std::size_t first_line = 1) : text_(text), line_(first_line) {}

    Token next() {
        skip_space();
        const std::size_t line = line_;
        const std::size_t column = column_;
        if (pos_ >= text_.size()) {
            return {Token::Kind::End, "", line, column};
        }
        const char c = text_[pos_];
        if (c == '(') return simple(Token::Kind::LParen, "(");
        if (c == ')') return simple(Token::Kind::RParen, ")");
        if (c == ',') return simple(Token::Kind::Comma, ",");
        if (c == ':') return simple(Token::Kind::Colon, ":");
        if (c == ';') return simple(Token::Kind::Semicolon, ";");
        if (is_ident_start(c)) {
            std::string word;
            while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
                word.push_back(text_[pos_]);
                advance();
            }
            return {Token::Kind::Ident, std::move(word), line, column};
        }
        if (is_operator_char(c)) {
            std::string op;
            while (pos_ < text_.size() && is_operator_char(text_[pos_])) {
                op.push_back(text_[pos_]);
                advance();
            }
            if (op == "->") return {Token::Kind::Arrow, std::move(op), line, column};
            return {Token::Kind::Operator, std::move(op), line, column};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, column);
    }

  private:
    Token simple(Token::Kind kind, std::string text) {
        const Token t{kind, std::move(text), line_, column_};
        advance();
        return t;
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                column_ = 0;
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                break;
            }
            advance();
        }
    }

    void advance() {
        ++pos_;
        ++column_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t column_ = 1;
};

class TokenStream {
  public:
    TokenStream(const std::string& text, std::size_t first_line = 1) : lexer_(text, first_line) {
        current_ = lexer_.next();
    }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = std::move(current_);
        current_ = lexer_.next();
        return t;
    }

    Token expect(Token::Kind kind, const std::string& what) {
        if (current_.kind != kind) {
            throw ParseError("expected " + what + ", got '" + current_.text + "'", current_.line,
                             current_.column);
        }
        return take();
    }

  private:
    Lexer lexer_;
    Token current_;
};

bool is_variable_name(const std::string& name) {
    return !name.empty() && std::isupper(static_cast<unsigned char>(name[0]));
}

class TermParser {
  public:
    TermParser(TokenStream& tokens, const Signature& sig) : tokens_(tokens), sig_(sig) {}

    // infix chain of one AC symbol over primaries
    TermPtr parse() {
        TermPtr first = parse_primary();
        const Symbol* chain_symbol = infix_symbol();
        if (!chain_symbol) return first;
        std::vector<TermPtr> operands{std::move(first)};
        while (const Symbol* sym = infix_symbol()) {
            if (sym != chain_symbol) {
                const Token& t = tokens_.peek();
                throw ParseError("mixed infix operators '" + chain_symbol->name + "' and '" +
                                     sym->name + "' need parentheses",
                                 t.line, t.column);
            }
            tokens_.take();
            operands.push_back(parse_primary());
        }
        return Term::app(*chain_symbol, std::move(operands));
    }

  private:
    // the upcoming token, when it names a declared AC symbol usable infix
    const Symbol* infix_symbol() const {
        const Token& t = tokens_.peek();
        if (t.kind != Token::Kind::Operator && t.kind != Token::Kind::Ident) return nullptr;
        if (t.kind == Token::Kind::Ident && is_variable_name(t.text)) return nullptr;
        const Symbol* sym = sig_.find(t.text);
        return (sym && sym->is_ac()) ? sym : nullptr;
    }

    TermPtr parse_primary() {
        const Token t = tokens_.take();
        switch (t.kind) {
            case Token::Kind::LParen: {
                TermPtr inner = parse();
                tokens_.expect(Token::Kind::RParen, "')'");
                return inner;
            }
            case Token::Kind::Ident:
                if (is_variable_name(t.text)) {
                    return Term::var(t.text);
                }
                [[fallthrough]];
            case Token::Kind::Operator: {
                const Symbol* sym = sig_.find(t.text);
                if (!sym) {
                    throw ParseError("unknown symbol '" + t.text + "'", t.line, t.column);
                }
                std::vector<TermPtr> args;
                if (tokens_.peek().kind == Token::Kind::LParen) {
                    tokens_.take();
                    args.push_back(parse());
                    while (tokens_.peek().kind == Token::Kind::Comma) {
                        tokens_.take();
                        args.push_back(parse());
                    }
                    tokens_.expect(Token::Kind::RParen, "')'");
                }
                try {
                    return Term::app(*sym, std::move(args));
                } catch (const DomainError& e) {
                    throw ParseError(e.what(), t.line, t.column);
                }
            }
            default:
                throw ParseError("expected a term, got '" + t.text + "'", t.line, t.column);
        }
    }

    TokenStream& tokens_;
    const Signature& sig_;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string current;
    for (char c : text) {
        if (c == sep) {
            out.push_back(current);
            current.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            current.push_back(c);
        }
    }
    out.push_back(current);
    return out;
}

}  // namespace

void declare_ac_symbols(Signature& sig, const std::string& spec) {
    for (const std::string& entry : split(spec, ',')) {
        if (entry.empty()) continue;
        std::string name = entry;
        if (auto slash = entry.find('/'); slash != std::string::npos) {
            name = entry.substr(0, slash);
            if (entry.substr(slash + 1) != "2") {
                throw DomainError("AC symbol '" + name + "': minimum arity is always 2");
            }
        }
        sig.add_ac(name);
    }
}

void declare_free_symbols(Signature& sig, const std::string& spec) {
    for (const std::string& entry : split(spec, ',')) {
        if (entry.empty()) continue;
        const auto slash = entry.find('/');
        if (slash == std::string::npos) {
            throw DomainError("free symbol '" + entry + "' needs an arity, e.g. '" + entry +
                              "/0'");
        }
        const std::string name = entry.substr(0, slash);
        const std::string arity_text = entry.substr(slash + 1);
        std::size_t arity = 0;
        try {
            arity = std::stoul(arity_text);
        } catch (const std::exception&) {
            throw DomainError("free symbol '" + name + "': bad arity '" + arity_text + "'");
        }
        sig.add_free(name, arity);
    }
}

TermPtr parse_term(const std::string& text, const Signature& sig) {
    TokenStream tokens(text);
    TermParser parser(tokens, sig);
    TermPtr term = parser.parse();
    const Token& rest = tokens.peek();
    if (rest.kind != Token::Kind::End) {
        throw ParseError("trailing input '" + rest.text + "'", rest.line, rest.column);
    }
    return flatten(term);
}

std::vector<std::pair<std::string, RewriteRule>> parse_rules(const std::string& text,
                                                             const Signature& sig) {
    std::vector<std::pair<std::string, RewriteRule>> rules;
    std::size_t line_number = 0;
    std::string line;
    std::istringstream lines(text);
    while (std::getline(lines, line)) {
        ++line_number;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

        TokenStream tokens(line, line_number);
        std::string name = "r" + std::to_string(rules.size() + 1);
        // optional NAME ':' prefix needs one token of lookahead
        if (tokens.peek().kind == Token::Kind::Ident) {
            TokenStream probe(line, line_number);
            probe.take();
            if (probe.peek().kind == Token::Kind::Colon) {
                name = tokens.take().text;
                tokens.take();  // ':'
            }
        }
        TermParser parser(tokens, sig);
        TermPtr lhs = parser.parse();
        tokens.expect(Token::Kind::Arrow, "'->'");
        TermPtr rhs = parser.parse();
        const Token& rest = tokens.peek();
        if (rest.kind != Token::Kind::End) {
            throw ParseError("trailing input '" + rest.text + "'", rest.line, rest.column);
        }
        try {
            rules.emplace_back(name, RewriteRule::make(flatten(lhs), flatten(rhs)));
        } catch (const DomainError& e) {
            throw ParseError(e.what(), line_number, 1);
        }
    }
    return rules;
}

namespace {

StrategyPtr parse_strategy_seq(TokenStream& tokens, const SessionConfig& config);

StrategyPtr parse_strategy_atom(TokenStream& tokens, const SessionConfig& config) {
    const Token t = tokens.take();
    if (t.kind == Token::Kind::LParen) {
        StrategyPtr inner = parse_strategy_seq(tokens, config);
        tokens.expect(Token::Kind::RParen, "')'");
        return inner;
    }
    if (t.kind != Token::Kind::Ident) {
        throw ParseError("expected a strategy, got '" + t.text + "'", t.line, t.column);
    }
    if (t.text == "id") return Strategy::id();
    if (t.text == "fail") return Strategy::fail();

    std::optional<TraversalKind> traversal;
    if (t.text == "lo") traversal = TraversalKind::LeftmostOutermost;
    if (t.text == "li") traversal = TraversalKind::LeftmostInnermost;
    if (t.text == "po") traversal = TraversalKind::ParallelOutermost;
    if (t.text == "pi") traversal = TraversalKind::ParallelInnermost;
    if (t.text != "top" && !traversal) {
        throw ParseError("unknown strategy '" + t.text + "'", t.line, t.column);
    }
    tokens.expect(Token::Kind::LParen, "'('");
    const Token name = tokens.expect(Token::Kind::Ident, "a rule name");
    tokens.expect(Token::Kind::RParen, "')'");
    const RewriteRule* rule = config.find_rule(name.text);
    if (!rule) {
        throw ParseError("unknown rule '" + name.text + "'", name.line, name.column);
    }
    if (traversal) return Strategy::traverse(*traversal, *rule);
    return Strategy::top(*rule);
}

StrategyPtr parse_strategy_seq(TokenStream& tokens, const SessionConfig& config) {
    StrategyPtr first = parse_strategy_atom(tokens, config);
    if (tokens.peek().kind != Token::Kind::Semicolon) {
        return first;
    }
    tokens.take();
    // right associative; the rightmost strategy applies first
    StrategyPtr rest = parse_strategy_seq(tokens, config);
    return Strategy::seq(std::move(first), std::move(rest));
}

}  // namespace

StrategyPtr parse_strategy(const std::string& text, const SessionConfig& config) {
    TokenStream tokens(text);
    StrategyPtr strategy = parse_strategy_seq(tokens, config);
    const Token& rest = tokens.peek();
    if (rest.kind != Token::Kind::End) {
        throw ParseError("trailing input '" + rest.text + "'", rest.line, rest.column);
    }
    return strategy;
}

}  // namespace acmatch::cli
