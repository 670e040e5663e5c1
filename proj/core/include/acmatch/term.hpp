#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace acmatch {

class Term;
using TermPtr = std::shared_ptr<const Term>;

enum class SymbolKind { Free, AC };

class Signature;

// A function symbol.  Free symbols have a fixed arity; AC symbols are
// variadic with a minimum arity of 2 once terms are flattened.
struct Symbol {
    std::string name;
    SymbolKind kind;
    std::size_t arity;  // meaningful for Free only
    const Signature* owner;

    bool is_ac() const { return kind == SymbolKind::AC; }
};

// Symbol registry.  Names are unique; AC and free symbols share one
// namespace.  Symbols keep stable addresses for the signature's lifetime,
// so terms refer to them by pointer.
class Signature {
  public:
    Signature() = default;
    Signature(const Signature&) = delete;
    Signature& operator=(const Signature&) = delete;

    const Symbol& add_free(const std::string& name, std::size_t arity);
    const Symbol& add_ac(const std::string& name);

    const Symbol* find(const std::string& name) const;
    const Symbol& at(const std::string& name) const;  // DomainError if absent

    const std::vector<const Symbol*>& symbols() const { return order_; }

  private:
    const Symbol& add(const std::string& name, SymbolKind kind, std::size_t arity);
    std::vector<std::unique_ptr<Symbol>> storage_;
    std::vector<const Symbol*> order_;
    std::map<std::string, const Symbol*> by_name_;
};

// First-order term: a variable or an application.  Construction checks
// arities but does not flatten; `flatten` merges nested AC applications.
class Term {
  public:
    static TermPtr var(std::string name);
    static TermPtr app(const Symbol& symbol, std::vector<TermPtr> args);

    bool is_var() const { return symbol_ == nullptr; }
    bool is_app() const { return symbol_ != nullptr; }

    const std::string& var_name() const;
    const Symbol& symbol() const;
    const std::vector<TermPtr>& args() const { return args_; }

  private:
    Term(std::string var_name, const Symbol* symbol, std::vector<TermPtr> args)
        : var_name_(std::move(var_name)), symbol_(symbol), args_(std::move(args)) {}

    std::string var_name_;
    const Symbol* symbol_;
    std::vector<TermPtr> args_;
};

// Structural (syntactic) equality.
bool equal(const TermPtr& a, const TermPtr& b);

// Merges arguments of directly nested same-symbol AC applications,
// preserving left-to-right occurrence order.  Identity on flat terms.
TermPtr flatten(const TermPtr& t);

bool is_flat(const TermPtr& t);

// Equality modulo associativity and commutativity of AC symbols: ordered
// comparison at free symbols, multiset comparison at AC symbols.
// Both terms must be flat.
bool ac_equal(const TermPtr& a, const TermPtr& b);

std::size_t count_ac_symbols(const TermPtr& t);

std::set<std::string> variables_of(const TermPtr& t);

// Every application symbol in t must belong to `sig`.
bool belongs_to(const TermPtr& t, const Signature& sig);

std::string to_string(const TermPtr& t);

// Finite map from variable names to flat terms.  Identity bindings are
// dropped; insertion order is preserved for printing.
class Substitution {
  public:
    Substitution() = default;

    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }

    // ContractViolation if the variable is already bound.
    void bind(const std::string& var, TermPtr value);

    // True if the variable was inserted or the existing binding is
    // AC-equal to `value`; false on a clash.  Used when merging partial
    // solutions.
    bool try_bind(const std::string& var, const TermPtr& value);

    const TermPtr* lookup(const std::string& var) const;

    const std::vector<std::pair<std::string, TermPtr>>& items() const { return items_; }

    std::string to_string() const;

  private:
    std::vector<std::pair<std::string, TermPtr>> items_;
};

// Same domain and AC-equal images (binding order is irrelevant).
bool equal_modulo_ac(const Substitution& a, const Substitution& b);

// Applies the substitution and re-flattens the result, since substituting
// an AC-rooted term under the same AC symbol nests it.
TermPtr subst_apply(const Substitution& subst, const TermPtr& t);

}  // namespace acmatch
