#include "acmatch/term.hpp"

#include <algorithm>
#include <sstream>

#include "acmatch/error.hpp"

namespace acmatch {

const Symbol& Signature::add(const std::string& name, SymbolKind kind, std::size_t arity) {
    if (by_name_.count(name)) {
        throw DomainError("signature: duplicate symbol '" + name + "'");
    }
    if (name.empty()) {
        throw DomainError("signature: empty symbol name");
    }
    storage_.push_back(std::make_unique<Symbol>(Symbol{name, kind, arity, this}));
    const Symbol* sym = storage_.back().get();
    order_.push_back(sym);
    by_name_[name] = sym;
    return *sym;
}

const Symbol& Signature::add_free(const std::string& name, std::size_t arity) {
    return add(name, SymbolKind::Free, arity);
}

const Symbol& Signature::add_ac(const std::string& name) {
    return add(name, SymbolKind::AC, 2);
}

const Symbol* Signature::find(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? nullptr : it->second;
}

const Symbol& Signature::at(const std::string& name) const {
    const Symbol* sym = find(name);
    if (!sym) {
        throw DomainError("signature: unknown symbol '" + name + "'");
    }
    return *sym;
}

TermPtr Term::var(std::string name) {
    if (name.empty()) {
        throw DomainError("term: empty variable name");
    }
    return TermPtr(new Term(std::move(name), nullptr, {}));
}

TermPtr Term::app(const Symbol& symbol, std::vector<TermPtr> args) {
    if (symbol.is_ac()) {
        if (args.size() < 2) {
            throw DomainError("term: AC symbol '" + symbol.name + "' needs at least 2 arguments");
        }
    } else if (args.size() != symbol.arity) {
        throw DomainError("term: symbol '" + symbol.name + "' expects " +
                          std::to_string(symbol.arity) + " arguments, got " +
                          std::to_string(args.size()));
    }
    for (const TermPtr& a : args) {
        if (!a) throw DomainError("term: null argument");
    }
    return TermPtr(new Term({}, &symbol, std::move(args)));
}

const std::string& Term::var_name() const {
    if (!is_var()) throw ContractViolation("term: var_name() on an application");
    return var_name_;
}

const Symbol& Term::symbol() const {
    if (!is_app()) throw ContractViolation("term: symbol() on a variable");
    return *symbol_;
}

bool equal(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->is_var() || b->is_var()) {
        return a->is_var() && b->is_var() && a->var_name() == b->var_name();
    }
    if (&a->symbol() != &b->symbol() || a->args().size() != b->args().size()) {
        return false;
    }
    for (std::size_t i = 0; i < a->args().size(); ++i) {
        if (!equal(a->args()[i], b->args()[i])) return false;
    }
    return true;
}

TermPtr flatten(const TermPtr& t) {
    if (t->is_var()) return t;
    bool changed = false;
    std::vector<TermPtr> flat_args;
    flat_args.reserve(t->args().size());
    for (const TermPtr& child : t->args()) {
        TermPtr fc = flatten(child);
        if (fc.get() != child.get()) changed = true;
        if (t->symbol().is_ac() && fc->is_app() && &fc->symbol() == &t->symbol()) {
            // splice: the child is already flat, one level suffices
            changed = true;
            flat_args.insert(flat_args.end(), fc->args().begin(), fc->args().end());
        } else {
            flat_args.push_back(std::move(fc));
        }
    }
    if (!changed) return t;
    return Term::app(t->symbol(), std::move(flat_args));
}

bool is_flat(const TermPtr& t) {
    if (t->is_var()) return true;
    for (const TermPtr& child : t->args()) {
        if (t->symbol().is_ac() && child->is_app() && &child->symbol() == &t->symbol()) {
            return false;
        }
        if (!is_flat(child)) return false;
    }
    return true;
}

bool ac_equal(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->is_var() || b->is_var()) {
        return a->is_var() && b->is_var() && a->var_name() == b->var_name();
    }
    if (&a->symbol() != &b->symbol() || a->args().size() != b->args().size()) {
        return false;
    }
    const auto& xs = a->args();
    const auto& ys = b->args();
    if (!a->symbol().is_ac()) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (!ac_equal(xs[i], ys[i])) return false;
        }
        return true;
    }
    // Multiset comparison.  Greedy pairing is sound because ac_equal is an
    // equivalence: if x pairs with two candidates they are equal to each
    // other as well.
    std::vector<bool> used(ys.size(), false);
    for (const TermPtr& x : xs) {
        bool found = false;
        for (std::size_t j = 0; j < ys.size(); ++j) {
            if (!used[j] && ac_equal(x, ys[j])) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

std::size_t count_ac_symbols(const TermPtr& t) {
    if (t->is_var()) return 0;
    std::size_t count = t->symbol().is_ac() ? 1 : 0;
    for (const TermPtr& child : t->args()) {
        count += count_ac_symbols(child);
    }
    return count;
}

std::set<std::string> variables_of(const TermPtr& t) {
    std::set<std::string> vars;
    auto walk = [&](auto&& self, const TermPtr& u) -> void {
        if (u->is_var()) {
            vars.insert(u->var_name());
            return;
        }
        for (const TermPtr& child : u->args()) self(self, child);
    };
    walk(walk, t);
    return vars;
}

bool belongs_to(const TermPtr& t, const Signature& sig) {
    if (t->is_var()) return true;
    if (t->symbol().owner != &sig) return false;
    for (const TermPtr& child : t->args()) {
        if (!belongs_to(child, sig)) return false;
    }
    return true;
}

std::string to_string(const TermPtr& t) {
    if (t->is_var()) return t->var_name();
    if (t->args().empty()) return t->symbol().name;
    std::ostringstream out;
    out << t->symbol().name << '(';
    for (std::size_t i = 0; i < t->args().size(); ++i) {
        if (i) out << ", ";
        out << to_string(t->args()[i]);
    }
    out << ')';
    return out.str();
}

void Substitution::bind(const std::string& var, TermPtr value) {
    if (lookup(var)) {
        throw ContractViolation("substitution: variable '" + var + "' already bound");
    }
    if (value->is_var() && value->var_name() == var) {
        return;  // no x -> x bindings
    }
    items_.emplace_back(var, std::move(value));
}

bool Substitution::try_bind(const std::string& var, const TermPtr& value) {
    if (const TermPtr* existing = lookup(var)) {
        return ac_equal(*existing, value);
    }
    if (!(value->is_var() && value->var_name() == var)) {
        items_.emplace_back(var, value);
    }
    return true;
}

const TermPtr* Substitution::lookup(const std::string& var) const {
    for (const auto& [name, value] : items_) {
        if (name == var) return &value;
    }
    return nullptr;
}

std::string Substitution::to_string() const {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i) out << ", ";
        out << items_[i].first << " -> " << acmatch::to_string(items_[i].second);
    }
    out << '}';
    return out.str();
}

bool equal_modulo_ac(const Substitution& a, const Substitution& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [var, value] : a.items()) {
        const TermPtr* other = b.lookup(var);
        if (!other || !ac_equal(value, *other)) return false;
    }
    return true;
}

namespace {

TermPtr substitute(const Substitution& subst, const TermPtr& t) {
    if (t->is_var()) {
        if (const TermPtr* bound = subst.lookup(t->var_name())) {
            return *bound;
        }
        return t;
    }
    bool changed = false;
    std::vector<TermPtr> args;
    args.reserve(t->args().size());
    for (const TermPtr& child : t->args()) {
        TermPtr sc = substitute(subst, child);
        if (sc.get() != child.get()) changed = true;
        args.push_back(std::move(sc));
    }
    if (!changed) return t;
    return Term::app(t->symbol(), std::move(args));
}

}  // namespace

TermPtr subst_apply(const Substitution& subst, const TermPtr& t) {
    return flatten(substitute(subst, t));
}

}  // namespace acmatch
