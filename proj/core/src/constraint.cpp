#include "acmatch/constraint.hpp"

#include <map>
#include <sstream>

#include "acmatch/error.hpp"
#include "acmatch/surjection.hpp"

namespace acmatch {

ConstraintPtr Constraint::fail() {
    static const ConstraintPtr instance(new Constraint(ConstraintKind::Fail));
    return instance;
}

ConstraintPtr Constraint::id() {
    static const ConstraintPtr instance(new Constraint(ConstraintKind::Id));
    return instance;
}

ConstraintPtr Constraint::match(TermPtr pattern, TermPtr subject) {
    if (!pattern || !subject) {
        throw DomainError("constraint: null term in match");
    }
    auto c = new Constraint(ConstraintKind::Match);
    c->pattern_ = std::move(pattern);
    c->subject_ = std::move(subject);
    return ConstraintPtr(c);
}

ConstraintPtr Constraint::conj(std::vector<ConstraintPtr> children) {
    std::vector<ConstraintPtr> flat;
    flat.reserve(children.size());
    for (ConstraintPtr& child : children) {
        if (!child) throw DomainError("constraint: null conjunct");
        if (child->is(ConstraintKind::Fail)) {
            return fail();  // absorbing element
        }
        if (child->is(ConstraintKind::Id)) {
            continue;  // neutral element
        }
        if (child->is(ConstraintKind::And)) {
            flat.insert(flat.end(), child->children().begin(), child->children().end());
        } else {
            flat.push_back(std::move(child));
        }
    }
    if (flat.empty()) return id();
    if (flat.size() == 1) return flat.front();
    auto c = new Constraint(ConstraintKind::And);
    c->children_ = std::move(flat);
    return ConstraintPtr(c);
}

ConstraintPtr Constraint::disj(std::vector<ConstraintPtr> children) {
    std::vector<ConstraintPtr> flat;
    flat.reserve(children.size());
    for (ConstraintPtr& child : children) {
        if (!child) throw DomainError("constraint: null disjunct");
        if (child->is(ConstraintKind::Or)) {
            flat.insert(flat.end(), child->children().begin(), child->children().end());
        } else {
            flat.push_back(std::move(child));
        }
    }
    if (flat.empty()) {
        throw DomainError("constraint: empty disjunction");
    }
    if (flat.size() == 1) return flat.front();
    auto c = new Constraint(ConstraintKind::Or);
    c->children_ = std::move(flat);
    return ConstraintPtr(c);
}

ConstraintPtr Constraint::next(ConstraintPtr inner) {
    if (!inner) throw DomainError("constraint: null operand of Next");
    auto c = new Constraint(ConstraintKind::Next);
    c->children_.push_back(std::move(inner));
    return ConstraintPtr(c);
}

ConstraintPtr Constraint::triplet(TermPtr pattern, TermPtr subject, BigUint rank) {
    if (!pattern || !subject || !pattern->is_app() || !subject->is_app()) {
        throw DomainError("triplet: both terms must be applications");
    }
    if (!pattern->symbol().is_ac() || &pattern->symbol() != &subject->symbol()) {
        throw DomainError("triplet: terms must share an AC root symbol");
    }
    const std::size_t k = pattern->args().size();
    const std::size_t n = subject->args().size();
    if (k > n) {
        throw DomainError("triplet: pattern arity exceeds subject arity");
    }
    BigUint total = surjection_count(n, k);
    if (rank < BigUint{1} || rank > total) {
        throw DomainError("triplet: rank out of range");
    }
    auto c = new Constraint(ConstraintKind::Triplet);
    c->pattern_ = std::move(pattern);
    c->subject_ = std::move(subject);
    c->rank_ = std::move(rank);
    c->rank_total_ = std::move(total);
    return ConstraintPtr(c);
}

bool equal(const ConstraintPtr& a, const ConstraintPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind() != b->kind()) return false;
    switch (a->kind()) {
        case ConstraintKind::Fail:
        case ConstraintKind::Id:
            return true;
        case ConstraintKind::Match:
            return equal(a->pattern(), b->pattern()) && equal(a->subject(), b->subject());
        case ConstraintKind::Triplet:
            return a->rank() == b->rank() && equal(a->pattern(), b->pattern()) &&
                   equal(a->subject(), b->subject());
        case ConstraintKind::And:
        case ConstraintKind::Or:
        case ConstraintKind::Next: {
            if (a->children().size() != b->children().size()) return false;
            for (std::size_t i = 0; i < a->children().size(); ++i) {
                if (!equal(a->children()[i], b->children()[i])) return false;
            }
            return true;
        }
    }
    return false;
}

namespace {

void print(const ConstraintPtr& c, std::ostringstream& out, int parent_level) {
    // levels: 0 = disjunction, 1 = conjunction, 2 = atom
    switch (c->kind()) {
        case ConstraintKind::Fail:
            out << "F";
            return;
        case ConstraintKind::Id:
            out << "I";
            return;
        case ConstraintKind::Match:
            out << to_string(c->pattern()) << " ≪ " << to_string(c->subject());
            return;
        case ConstraintKind::Triplet:
            out << "⟨" << to_string(c->pattern()) << ", " << to_string(c->subject()) << ", "
                << c->rank().to_string() << "⟩";
            return;
        case ConstraintKind::Next:
            out << "Next(";
            print(c->inner(), out, 0);
            out << ")";
            return;
        case ConstraintKind::And: {
            const bool parens = parent_level > 1;
            if (parens) out << "(";
            for (std::size_t i = 0; i < c->children().size(); ++i) {
                if (i) out << " ∧ ";
                print(c->children()[i], out, 2);
            }
            if (parens) out << ")";
            return;
        }
        case ConstraintKind::Or: {
            const bool parens = parent_level > 0;
            if (parens) out << "(";
            for (std::size_t i = 0; i < c->children().size(); ++i) {
                if (i) out << " ∨ ";
                print(c->children()[i], out, 1);
            }
            if (parens) out << ")";
            return;
        }
    }
}

}  // namespace

std::string to_string(const ConstraintPtr& c) {
    std::ostringstream out;
    print(c, out, 0);
    return out.str();
}

ConstraintPtr simplify_algebraic(const ConstraintPtr& c) {
    switch (c->kind()) {
        case ConstraintKind::Fail:
        case ConstraintKind::Id:
        case ConstraintKind::Match:
        case ConstraintKind::Triplet:
            return c;
        case ConstraintKind::Next:
            return Constraint::next(simplify_algebraic(c->inner()));
        case ConstraintKind::And:
        case ConstraintKind::Or: {
            std::vector<ConstraintPtr> children;
            children.reserve(c->children().size());
            bool changed = false;
            for (const ConstraintPtr& child : c->children()) {
                ConstraintPtr sc = simplify_algebraic(child);
                if (sc.get() != child.get()) changed = true;
                children.push_back(std::move(sc));
            }
            if (!changed) return c;
            return c->is(ConstraintKind::And) ? Constraint::conj(std::move(children))
                                              : Constraint::disj(std::move(children));
        }
    }
    return c;
}

namespace {

bool is_variable_match(const ConstraintPtr& c) {
    return c->is(ConstraintKind::Match) && c->pattern()->is_var();
}

}  // namespace

bool is_land_substitution(const ConstraintPtr& c) {
    if (is_variable_match(c)) return true;
    if (!c->is(ConstraintKind::And)) return false;
    for (const ConstraintPtr& child : c->children()) {
        if (!is_variable_match(child)) return false;
    }
    return true;
}

bool is_irreducible_land_substitution(const ConstraintPtr& c) {
    if (!is_land_substitution(c)) return false;
    if (is_variable_match(c)) return true;
    std::map<std::string, TermPtr> first;
    for (const ConstraintPtr& child : c->children()) {
        const std::string& var = child->pattern()->var_name();
        auto [it, inserted] = first.emplace(var, child->subject());
        if (!inserted && !ac_equal(it->second, child->subject())) {
            return false;
        }
    }
    return true;
}

Substitution extract_substitution(const ConstraintPtr& c) {
    if (c->is(ConstraintKind::Id)) {
        return Substitution{};
    }
    std::vector<ConstraintPtr> entries;
    if (is_variable_match(c)) {
        entries.push_back(c);
    } else if (c->is(ConstraintKind::And) && is_land_substitution(c)) {
        entries = c->children();
    } else {
        throw ContractViolation("extract_substitution: not a land-substitution: " + to_string(c));
    }
    Substitution result;
    std::map<std::string, TermPtr> first;
    for (const ConstraintPtr& entry : entries) {
        const std::string& var = entry->pattern()->var_name();
        const TermPtr& value = entry->subject();
        auto [it, inserted] = first.emplace(var, value);
        if (!inserted) {
            if (!ac_equal(it->second, value)) {
                throw ContractViolation("extract_substitution: conflicting bindings for '" + var +
                                        "'");
            }
            continue;  // duplicate, keep the first
        }
        result.try_bind(var, value);  // drops x -> x
    }
    return result;
}

namespace {

bool in_grammar(const ConstraintPtr& c, Grammar g);

bool all_children(const ConstraintPtr& c, Grammar g) {
    for (const ConstraintPtr& child : c->children()) {
        if (!in_grammar(child, g)) return false;
    }
    return true;
}

bool in_grammar(const ConstraintPtr& c, Grammar g) {
    switch (g) {
        case Grammar::G:
            switch (c->kind()) {
                case ConstraintKind::Id:
                    return true;
                case ConstraintKind::Match:
                    return c->pattern()->is_var();
                case ConstraintKind::And:
                    return all_children(c, Grammar::G);
                case ConstraintKind::Or: {
                    // left-nested reading of G \/ <t,u,s>: every disjunct
                    // after the head is a triplet
                    if (!in_grammar(c->children().front(), Grammar::G)) return false;
                    for (std::size_t i = 1; i < c->children().size(); ++i) {
                        if (!c->children()[i]->is(ConstraintKind::Triplet)) return false;
                    }
                    return true;
                }
                default:
                    return false;
            }
        case Grammar::K:
            switch (c->kind()) {
                case ConstraintKind::Match:
                    return c->pattern()->is_var();
                case ConstraintKind::Triplet:
                    return true;
                case ConstraintKind::And:
                    return all_children(c, Grammar::K);
                default:
                    return false;
            }
        case Grammar::F:
            if (c->is(ConstraintKind::Or)) {
                return all_children(c, Grammar::K);
            }
            return in_grammar(c, Grammar::K);
        case Grammar::S:
            switch (c->kind()) {
                case ConstraintKind::Match:
                    return c->pattern()->is_var();
                case ConstraintKind::And:
                    return all_children(c, Grammar::S);
                default:
                    return false;
            }
        case Grammar::H: {
            if (c->is(ConstraintKind::Id) || in_grammar(c, Grammar::S)) return true;
            if (!c->is(ConstraintKind::Or)) return false;
            const ConstraintPtr& head = c->children().front();
            if (!head->is(ConstraintKind::Id) && !in_grammar(head, Grammar::S)) return false;
            for (std::size_t i = 1; i < c->children().size(); ++i) {
                if (!in_grammar(c->children()[i], Grammar::K)) return false;
            }
            return true;
        }
    }
    return false;
}

}  // namespace

bool matches_grammar(const ConstraintPtr& c, Grammar g) {
    return in_grammar(c, g);
}

bool is_lazy_list_head(const ConstraintPtr& c) {
    if (c->is(ConstraintKind::Fail) || c->is(ConstraintKind::Id)) return true;
    if (is_land_substitution(c)) return is_irreducible_land_substitution(c);
    if (!c->is(ConstraintKind::Or)) return false;
    const ConstraintPtr& head = c->children().front();
    if (head->is(ConstraintKind::Id)) return true;
    return is_land_substitution(head) && is_irreducible_land_substitution(head);
}

bool is_lazy_list(const ConstraintPtr& c, const NormalFormFn& normal_form) {
    ConstraintPtr cur = c;
    while (true) {
        if (cur->is(ConstraintKind::Fail) || cur->is(ConstraintKind::Id)) return true;
        if (is_land_substitution(cur)) return is_irreducible_land_substitution(cur);
        if (!cur->is(ConstraintKind::Or)) return false;
        if (!is_lazy_list_head(cur)) return false;
        std::vector<ConstraintPtr> tail(cur->children().begin() + 1, cur->children().end());
        cur = normal_form(Constraint::next(Constraint::disj(std::move(tail))));
    }
}

}  // namespace acmatch
