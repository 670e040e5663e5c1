#include "acmatch/strategy.hpp"

#include <algorithm>
#include <sstream>

#include "acmatch/error.hpp"

namespace acmatch {

TermListPtr TermList::empty() {
    static const TermListPtr instance(new TermList(TermListKind::Empty));
    return instance;
}

TermListPtr TermList::leaf(TermPtr term) {
    if (!term) throw DomainError("term list: null term");
    auto l = new TermList(TermListKind::Leaf);
    l->term_ = std::move(term);
    return TermListPtr(l);
}

TermListPtr TermList::pending(ConstraintPtr constraint, TermPtr target) {
    if (!constraint || !target) throw DomainError("term list: null pending");
    auto l = new TermList(TermListKind::Pending);
    l->constraint_ = std::move(constraint);
    l->term_ = std::move(target);
    return TermListPtr(l);
}

TermListPtr TermList::concat(std::vector<TermListPtr> parts) {
    std::vector<TermListPtr> flat;
    flat.reserve(parts.size());
    for (TermListPtr& part : parts) {
        if (!part) throw DomainError("term list: null part");
        if (part->is(TermListKind::Empty)) continue;  // neutral element
        if (part->is(TermListKind::Concat)) {
            flat.insert(flat.end(), part->parts().begin(), part->parts().end());
        } else {
            flat.push_back(std::move(part));
        }
    }
    if (flat.empty()) return empty();
    if (flat.size() == 1) return flat.front();
    auto l = new TermList(TermListKind::Concat);
    l->parts_ = std::move(flat);
    return TermListPtr(l);
}

bool equal(const TermListPtr& a, const TermListPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind() != b->kind()) return false;
    switch (a->kind()) {
        case TermListKind::Empty:
            return true;
        case TermListKind::Leaf:
            return equal(a->term(), b->term());
        case TermListKind::Pending:
            return equal(a->constraint(), b->constraint()) && equal(a->target(), b->target());
        case TermListKind::Concat: {
            if (a->parts().size() != b->parts().size()) return false;
            for (std::size_t i = 0; i < a->parts().size(); ++i) {
                if (!equal(a->parts()[i], b->parts()[i])) return false;
            }
            return true;
        }
    }
    return false;
}

std::string to_string(const TermListPtr& l) {
    switch (l->kind()) {
        case TermListKind::Empty:
            return "⊥";
        case TermListKind::Leaf:
            return to_string(l->term());
        case TermListKind::Pending:
            return "(" + to_string(l->constraint()) + ")(" + to_string(l->target()) + ")";
        case TermListKind::Concat: {
            std::ostringstream out;
            for (std::size_t i = 0; i < l->parts().size(); ++i) {
                if (i) out << " :: ";
                out << to_string(l->parts()[i]);
            }
            return out.str();
        }
    }
    return {};
}

TermListPtr apply_constraint_to_term(const ConstraintPtr& c, const TermPtr& t,
                                     const NormalizeOptions& opts, NormalizeStats& stats) {
    (void)opts;
    (void)stats;
    if (c->is(ConstraintKind::Fail)) {
        return TermList::empty();  // subs_fail
    }
    if (c->is(ConstraintKind::Id)) {
        return TermList::leaf(t);  // subs_id
    }
    if (c->is(ConstraintKind::Or)) {
        // subs: apply the head, suspend the tail
        const ConstraintPtr& head = c->children().front();
        Substitution head_subst =
            head->is(ConstraintKind::Id) ? Substitution{} : extract_substitution(head);
        std::vector<ConstraintPtr> tail(c->children().begin() + 1, c->children().end());
        return TermList::concat(
            {TermList::leaf(subst_apply(head_subst, t)),
             TermList::pending(Constraint::disj(std::move(tail)), t)});
    }
    // a bare land-substitution is the single remaining solution
    return TermList::leaf(subst_apply(extract_substitution(c), t));
}

TermListPtr force_next_termlist(const TermListPtr& l, const NormalizeOptions& opts,
                                NormalizeStats& stats) {
    switch (l->kind()) {
        case TermListKind::Empty:  // next_empty
        case TermListKind::Leaf:   // next_term
            return l;
        case TermListKind::Pending: {
            // next_cstr: activate the constraint, then apply it again;
            // the step budget covers one normalization at a time
            NormalizeStats step;
            ConstraintPtr forced =
                lazy_normal_form(Constraint::next(l->constraint()), opts, step);
            stats += step;
            return apply_constraint_to_term(forced, l->target(), opts, stats);
        }
        case TermListKind::Concat: {
            // next_app: force the head part only
            std::vector<TermListPtr> parts = l->parts();
            parts.front() = force_next_termlist(parts.front(), opts, stats);
            return TermList::concat(std::move(parts));
        }
    }
    return l;
}

RewriteRule RewriteRule::make(TermPtr lhs, TermPtr rhs) {
    if (!lhs || !rhs) throw DomainError("rewrite rule: null side");
    if (!is_flat(lhs) || !is_flat(rhs)) throw DomainError("rewrite rule: sides must be flat");
    std::set<std::string> lhs_vars = variables_of(lhs);
    for (const std::string& v : variables_of(rhs)) {
        if (!lhs_vars.count(v)) {
            throw DomainError("rewrite rule: right side variable '" + v +
                              "' not bound by the left side");
        }
    }
    return RewriteRule{std::move(lhs), std::move(rhs)};
}

StrategyPtr Strategy::id() {
    static const StrategyPtr instance(new Strategy(StrategyKind::Id));
    return instance;
}

StrategyPtr Strategy::fail() {
    static const StrategyPtr instance(new Strategy(StrategyKind::Fail));
    return instance;
}

StrategyPtr Strategy::top(RewriteRule rule) {
    auto s = new Strategy(StrategyKind::Top);
    s->rule_ = std::move(rule);
    return StrategyPtr(s);
}

StrategyPtr Strategy::seq(StrategyPtr outer, StrategyPtr inner) {
    if (!outer || !inner) throw DomainError("strategy: null operand of seq");
    auto s = new Strategy(StrategyKind::Seq);
    s->outer_ = std::move(outer);
    s->inner_ = std::move(inner);
    return StrategyPtr(s);
}

StrategyPtr Strategy::traverse(TraversalKind kind, RewriteRule rule) {
    auto s = new Strategy(StrategyKind::Traverse);
    s->traversal_ = kind;
    s->rule_ = std::move(rule);
    return StrategyPtr(s);
}

namespace {

// rule2: normalize l << t and apply the resulting lazy list to r.
TermListPtr rule_at_top(const RewriteRule& rule, const TermPtr& t, const NormalizeOptions& opts,
                        NormalizeStats& stats) {
    NormalizeStats step;
    ConstraintPtr nf = lazy_normal_form(Constraint::match(rule.lhs, t), opts, step);
    stats += step;
    return apply_constraint_to_term(nf, rule.rhs, opts, stats);
}

// Maps a per-term transformation over the spine, forcing pendings as they
// are reached.
template <typename Fn>
TermListPtr map_spine(const TermListPtr& l, const NormalizeOptions& opts, NormalizeStats& stats,
                      const Fn& per_term) {
    switch (l->kind()) {
        case TermListKind::Empty:
            return l;
        case TermListKind::Leaf:
            return per_term(l->term());
        case TermListKind::Pending:
            return map_spine(force_next_termlist(l, opts, stats), opts, stats, per_term);
        case TermListKind::Concat: {
            std::vector<TermListPtr> mapped;
            mapped.reserve(l->parts().size());
            for (const TermListPtr& part : l->parts()) {
                mapped.push_back(map_spine(part, opts, stats, per_term));
            }
            return TermList::concat(std::move(mapped));
        }
    }
    return l;
}

TermPtr replace_positions(const TermPtr& base, const std::vector<Position>& positions,
                          const std::vector<TermPtr>& replacements);

TermPtr replace_one(const TermPtr& node, const Position& pos, std::size_t depth,
                    const TermPtr& replacement) {
    if (depth == pos.size()) return replacement;
    if (!node->is_app() || pos[depth] >= node->args().size()) {
        throw DomainError("decorated term: position does not exist");
    }
    std::vector<TermPtr> args = node->args();
    args[pos[depth]] = replace_one(args[pos[depth]], pos, depth + 1, replacement);
    return Term::app(node->symbol(), std::move(args));
}

TermPtr replace_positions(const TermPtr& base, const std::vector<Position>& positions,
                          const std::vector<TermPtr>& replacements) {
    TermPtr result = base;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        result = replace_one(result, positions[i], 0, replacements[i]);
    }
    return flatten(result);  // replacements may nest AC symbols
}

}  // namespace

DecoratedTerm DecoratedTerm::make(TermPtr base, std::vector<Position> positions,
                                  std::vector<TermListPtr> lists) {
    if (!base) throw DomainError("decorated term: null base");
    if (positions.size() != lists.size()) {
        throw DomainError("decorated term: positions and lists differ in length");
    }
    for (const Position& pos : positions) {
        TermPtr node = base;
        for (std::size_t index : pos) {
            if (!node->is_app() || index >= node->args().size()) {
                throw DomainError("decorated term: position does not exist");
            }
            node = node->args()[index];
        }
    }
    auto is_prefix = [](const Position& a, const Position& b) {
        if (a.size() > b.size()) return false;
        return std::equal(a.begin(), a.end(), b.begin());
    };
    for (std::size_t i = 0; i < positions.size(); ++i) {
        for (std::size_t j = i + 1; j < positions.size(); ++j) {
            if (is_prefix(positions[i], positions[j]) || is_prefix(positions[j], positions[i])) {
                throw DomainError("decorated term: positions must be incomparable");
            }
        }
    }
    return DecoratedTerm{std::move(base), std::move(positions), std::move(lists)};
}

TermListPtr lift_decorated(const DecoratedTerm& d, const NormalizeOptions& opts,
                           NormalizeStats& stats) {
    if (d.positions.empty()) {
        return TermList::leaf(d.base);  // empty product has one element
    }
    // The lists are finite (normalization terminates), so the tuple iterator
    // can drain them up front; elements are still forced one by one.
    std::vector<std::vector<TermPtr>> choices;
    choices.reserve(d.lists.size());
    for (const TermListPtr& list : d.lists) {
        TermStream stream(list, opts);
        std::vector<TermPtr> terms;
        while (auto t = stream.head()) {
            terms.push_back(*t);
            stream.next();
        }
        stats += stream.stats();
        if (terms.empty()) return TermList::empty();  // empty product
        choices.push_back(std::move(terms));
    }
    std::vector<TermListPtr> out;
    std::vector<std::size_t> odo(choices.size(), 0);
    while (true) {
        std::vector<TermPtr> tuple;
        tuple.reserve(choices.size());
        for (std::size_t i = 0; i < choices.size(); ++i) {
            tuple.push_back(choices[i][odo[i]]);
        }
        out.push_back(TermList::leaf(replace_positions(d.base, d.positions, tuple)));
        std::size_t pos = choices.size();
        while (pos-- > 0) {
            if (++odo[pos] < choices[pos].size()) break;
            odo[pos] = 0;
            if (pos == 0) return TermList::concat(std::move(out));
        }
    }
}

TermListPtr apply_traversal(TraversalKind kind, const RewriteRule& rule, const TermPtr& t,
                            const NormalizeOptions& opts, NormalizeStats& stats) {
    if (t->is_var()) {
        return rule_at_top(rule, t, opts, stats);
    }
    const std::size_t n = t->args().size();
    auto recurse_child = [&](std::size_t i) {
        return apply_traversal(kind, rule, t->args()[i], opts, stats);
    };
    auto lift_single = [&](std::size_t i, TermListPtr list) {
        return lift_decorated(DecoratedTerm::make(t, {{i}}, {std::move(list)}), opts, stats);
    };
    switch (kind) {
        case TraversalKind::ParallelOutermost: {
            TermListPtr at_root = rule_at_top(rule, t, opts, stats);
            if (!at_root->is(TermListKind::Empty)) return at_root;
            if (n == 0) return TermList::empty();  // no redex anywhere
            std::vector<Position> positions;
            std::vector<TermListPtr> lists;
            for (std::size_t i = 0; i < n; ++i) {
                positions.push_back({i});
                lists.push_back(recurse_child(i));
            }
            return lift_decorated(
                DecoratedTerm::make(t, std::move(positions), std::move(lists)), opts, stats);
        }
        case TraversalKind::LeftmostOutermost: {
            TermListPtr at_root = rule_at_top(rule, t, opts, stats);
            if (!at_root->is(TermListKind::Empty)) return at_root;
            for (std::size_t i = 0; i < n; ++i) {
                TermListPtr sub = recurse_child(i);
                if (!sub->is(TermListKind::Empty)) return lift_single(i, std::move(sub));
            }
            return TermList::empty();
        }
        case TraversalKind::LeftmostInnermost: {
            for (std::size_t i = 0; i < n; ++i) {
                TermListPtr sub = recurse_child(i);
                if (!sub->is(TermListKind::Empty)) return lift_single(i, std::move(sub));
            }
            return rule_at_top(rule, t, opts, stats);
        }
        case TraversalKind::ParallelInnermost: {
            if (n == 0) return rule_at_top(rule, t, opts, stats);
            std::vector<Position> positions;
            std::vector<TermListPtr> lists;
            bool all_empty = true;
            bool any_empty = false;
            for (std::size_t i = 0; i < n; ++i) {
                positions.push_back({i});
                lists.push_back(recurse_child(i));
                if (lists.back()->is(TermListKind::Empty)) {
                    any_empty = true;
                } else {
                    all_empty = false;
                }
            }
            if (all_empty) return rule_at_top(rule, t, opts, stats);
            if (any_empty) return TermList::empty();  // mirrors the outermost product
            return lift_decorated(
                DecoratedTerm::make(t, std::move(positions), std::move(lists)), opts, stats);
        }
    }
    return TermList::empty();
}

TermListPtr apply_strategy(const StrategyPtr& strategy, const TermListPtr& input,
                           const NormalizeOptions& opts, NormalizeStats& stats) {
    switch (strategy->kind()) {
        case StrategyKind::Id:
            return input;
        case StrategyKind::Fail:
            return TermList::empty();
        case StrategyKind::Seq:
            // compose: [u; v] . tau = [u] . ([v] . tau), v first
            return apply_strategy(strategy->outer(),
                                  apply_strategy(strategy->inner(), input, opts, stats), opts,
                                  stats);
        case StrategyKind::Top:
            return map_spine(input, opts, stats, [&](const TermPtr& t) {
                return rule_at_top(strategy->rule(), t, opts, stats);
            });
        case StrategyKind::Traverse:
            return map_spine(input, opts, stats, [&](const TermPtr& t) {
                return apply_traversal(strategy->traversal(), strategy->rule(), t, opts, stats);
            });
    }
    return TermList::empty();
}

TermStream::TermStream(TermListPtr list, NormalizeOptions opts)
    : list_(std::move(list)), opts_(std::move(opts)) {}

std::optional<TermPtr> TermStream::head() {
    while (true) {
        if (list_->is(TermListKind::Empty)) return std::nullopt;
        const TermListPtr& front =
            list_->is(TermListKind::Concat) ? list_->parts().front() : list_;
        if (front->is(TermListKind::Leaf)) return front->term();
        list_ = force_next_termlist(list_, opts_, stats_);
    }
}

void TermStream::next() {
    if (!head()) {
        throw ContractViolation("term stream: next past exhaustion");
    }
    if (list_->is(TermListKind::Leaf)) {
        list_ = TermList::empty();
        return;
    }
    std::vector<TermListPtr> parts(list_->parts().begin() + 1, list_->parts().end());
    list_ = TermList::concat(std::move(parts));
}

bool TermStream::done() { return !head().has_value(); }

std::vector<TermPtr> drain_termlist(const TermListPtr& l, const NormalizeOptions& opts,
                                    std::size_t limit) {
    TermStream stream(l, opts);
    std::vector<TermPtr> out;
    while (out.size() < limit) {
        auto t = stream.head();
        if (!t) break;
        out.push_back(*t);
        stream.next();
    }
    return out;
}

}  // namespace acmatch
