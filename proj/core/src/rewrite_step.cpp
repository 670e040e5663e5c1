#include "acmatch/rewrite_step.hpp"

#include <algorithm>

#include "acmatch/error.hpp"
#include "acmatch/surjection.hpp"

namespace acmatch {

namespace {

bool is_variable_match_c(const ConstraintPtr& c) {
    return c->is(ConstraintKind::Match) && c->pattern()->is_var();
}

// fail_gen: two top-level bindings of one variable to AC-unequal terms.
bool has_binding_clash(const ConstraintPtr& and_node) {
    const auto& children = and_node->children();
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (!is_variable_match_c(children[i])) continue;
        for (std::size_t j = i + 1; j < children.size(); ++j) {
            if (!is_variable_match_c(children[j])) continue;
            if (children[i]->pattern()->var_name() == children[j]->pattern()->var_name() &&
                !ac_equal(children[i]->subject(), children[j]->subject())) {
                return true;
            }
        }
    }
    return false;
}

void collect_r12(const ConstraintPtr& c, InjectedFault fault, std::vector<std::size_t>& path,
                 std::vector<Redex>& out) {
    switch (c->kind()) {
        case ConstraintKind::Fail:
        case ConstraintKind::Id:
        case ConstraintKind::Triplet:
            return;
        case ConstraintKind::Match: {
            const TermPtr& pattern = c->pattern();
            const TermPtr& subject = c->subject();
            if (pattern->is_var()) return;
            if (subject->is_var()) {
                out.push_back({"var_clash", path, 0});
                return;
            }
            if (&pattern->symbol() != &subject->symbol()) {
                out.push_back({"match_fail", path, 0});
                return;
            }
            if (!pattern->symbol().is_ac()) {
                out.push_back({"match", path, 0});
                return;
            }
            out.push_back({pattern->args().size() <= subject->args().size() ? "match_AC"
                                                                            : "match_AC_fail",
                           path, 0});
            return;
        }
        case ConstraintKind::And: {
            for (std::size_t i = 0; i < c->children().size(); ++i) {
                path.push_back(i);
                collect_r12(c->children()[i], fault, path, out);
                path.pop_back();
            }
            if (has_binding_clash(c)) {
                out.push_back({"fail_gen", path, 0});
            }
            return;
        }
        case ConstraintKind::Or: {
            for (std::size_t i = 0; i < c->children().size(); ++i) {
                path.push_back(i);
                collect_r12(c->children()[i], fault, path, out);
                path.pop_back();
            }
            for (std::size_t i = 0; i + 1 < c->children().size(); ++i) {
                if (c->children()[i]->is(ConstraintKind::Fail)) {
                    out.push_back({"fail_next", path, i});
                }
            }
            return;
        }
        case ConstraintKind::Next: {
            path.push_back(0);
            collect_r12(c->inner(), fault, path, out);
            path.pop_back();
            const ConstraintPtr& inner = c->inner();
            switch (inner->kind()) {
                case ConstraintKind::Fail:
                    out.push_back({"next_fail", path, 0});
                    break;
                case ConstraintKind::Id:
                    out.push_back({"next_id", path, 0});
                    break;
                case ConstraintKind::Match:
                    if (inner->pattern()->is_var()) {
                        out.push_back({"next_basic", path, 0});
                    }
                    break;
                case ConstraintKind::And:
                    out.push_back({"next_and", path, 0});
                    break;
                case ConstraintKind::Or: {
                    const bool head_is_fail =
                        inner->children().front()->is(ConstraintKind::Fail);
                    const bool applies = fault == InjectedFault::NextOrFlip
                                             ? head_is_fail
                                             : !head_is_fail;
                    if (applies) {
                        out.push_back({"next_or", path, 0});
                    }
                    break;
                }
                case ConstraintKind::Triplet:
                    out.push_back({inner->rank() < inner->rank_total() ? "match_surj_next"
                                                                       : "match_surj_last",
                                   path, 0});
                    break;
                case ConstraintKind::Next:
                    break;  // inner Next must reduce first
            }
            return;
        }
    }
}

}  // namespace

std::vector<Redex> find_redexes_r12(const ConstraintPtr& c, InjectedFault fault) {
    std::vector<Redex> out;
    std::vector<std::size_t> path;
    collect_r12(c, fault, path, out);
    return out;
}

namespace {

std::optional<Redex> walk_r3(const ConstraintPtr& c, std::vector<std::size_t>& path) {
    switch (c->kind()) {
        case ConstraintKind::And: {
            const auto& children = c->children();
            // deep redexes in later conjuncts first: the tail of a
            // conjunction is normalized before its head combines
            for (std::size_t i = children.size(); i-- > 0;) {
                path.push_back(i);
                if (auto r = walk_r3(children[i], path)) return r;
                path.pop_back();
            }
            std::optional<std::size_t> last_or;
            for (std::size_t i = 0; i < children.size(); ++i) {
                if (children[i]->is(ConstraintKind::Or)) last_or = i;
            }
            if (!last_or) return std::nullopt;
            if (*last_or + 1 < children.size()) {
                return Redex{"DNF_2", path, *last_or};
            }
            // the disjunction is the last conjunct; combine it with the
            // conjunct to its left
            const std::size_t left = children.size() - 2;
            return Redex{children[left]->is(ConstraintKind::Or) ? "DNF_2" : "DNF_1", path, left};
        }
        case ConstraintKind::Or: {
            for (std::size_t i = 0; i < c->children().size(); ++i) {
                path.push_back(i);
                if (auto r = walk_r3(c->children()[i], path)) return r;
                path.pop_back();
            }
            return std::nullopt;
        }
        case ConstraintKind::Next: {
            path.push_back(0);
            if (auto r = walk_r3(c->inner(), path)) return r;
            path.pop_back();
            return std::nullopt;
        }
        default:
            return std::nullopt;
    }
}

}  // namespace

std::optional<Redex> find_redex_r3_down(const ConstraintPtr& c) {
    std::vector<std::size_t> path;
    return walk_r3(c, path);
}

namespace {

ConstraintPtr contract(const ConstraintPtr& node, const Redex& redex, NormalizeStats& stats) {
    const std::string& rule = redex.rule;
    if (rule == "var_clash" || rule == "match_fail" || rule == "match_AC_fail" ||
        rule == "fail_gen") {
        return Constraint::fail();
    }
    if (rule == "match") {
        std::vector<ConstraintPtr> parts;
        for (std::size_t i = 0; i < node->pattern()->args().size(); ++i) {
            parts.push_back(Constraint::match(node->pattern()->args()[i],
                                              node->subject()->args()[i]));
        }
        return Constraint::conj(std::move(parts));
    }
    if (rule == "match_AC") {
        return Constraint::next(
            Constraint::triplet(node->pattern(), node->subject(), BigUint{1}));
    }
    if (rule == "fail_next") {
        const auto& children = node->children();
        std::vector<ConstraintPtr> tail(children.begin() + redex.arg + 1, children.end());
        std::vector<ConstraintPtr> parts(children.begin(), children.begin() + redex.arg);
        parts.push_back(Constraint::next(Constraint::disj(std::move(tail))));
        return Constraint::disj(std::move(parts));
    }
    if (rule == "next_fail") return Constraint::fail();
    if (rule == "next_id") return Constraint::id();
    if (rule == "next_basic") return node->inner();
    if (rule == "next_and") {
        std::vector<ConstraintPtr> parts;
        for (const ConstraintPtr& child : node->inner()->children()) {
            parts.push_back(Constraint::next(child));
        }
        return Constraint::conj(std::move(parts));
    }
    if (rule == "next_or") {
        const auto& children = node->inner()->children();
        std::vector<ConstraintPtr> parts;
        parts.push_back(Constraint::next(children.front()));
        parts.insert(parts.end(), children.begin() + 1, children.end());
        return Constraint::disj(std::move(parts));
    }
    if (rule == "match_surj_next" || rule == "match_surj_last") {
        const ConstraintPtr& triplet = node->inner();
        const TermPtr& pattern = triplet->pattern();
        const TermPtr& subject = triplet->subject();
        const std::size_t k = pattern->args().size();
        const std::size_t n = subject->args().size();
        Surjection s = unrank(n, k, triplet->rank());
        std::vector<TermPtr> groups = apply_surjection(s, subject);
        ++stats.ranks_expanded;
        std::vector<ConstraintPtr> parts;
        for (std::size_t i = 0; i < k; ++i) {
            parts.push_back(Constraint::match(pattern->args()[i], groups[i]));
        }
        ConstraintPtr body = Constraint::conj(std::move(parts));
        if (rule == "match_surj_last") {
            return body;
        }
        return Constraint::disj(
            {body, Constraint::triplet(pattern, subject, triplet->rank() + BigUint{1})});
    }
    if (rule == "DNF_1" || rule == "DNF_2") {
        const auto& children = node->children();
        const std::size_t left = redex.arg;
        std::vector<ConstraintPtr> prefix(children.begin(), children.begin() + left);
        ConstraintPtr head_part;
        ConstraintPtr tail_part;
        if (rule == "DNF_2") {
            // (A1 v A2 v ...) ^ B  with B the whole remaining conjunction
            const auto& alts = children[left]->children();
            std::vector<ConstraintPtr> rest(children.begin() + left + 1, children.end());
            std::vector<ConstraintPtr> head{alts.front()};
            head.insert(head.end(), rest.begin(), rest.end());
            head_part = Constraint::conj(std::move(head));
            std::vector<ConstraintPtr> alt_tail(alts.begin() + 1, alts.end());
            std::vector<ConstraintPtr> tail{Constraint::disj(std::move(alt_tail))};
            tail.insert(tail.end(), rest.begin(), rest.end());
            tail_part = Constraint::conj(std::move(tail));
        } else {
            // B ^ (D1 v D2 v ...) with the disjunction as the last conjunct
            const ConstraintPtr& b = children[left];
            const auto& alts = children[left + 1]->children();
            head_part = Constraint::conj({b, alts.front()});
            std::vector<ConstraintPtr> alt_tail(alts.begin() + 1, alts.end());
            tail_part = Constraint::conj({b, Constraint::disj(std::move(alt_tail))});
        }
        prefix.push_back(Constraint::disj({head_part, tail_part}));
        return Constraint::conj(std::move(prefix));
    }
    throw ContractViolation("apply_redex: unknown rule '" + rule + "'");
}

ConstraintPtr rebuild(const ConstraintPtr& node, const std::vector<std::size_t>& path,
                      std::size_t depth, const Redex& redex, NormalizeStats& stats,
                      ConstraintPtr* before, ConstraintPtr* after) {
    if (depth == path.size()) {
        *before = node;
        *after = contract(node, redex, stats);
        return *after;
    }
    const std::size_t index = path[depth];
    if (index >= node->children().size()) {
        throw ContractViolation("apply_redex: path does not exist");
    }
    std::vector<ConstraintPtr> children = node->children();
    children[index] = rebuild(children[index], path, depth + 1, redex, stats, before, after);
    switch (node->kind()) {
        case ConstraintKind::And:
            return Constraint::conj(std::move(children));
        case ConstraintKind::Or:
            return Constraint::disj(std::move(children));
        case ConstraintKind::Next:
            return Constraint::next(std::move(children.front()));
        default:
            throw ContractViolation("apply_redex: path crosses a leaf");
    }
}

}  // namespace

ConstraintPtr apply_redex(const ConstraintPtr& c, const Redex& redex,
                          const NormalizeOptions& opts, NormalizeStats& stats) {
    if (++stats.rule_applications > opts.step_budget) {
        throw StepBudgetExceeded("step budget of " + std::to_string(opts.step_budget) +
                                 " rule applications exhausted");
    }
    ConstraintPtr before;
    ConstraintPtr after;
    ConstraintPtr result = rebuild(c, redex.path, 0, redex, stats, &before, &after);
    if (opts.trace) {
        opts.trace->push_back({redex.rule, redex.path, before, after});
    }
    return result;
}

ConstraintPtr normalize_r12_steps(const ConstraintPtr& c, const NormalizeOptions& opts,
                                  NormalizeStats& stats, const RedexPicker& picker) {
    ConstraintPtr cur = c;
    while (true) {
        std::vector<Redex> redexes = find_redexes_r12(cur, opts.fault);
        if (redexes.empty()) return cur;
        const std::size_t choice = picker ? picker(redexes) : 0;
        cur = apply_redex(cur, redexes.at(choice), opts, stats);
    }
}

ConstraintPtr normalize_r3_down_steps(const ConstraintPtr& c, const NormalizeOptions& opts,
                                      NormalizeStats& stats) {
    ConstraintPtr cur = c;
    while (auto redex = find_redex_r3_down(cur)) {
        cur = apply_redex(cur, *redex, opts, stats);
    }
    return cur;
}

ConstraintPtr lazy_normal_form_steps(const ConstraintPtr& c, const NormalizeOptions& opts,
                                     NormalizeStats& stats) {
    ConstraintPtr cur = c;
    while (true) {
        ++stats.sat_iterations;
        ConstraintPtr after12 = normalize_r12_steps(cur, opts, stats);
        ConstraintPtr after3 = normalize_r3_down_steps(after12, opts, stats);
        if (equal(after3, cur)) return cur;
        cur = after3;
    }
}

ConstraintPtr replay_trace(const ConstraintPtr& initial, const ReductionTrace& trace) {
    ConstraintPtr cur = initial;
    for (const ReductionStep& step : trace) {
        // navigate, verify, substitute
        auto splice = [&](auto&& self, const ConstraintPtr& node, std::size_t depth)
            -> ConstraintPtr {
            if (depth == step.path.size()) {
                if (!equal(node, step.before)) {
                    throw ContractViolation("replay_trace: subtree mismatch for rule '" +
                                            step.rule + "'");
                }
                return step.after;
            }
            const std::size_t index = step.path[depth];
            if (index >= node->children().size()) {
                throw ContractViolation("replay_trace: invalid path");
            }
            std::vector<ConstraintPtr> children = node->children();
            children[index] = self(self, children[index], depth + 1);
            switch (node->kind()) {
                case ConstraintKind::And:
                    return Constraint::conj(std::move(children));
                case ConstraintKind::Or:
                    return Constraint::disj(std::move(children));
                case ConstraintKind::Next:
                    return Constraint::next(std::move(children.front()));
                default:
                    throw ContractViolation("replay_trace: path crosses a leaf");
            }
        };
        cur = splice(splice, cur, 0);
    }
    return cur;
}

}  // namespace acmatch
