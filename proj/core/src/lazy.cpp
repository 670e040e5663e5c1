#include "acmatch/lazy.hpp"

#include <map>

#include "acmatch/error.hpp"
#include "acmatch/rewrite_step.hpp"
#include "acmatch/surjection.hpp"

namespace acmatch {

namespace {

struct Ctx {
    const NormalizeOptions& opts;
    NormalizeStats& stats;

    void tick() {
        if (++stats.rule_applications > opts.step_budget) {
            throw StepBudgetExceeded("step budget of " + std::to_string(opts.step_budget) +
                                     " rule applications exhausted");
        }
    }
};

ConstraintPtr nf12(const ConstraintPtr& c, Ctx& ctx);

// Conjunction of normalized parts: algebraic normalization via the factory,
// then the fail_gen scan over the flattened sequence.
ConstraintPtr finish_and(std::vector<ConstraintPtr> parts, Ctx& ctx) {
    ConstraintPtr combined = Constraint::conj(std::move(parts));
    if (!combined->is(ConstraintKind::And)) return combined;
    std::map<std::string, TermPtr> first;
    for (const ConstraintPtr& child : combined->children()) {
        if (!child->is(ConstraintKind::Match) || !child->pattern()->is_var()) continue;
        auto [it, inserted] = first.emplace(child->pattern()->var_name(), child->subject());
        if (!inserted && !ac_equal(it->second, child->subject())) {
            ctx.tick();  // fail_gen
            return Constraint::fail();
        }
    }
    return combined;
}

// Disjunction of normalized parts: fuse an internal F with its tail
// (fail_next), which re-activates the delayed computations there.
ConstraintPtr finish_or(std::vector<ConstraintPtr> parts, Ctx& ctx) {
    ConstraintPtr combined = Constraint::disj(std::move(parts));
    if (!combined->is(ConstraintKind::Or)) return combined;
    const auto& children = combined->children();
    for (std::size_t i = 0; i + 1 < children.size(); ++i) {
        if (!children[i]->is(ConstraintKind::Fail)) continue;
        ctx.tick();  // fail_next
        std::vector<ConstraintPtr> tail(children.begin() + i + 1, children.end());
        ConstraintPtr fused = nf12(Constraint::next(Constraint::disj(std::move(tail))), ctx);
        std::vector<ConstraintPtr> result(children.begin(), children.begin() + i);
        result.push_back(std::move(fused));
        // the fused tail is already normal, and anything before i was F-free
        return Constraint::disj(std::move(result));
    }
    return combined;
}

ConstraintPtr expand_triplet(const ConstraintPtr& triplet, Ctx& ctx) {
    ctx.tick();  // match_surj_next or match_surj_last
    ++ctx.stats.ranks_expanded;
    const TermPtr& pattern = triplet->pattern();
    const TermPtr& subject = triplet->subject();
    const std::size_t k = pattern->args().size();
    Surjection s = unrank(subject->args().size(), k, triplet->rank());
    std::vector<TermPtr> groups = apply_surjection(s, subject);
    std::vector<ConstraintPtr> parts;
    parts.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        parts.push_back(nf12(Constraint::match(pattern->args()[i], groups[i]), ctx));
    }
    ConstraintPtr body = finish_and(std::move(parts), ctx);
    if (triplet->rank() == triplet->rank_total()) {
        return body;
    }
    ConstraintPtr rest = Constraint::triplet(pattern, subject, triplet->rank() + BigUint{1});
    return finish_or({std::move(body), std::move(rest)}, ctx);
}

// Distributes Next over an already normalized constraint.
ConstraintPtr force(const ConstraintPtr& inner, Ctx& ctx) {
    switch (inner->kind()) {
        case ConstraintKind::Fail:
            ctx.tick();  // next_fail
            return Constraint::fail();
        case ConstraintKind::Id:
            ctx.tick();  // next_id
            return Constraint::id();
        case ConstraintKind::Match:
            if (inner->pattern()->is_var()) {
                ctx.tick();  // next_basic
                return inner;
            }
            // no rule: cannot arise from a matching problem
            return Constraint::next(inner);
        case ConstraintKind::And: {
            ctx.tick();  // next_and
            std::vector<ConstraintPtr> parts;
            parts.reserve(inner->children().size());
            for (const ConstraintPtr& child : inner->children()) {
                parts.push_back(force(child, ctx));
            }
            return finish_and(std::move(parts), ctx);
        }
        case ConstraintKind::Or: {
            const bool head_is_fail = inner->children().front()->is(ConstraintKind::Fail);
            const bool applies = ctx.opts.fault == InjectedFault::NextOrFlip ? head_is_fail
                                                                             : !head_is_fail;
            if (!applies) {
                return Constraint::next(inner);  // stuck (only under the seeded fault)
            }
            ctx.tick();  // next_or
            std::vector<ConstraintPtr> parts;
            parts.push_back(force(inner->children().front(), ctx));
            parts.insert(parts.end(), inner->children().begin() + 1, inner->children().end());
            return finish_or(std::move(parts), ctx);
        }
        case ConstraintKind::Triplet:
            return expand_triplet(inner, ctx);
        case ConstraintKind::Next:
            return Constraint::next(inner);  // inner is stuck itself
    }
    return Constraint::next(inner);
}

ConstraintPtr nf12_match(const ConstraintPtr& c, Ctx& ctx) {
    const TermPtr& pattern = c->pattern();
    const TermPtr& subject = c->subject();
    if (pattern->is_var()) {
        return c;
    }
    if (subject->is_var()) {
        ctx.tick();  // var_clash
        return Constraint::fail();
    }
    if (&pattern->symbol() != &subject->symbol()) {
        ctx.tick();  // match_fail
        return Constraint::fail();
    }
    if (!pattern->symbol().is_ac()) {
        ctx.tick();  // match
        std::vector<ConstraintPtr> parts;
        parts.reserve(pattern->args().size());
        for (std::size_t i = 0; i < pattern->args().size(); ++i) {
            parts.push_back(
                nf12(Constraint::match(pattern->args()[i], subject->args()[i]), ctx));
        }
        return finish_and(std::move(parts), ctx);
    }
    if (pattern->args().size() > subject->args().size()) {
        ctx.tick();  // match_AC_fail
        return Constraint::fail();
    }
    ctx.tick();  // match_AC: t << u ~> Next(<t, u, 1>)
    return force(Constraint::triplet(pattern, subject, BigUint{1}), ctx);
}

ConstraintPtr nf12(const ConstraintPtr& c, Ctx& ctx) {
    switch (c->kind()) {
        case ConstraintKind::Fail:
        case ConstraintKind::Id:
        case ConstraintKind::Triplet:
            return c;
        case ConstraintKind::Match:
            return nf12_match(c, ctx);
        case ConstraintKind::And: {
            std::vector<ConstraintPtr> parts;
            parts.reserve(c->children().size());
            for (const ConstraintPtr& child : c->children()) {
                parts.push_back(nf12(child, ctx));
            }
            return finish_and(std::move(parts), ctx);
        }
        case ConstraintKind::Or: {
            std::vector<ConstraintPtr> parts;
            parts.reserve(c->children().size());
            for (const ConstraintPtr& child : c->children()) {
                parts.push_back(nf12(child, ctx));
            }
            return finish_or(std::move(parts), ctx);
        }
        case ConstraintKind::Next:
            return force(nf12(c->inner(), ctx), ctx);
    }
    return c;
}

ConstraintPtr r3_down(const ConstraintPtr& c, Ctx& ctx) {
    switch (c->kind()) {
        case ConstraintKind::Fail:
        case ConstraintKind::Id:
        case ConstraintKind::Match:
        case ConstraintKind::Triplet:
            return c;
        case ConstraintKind::Next:
            return Constraint::next(r3_down(c->inner(), ctx));
        case ConstraintKind::Or: {
            std::vector<ConstraintPtr> parts;
            parts.reserve(c->children().size());
            for (const ConstraintPtr& child : c->children()) {
                parts.push_back(r3_down(child, ctx));
            }
            return Constraint::disj(std::move(parts));
        }
        case ConstraintKind::And: {
            std::vector<ConstraintPtr> parts;
            parts.reserve(c->children().size());
            for (const ConstraintPtr& child : c->children()) {
                parts.push_back(r3_down(child, ctx));
            }
            ConstraintPtr combined = Constraint::conj(std::move(parts));
            if (!combined->is(ConstraintKind::And)) return combined;

            std::vector<std::vector<ConstraintPtr>> alternatives;
            bool any_or = false;
            for (const ConstraintPtr& child : combined->children()) {
                if (child->is(ConstraintKind::Or)) {
                    any_or = true;
                    alternatives.push_back(child->children());
                } else {
                    alternatives.push_back({child});
                }
            }
            if (!any_or) return combined;

            // Head-first expansion: the product enumerates index tuples in
            // lexicographic order with the leftmost conjunct as the major
            // index, so the first disjunct combines the heads of every
            // disjunction.
            std::vector<ConstraintPtr> disjuncts;
            std::vector<std::size_t> odo(alternatives.size(), 0);
            while (true) {
                ctx.tick();  // one DNF expansion step per produced disjunct
                std::vector<ConstraintPtr> tuple;
                tuple.reserve(alternatives.size());
                for (std::size_t i = 0; i < alternatives.size(); ++i) {
                    tuple.push_back(alternatives[i][odo[i]]);
                }
                disjuncts.push_back(Constraint::conj(std::move(tuple)));
                std::size_t pos = alternatives.size();
                while (pos-- > 0) {
                    if (++odo[pos] < alternatives[pos].size()) break;
                    odo[pos] = 0;
                    if (pos == 0) return Constraint::disj(std::move(disjuncts));
                }
            }
        }
    }
    return c;
}

}  // namespace

ConstraintPtr normalize_R12(const ConstraintPtr& c, const NormalizeOptions& opts,
                            NormalizeStats& stats) {
    if (opts.trace) {
        return normalize_r12_steps(c, opts, stats);
    }
    Ctx ctx{opts, stats};
    return nf12(c, ctx);
}

ConstraintPtr normalize_R3_down(const ConstraintPtr& c, const NormalizeOptions& opts,
                                NormalizeStats& stats) {
    if (opts.trace) {
        return normalize_r3_down_steps(c, opts, stats);
    }
    Ctx ctx{opts, stats};
    return r3_down(c, ctx);
}

ConstraintPtr lazy_normal_form(const ConstraintPtr& c, const NormalizeOptions& opts,
                               NormalizeStats& stats) {
    if (opts.trace) {
        return lazy_normal_form_steps(c, opts, stats);
    }
    Ctx ctx{opts, stats};
    ConstraintPtr cur = c;
    while (true) {
        ++stats.sat_iterations;
        ConstraintPtr after12 = nf12(cur, ctx);
        ConstraintPtr after3 = r3_down(after12, ctx);
        if (equal(after3, cur)) return cur;
        cur = after3;
    }
}

NormalFormFn normal_form_fn(NormalizeOptions opts) {
    return [opts](const ConstraintPtr& c) {
        NormalizeStats stats;
        return lazy_normal_form(c, opts, stats);
    };
}

bool SolutionStream::exhausted() const { return current_->is(ConstraintKind::Fail); }

std::optional<Substitution> SolutionStream::head() const {
    if (current_->is(ConstraintKind::Fail)) return std::nullopt;
    if (current_->is(ConstraintKind::Id)) return Substitution{};
    if (current_->is(ConstraintKind::Or)) {
        const ConstraintPtr& first = current_->children().front();
        if (first->is(ConstraintKind::Id)) return Substitution{};
        return extract_substitution(first);  // throws unless a land-substitution
    }
    return extract_substitution(current_);
}

void SolutionStream::advance() {
    if (exhausted()) {
        throw ContractViolation("solution stream: advance past exhaustion");
    }
    if (!current_->is(ConstraintKind::Or)) {
        // Id or a bare land-substitution: that was the only solution
        head();  // validates the shape
        current_ = Constraint::fail();
        return;
    }
    std::vector<ConstraintPtr> tail(current_->children().begin() + 1,
                                    current_->children().end());
    // the step budget applies per normalization, not to the whole drain
    NormalizeStats step;
    current_ = lazy_normal_form(Constraint::next(Constraint::disj(std::move(tail))), opts_,
                                step);
    stats_ += step;
}

SolutionStream match_lazy(const TermPtr& pattern, const TermPtr& subject,
                          const NormalizeOptions& opts) {
    if (!is_flat(pattern) || !is_flat(subject)) {
        throw ContractViolation("match_lazy: inputs must be flat");
    }
    const Signature* sig = nullptr;
    auto owner_of = [&](auto&& self, const TermPtr& t) -> const Signature* {
        if (t->is_app()) return t->symbol().owner;
        for (const TermPtr& child : t->args()) {
            if (const Signature* s = self(self, child)) return s;
        }
        return nullptr;
    };
    sig = owner_of(owner_of, pattern);
    if (!sig) sig = owner_of(owner_of, subject);
    if (sig && (!belongs_to(pattern, *sig) || !belongs_to(subject, *sig))) {
        throw DomainError("match_lazy: pattern and subject use different signatures");
    }
    NormalizeStats stats;
    ConstraintPtr nf = lazy_normal_form(Constraint::match(pattern, subject), opts, stats);
    return SolutionStream(std::move(nf), opts, stats);
}

}  // namespace acmatch
