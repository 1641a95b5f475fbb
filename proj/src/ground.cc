#include "aoplkit/ground.h"

#include <algorithm>
#include <map>

#include "aoplkit/errors.h"
#include "aoplkit/validate.h"

namespace aoplkit {
namespace {

BodyLiteral substitute_literal(const BodyLiteral &l, const Binding &b) {
    if (auto d = std::get_if<DomainLiteral>(&l))
        return DomainLiteral{substitute(d->atom, b), d->negated};
    ArithConstraint a = std::get<ArithConstraint>(l);
    for (LinearExpr *e : {&a.lhs, &a.rhs}) {
        e->first = substitute(e->first, b);
        if (e->op)
            e->second = substitute(e->second, b);
    }
    return a;
}

// Static literals and comparisons under a complete binding.
bool constant_literal_holds(const BodyLiteral &l, const Binding &b, const StaticFacts &st) {
    if (auto d = std::get_if<DomainLiteral>(&l))
        return st.holds(substitute(d->atom, b)) != d->negated;
    return std::get<ArithConstraint>(l).evaluate(b).value_or(false);
}

// Extends each binding by joining `pattern` against the true statics.
std::vector<Binding> join(const std::vector<Binding> &in, const Term &pattern, const StaticFacts &st) {
    std::vector<Binding> out;
    auto it = st.by_functor.find(pattern.name);
    if (it == st.by_functor.end())
        return out;
    for (const Binding &b : in) {
        Term p = substitute(pattern, b);
        for (const Term &fact : it->second) {
            if (fact.arity() != p.arity())
                continue;
            Binding nb = b;
            if (match(p, fact, nb))
                out.push_back(std::move(nb));
        }
    }
    return out;
}

}  // namespace

bool body_holds(const GroundRule &r, const State &s) {
    if (!r.constant_ok)
        return false;
    for (const FluentLiteral &l : r.fluent_body)
        if (!s.holds(l))
            return false;
    return true;
}

std::string head_text(const GroundPolicy &g, const GroundRule &r) {
    return lp_head(r.form, g.domain->action(r.action).key);
}

GroundPolicy ground_policy(const Policy &p, const Domain &d, const GroundOptions &opts) {
    GroundPolicy g;
    g.domain = &d;
    g.by_action.resize(d.action_count());
    const StaticFacts &st = *d.statics;

    // label functor/arity -> ground rule ids
    std::map<std::pair<std::string, std::size_t>, std::vector<int>> by_label;

    for (std::size_t ri = 0; ri < p.rules.size(); ++ri) {
        const PolicyRule &r = p.rules[ri];
        auto unbound = unbound_label_variables(r, d.sig);
        if (!unbound.empty())
            throw EmitError("rule " + r.label.str() + ": label variable " + unbound.front() +
                            " cannot be bound by any action or static");

        std::vector<Binding> bindings;
        const Term &act = r.head.happening.action;
        for (const GroundAction &ga : d.model.actions) {
            Binding b;
            if (match(act, ga.term, b))
                bindings.push_back(std::move(b));
        }
        for (std::size_t li : binding_literals(r, d.sig))
            bindings = join(bindings, std::get<DomainLiteral>(r.body[li]).atom, st);

        for (const Binding &b : bindings) {
            GroundRule gr;
            gr.label = substitute(r.label, b);
            gr.key = gr.label.str();
            if (g.by_key.count(gr.key))
                continue;  // two bindings giving the same label
            gr.strictness = r.strictness;
            gr.form = r.head.form();
            gr.action = d.action_id(substitute(act, b));
            gr.source = static_cast<int>(ri);
            for (const BodyLiteral &l : r.body) {
                gr.body.push_back(substitute_literal(l, b));
                const auto *dl = std::get_if<DomainLiteral>(&l);
                if (dl && d.sig.classify(dl->atom.name, dl->atom.arity()) == SymbolClass::Fluent) {
                    int id = d.fluent_id(substitute(dl->atom, b));
                    if (id >= 0)
                        gr.fluent_body.push_back({id, !dl->negated});
                    else if (!dl->negated)
                        gr.constant_ok = false;  // outside the signature: never true
                } else if (!constant_literal_holds(l, b, st)) {
                    gr.constant_ok = false;
                }
            }
            if (opts.prune_unsatisfiable && !gr.constant_ok)
                continue;
            for (const PenaltyStatement &pen : p.penalties) {
                Binding pb;
                if (!match(pen.target, gr.label, pb))
                    continue;
                bool ok = std::all_of(pen.condition.begin(), pen.condition.end(),
                                      [&](const BodyLiteral &l) { return constant_literal_holds(l, pb, st); });
                if (ok)
                    gr.penalty_points.push_back(pen.points);
            }
            int id = static_cast<int>(g.rules.size());
            g.by_key.emplace(gr.key, id);
            g.by_action[gr.action].push_back(id);
            by_label[{r.label.name, r.label.arity()}].push_back(id);
            g.rules.push_back(std::move(gr));
        }
    }

    for (const PreferStatement &pr : p.prefers) {
        auto hi = by_label.find({pr.preferred.name, pr.preferred.arity()});
        auto lo = by_label.find({pr.overridden.name, pr.overridden.arity()});
        if (hi == by_label.end() || lo == by_label.end())
            continue;
        for (int a : hi->second) {
            Binding b;
            if (!match(pr.preferred, g.rules[a].label, b))
                continue;
            Term target = substitute(pr.overridden, b);
            if (target.is_ground()) {
                auto it = g.by_key.find(target.str());
                if (it != g.by_key.end())
                    g.rules[it->second].preferred_over_me.push_back(a);
                continue;
            }
            for (int c : lo->second) {
                Binding b2 = b;
                if (match(target, g.rules[c].label, b2))
                    g.rules[c].preferred_over_me.push_back(a);
            }
        }
    }
    for (GroundRule &r : g.rules) {
        std::sort(r.preferred_over_me.begin(), r.preferred_over_me.end());
        r.preferred_over_me.erase(std::unique(r.preferred_over_me.begin(), r.preferred_over_me.end()),
                                  r.preferred_over_me.end());
    }
    return g;
}

}  // namespace aoplkit
