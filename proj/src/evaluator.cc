#include "aoplkit/evaluator.h"

#include <algorithm>

#include "aoplkit/errors.h"

namespace aoplkit {

std::string_view status_name(ActivationStatus s) {
    switch (s) {
    case ActivationStatus::Applicable: return "applicable";
    case ActivationStatus::DefeatedByStrict: return "defeated_by_strict";
    case ActivationStatus::DefeatedByPrefer: return "defeated_by_prefer";
    case ActivationStatus::BodyUnsatisfied: return "body_unsatisfied";
    case ActivationStatus::NotExecutable: return "not_executable";
    }
    return "?";
}

std::string_view authorization_name(Authorization a) {
    switch (a) {
    case Authorization::StronglyCompliant: return "strongly-compliant";
    case Authorization::Underspecified: return "underspecified";
    case Authorization::NonCompliant: return "non-compliant";
    case Authorization::Mixed: return "mixed";
    }
    return "?";
}

std::string_view violation_name(ViolationKind k) {
    switch (k) {
    case ViolationKind::ProhibitedAction: return "prohibited-action";
    case ViolationKind::UnfulfilledObl: return "unfulfilled-obl";
    case ViolationKind::ForbiddenByObl: return "forbidden-by-obl";
    }
    return "?";
}

bool DerivedSet::contains(HeadForm f, int action) const {
    return std::binary_search(literals.begin(), literals.end(), DerivedLiteral{f, action});
}

std::size_t DerivedSet::applicable_count() const {
    return std::count_if(activations.begin(), activations.end(), [](const RuleActivation &a) {
        return a.status == ActivationStatus::Applicable;
    });
}

std::string render_literal(const GroundPolicy &g, const DerivedLiteral &l) {
    return lp_head(l.form, g.domain->action(l.action).key);
}

DerivedSet applicable_rules(const GroundPolicy &g, const State &s, int step, const EvalOptions &opts) {
    const Domain &d = *g.domain;
    const std::size_t n = g.rules.size();
    DerivedSet out;
    out.step = step;
    out.activations.resize(n);

    std::vector<char> body(n);
    for (std::size_t i = 0; i < n; ++i)
        body[i] = body_holds(g.rules[i], s);

    // executability is a property of the head action; cache per action
    std::vector<signed char> exec_cache(d.action_count(), -1);
    auto exec = [&](int a) {
        if (!opts.executability_filter)
            return true;
        if (exec_cache[a] < 0)
            exec_cache[a] = executable(d, s, a);
        return exec_cache[a] == 1;
    };

    // Strict rules first; they are never defeated.
    for (std::size_t i = 0; i < n; ++i) {
        const GroundRule &r = g.rules[i];
        RuleActivation &act = out.activations[i];
        act.rule = static_cast<int>(i);
        if (!body[i])
            act.status = ActivationStatus::BodyUnsatisfied;
        else if (!exec(r.action))
            act.status = ActivationStatus::NotExecutable;
        else
            act.status = ActivationStatus::Applicable;  // defeasible: provisional
    }

    std::vector<int> survivors;
    for (std::size_t i = 0; i < n; ++i) {
        const GroundRule &r = g.rules[i];
        RuleActivation &act = out.activations[i];
        if (r.strictness != Strictness::Defeasible || act.status != ActivationStatus::Applicable)
            continue;
        // ab(r): a preferred rule's body holds (executability plays no part)
        auto pref = std::find_if(r.preferred_over_me.begin(), r.preferred_over_me.end(),
                                 [&](int j) { return body[j] != 0; });
        if (pref != r.preferred_over_me.end()) {
            act.status = ActivationStatus::DefeatedByPrefer;
            act.by = *pref;
            continue;
        }
        HeadForm opp = complement(r.form);
        for (int j : g.by_action[r.action]) {
            const GroundRule &o = g.rules[j];
            if (o.strictness == Strictness::Strict && o.form == opp &&
                out.activations[j].status == ActivationStatus::Applicable) {
                act.status = ActivationStatus::DefeatedByStrict;
                act.by = j;
                break;
            }
        }
        if (act.status == ActivationStatus::Applicable)
            survivors.push_back(static_cast<int>(i));
    }

    // Surviving defeasible rules with complementary heads: two answer sets.
    for (int i : survivors) {
        const GroundRule &r = g.rules[i];
        HeadForm opp = complement(r.form);
        for (int j : g.by_action[r.action]) {
            if (j <= i)
                continue;
            const GroundRule &o = g.rules[j];
            if (o.strictness == Strictness::Defeasible && o.form == opp &&
                out.activations[j].status == ActivationStatus::Applicable) {
                if (opts.throw_on_ambiguity)
                    throw AmbiguityError(r.key, o.key, step);
                out.ambiguous = true;
                out.diagnostics.push_back({"ambiguity", r.key + " vs " + o.key, i, j});
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i)
        if (out.activations[i].status == ActivationStatus::Applicable)
            out.literals.push_back({g.rules[i].form, g.rules[i].action});
    std::sort(out.literals.begin(), out.literals.end());
    out.literals.erase(std::unique(out.literals.begin(), out.literals.end()), out.literals.end());

    // Strict rules with complementary heads both apply (no answer-set
    // conflict, since holds/2 atoms are distinct), but it is worth reporting.
    for (std::size_t i = 0; i < n; ++i) {
        const GroundRule &r = g.rules[i];
        if (r.strictness != Strictness::Strict || out.activations[i].status != ActivationStatus::Applicable)
            continue;
        for (int j : g.by_action[r.action])
            if (j > static_cast<int>(i) && g.rules[j].strictness == Strictness::Strict &&
                g.rules[j].form == complement(r.form) &&
                out.activations[j].status == ActivationStatus::Applicable)
                out.diagnostics.push_back({"strict-conflict", r.key + " vs " + g.rules[j].key,
                                           static_cast<int>(i), j});
    }
    for (const DerivedLiteral &l : out.literals)
        if (l.form == HeadForm::NegPermitted && out.contains(HeadForm::Obl, l.action))
            out.diagnostics.push_back(
                {"modality-conflict", "-permitted and obl both derived for " + d.action(l.action).key});
    return out;
}

ComplianceVerdict classify_event(const GroundPolicy &g, const DerivedSet &derived, const CompoundAction &ca) {
    ComplianceVerdict v;
    auto in_ca = [&](int a) { return std::find(ca.begin(), ca.end(), a) != ca.end(); };
    for (int e : ca) {
        if (derived.contains(HeadForm::NegPermitted, e))
            v.per_element.push_back(Authorization::NonCompliant);
        else if (derived.contains(HeadForm::Permitted, e))
            v.per_element.push_back(Authorization::StronglyCompliant);
        else
            v.per_element.push_back(Authorization::Underspecified);
    }
    if (v.per_element.empty())
        v.authorization = Authorization::Underspecified;
    else if (std::all_of(v.per_element.begin(), v.per_element.end(),
                         [&](Authorization a) { return a == v.per_element.front(); }))
        v.authorization = v.per_element.front();
    else
        v.authorization = Authorization::Mixed;

    for (const RuleActivation &act : derived.activations) {
        if (act.status != ActivationStatus::Applicable)
            continue;
        const GroundRule &r = g.rules[act.rule];
        switch (r.form) {
        case HeadForm::NegPermitted:
            if (in_ca(r.action))
                v.violations.push_back({act.rule, ViolationKind::ProhibitedAction, r.action});
            break;
        case HeadForm::Obl:
            if (!in_ca(r.action)) {
                v.violations.push_back({act.rule, ViolationKind::UnfulfilledObl, r.action});
                v.obligation_compliant = false;
            }
            break;
        case HeadForm::OblNeg:
            if (in_ca(r.action)) {
                v.violations.push_back({act.rule, ViolationKind::ForbiddenByObl, r.action});
                v.obligation_compliant = false;
            }
            break;
        default:
            break;
        }
    }
    v.strongly_compliant = v.authorization == Authorization::StronglyCompliant && v.obligation_compliant;
    return v;
}

ComplianceVerdict classify_event(const GroundPolicy &g, const State &s, const CompoundAction &ca, int step,
                                 const EvalOptions &opts) {
    return classify_event(g, applicable_rules(g, s, step, opts), ca);
}

}  // namespace aoplkit
