#include "aoplkit/metrics.h"

#include <algorithm>

#include "aoplkit/errors.h"

namespace aoplkit {

std::vector<PenaltyRecord> step_penalties(const GroundPolicy &g, const DerivedSet &derived,
                                          const CompoundAction &ca, int step) {
    std::vector<PenaltyRecord> out;
    auto in_ca = [&](int a) { return std::find(ca.begin(), ca.end(), a) != ca.end(); };
    for (const RuleActivation &act : derived.activations) {
        if (act.status != ActivationStatus::Applicable)
            continue;
        const GroundRule &r = g.rules[act.rule];
        if (r.penalty_points.empty())
            continue;
        ViolationKind kind;
        if (r.form == HeadForm::NegPermitted && in_ca(r.action))
            kind = ViolationKind::ProhibitedAction;
        else if (r.form == HeadForm::Obl && !in_ca(r.action))
            kind = ViolationKind::UnfulfilledObl;
        else if (r.form == HeadForm::OblNeg && in_ca(r.action))
            kind = ViolationKind::ForbiddenByObl;
        else
            continue;
        if (r.penalty_points.size() > 1)
            throw AmbiguousPenalty(r.key, step);
        out.push_back({act.rule, r.key, r.penalty_points.front(), step, kind});
    }
    return out;
}

Trajectory simulate(const Domain &d, const State &s0, const std::vector<CompoundAction> &plan, int first_step) {
    Trajectory t;
    t.first_step = first_step;
    t.states.push_back(s0);
    for (std::size_t i = 0; i < plan.size(); ++i) {
        t.states.push_back(successor(d, t.states.back(), plan[i], first_step + static_cast<int>(i)));
        t.actions.push_back(plan[i]);
    }
    return t;
}

TrajectoryMetrics trajectory_metrics(const GroundPolicy &g, const Trajectory &t, const MetricsOptions &opts) {
    TrajectoryMetrics m;
    EvalOptions eo;
    eo.executability_filter = opts.executability_filter;
    for (std::size_t i = 0; i < t.actions.size(); ++i) {
        int step = t.first_step + static_cast<int>(i);
        DerivedSet ds = applicable_rules(g, t.states[i], step, eo);
        for (PenaltyRecord &r : step_penalties(g, ds, t.actions[i], step)) {
            m.cumulative_penalty += r.points;
            if (r.points >= opts.high_penalty_threshold)
                ++m.high_penalty_hits;
            m.records.push_back(std::move(r));
        }
        m.cumulative_time += duration(*g.domain, t.actions[i]);
        if (!t.actions[i].empty())
            ++m.length;
    }
    return m;
}

}  // namespace aoplkit
