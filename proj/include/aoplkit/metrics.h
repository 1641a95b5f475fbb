#ifndef AOPLKIT_METRICS_H
#define AOPLKIT_METRICS_H

#include <string>
#include <vector>

#include "aoplkit/evaluator.h"

namespace aoplkit {

struct PenaltyRecord {
    int rule = -1;
    std::string label;
    long long points = 0;
    int step = 0;
    ViolationKind kind = ViolationKind::ProhibitedAction;

    friend bool operator==(const PenaltyRecord &a, const PenaltyRecord &b) {
        return a.label == b.label && a.points == b.points && a.step == b.step && a.kind == b.kind;
    }
};

// One record per applicable rule that the step violates and that carries a
// penalty: prohibited action executed, obligated action omitted, action
// forbidden by an obligation executed.
std::vector<PenaltyRecord> step_penalties(const GroundPolicy &g, const DerivedSet &derived,
                                          const CompoundAction &ca, int step);

struct Trajectory {
    int first_step = 0;
    std::vector<State> states;  // actions.size() + 1 states
    std::vector<CompoundAction> actions;
};

// Builds the trajectory obtained by executing `plan` from `s0` at `first_step`.
Trajectory simulate(const Domain &d, const State &s0, const std::vector<CompoundAction> &plan, int first_step = 0);

struct MetricsOptions {
    bool executability_filter = true;
    long long high_penalty_threshold = 50;
};

struct TrajectoryMetrics {
    std::vector<PenaltyRecord> records;
    long long cumulative_penalty = 0;
    long long cumulative_time = 0;
    long long length = 0;
    long long high_penalty_hits = 0;
};

TrajectoryMetrics trajectory_metrics(const GroundPolicy &g, const Trajectory &t, const MetricsOptions &opts = {});

}  // namespace aoplkit

#endif
