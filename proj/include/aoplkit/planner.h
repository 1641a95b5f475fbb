#ifndef AOPLKIT_PLANNER_H
#define AOPLKIT_PLANNER_H

#include <optional>
#include <string>
#include <vector>

#include "aoplkit/config.h"
#include "aoplkit/errors.h"
#include "aoplkit/metrics.h"

namespace aoplkit {

enum class ModeKind { Emergency, NonEmergency, BoundedTime, BaselineRisky, BaselineNormal };
enum class HighPenalty { Forbid, MinimizeTop, Off };

struct BehaviorMode {
    ModeKind kind = ModeKind::Emergency;
    long long max_time = 0;  // BoundedTime only
    HighPenalty high_penalty = HighPenalty::Forbid;
    long long threshold = 50;

    // emergency, non-emergency, bounded:<t>, risky, normal
    static BehaviorMode parse(const std::string &text);
    std::string name() const;
};

enum class Metric { HighPenaltyHits, Time, Penalty, Length, NonStronglyCompliant };
std::string_view metric_name(Metric m);

// Tiers minimised lexicographically, highest priority first. The baseline
// Normal mode maximises the strongly-compliant share at equal length, which
// is the same as minimising the number of other elements.
std::vector<Metric> objective_tiers(const BehaviorMode &m);

struct PlanOptions {
    bool executability_filter = true;
    int threads = 1;
    std::optional<int> horizon;  // overrides the problem's
    bool memoize = true;
};

struct Explanation {
    PenaltyRecord record;
    std::string action;     // what was done at that step
    std::string rule_text;  // source rule as written
};

struct PlanResult {
    BehaviorMode mode;
    std::vector<CompoundAction> actions;
    std::vector<std::string> action_names;
    TrajectoryMetrics metrics;
    std::vector<Metric> tiers;
    std::vector<long long> objective;
    std::vector<Explanation> explanations;
    long long strongly_compliant_elements = 0;
    long long elements = 0;
    std::size_t nodes = 0;
    double wall_seconds = 0;
};

class NoPlan : public Error {
public:
    enum class Reason { HorizonTooShort, Constraints, Unreachable };
    NoPlan(Reason r, const std::string &detail);
    Reason reason;
};

std::string_view reason_name(NoPlan::Reason r);

PlanResult plan(const Domain &d, const PlanningProblem &problem, const Policy &p, const GroundPolicy &g,
                const BehaviorMode &mode, const PlanOptions &opts = {});
PlanResult plan(const LoadedProblem &lp, const Policy &p, const BehaviorMode &mode, const PlanOptions &opts = {});

// Evaluates a given action sequence under a mode: metrics, objective vector,
// compliance counts. Throws NoPlan(Constraints) when the sequence breaks a
// hard constraint of the mode, ExecError when it is not executable.
PlanResult score_plan(const Domain &d, const PlanningProblem &problem, const Policy &p, const GroundPolicy &g,
                      const BehaviorMode &mode, const std::vector<CompoundAction> &actions,
                      const PlanOptions &opts = {});

struct ModeRow {
    BehaviorMode mode;
    std::optional<PlanResult> result;
    std::string error;  // NoPlan / ambiguity text when result is empty
    double wall_seconds = 0;
};

std::vector<ModeRow> compare_modes(const LoadedProblem &lp, const Policy &p, const std::vector<BehaviorMode> &modes,
                                   const PlanOptions &opts = {});

}  // namespace aoplkit

#endif
