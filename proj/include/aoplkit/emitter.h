#ifndef AOPLKIT_EMITTER_H
#define AOPLKIT_EMITTER_H

#include <optional>
#include <string>
#include <vector>

#include "aoplkit/domain.h"
#include "aoplkit/policy.h"

namespace aoplkit {

// "head :- b1, ..., bn." / "head." / ":~ body. [w@p, terms]"
struct AspRuleText {
    std::string head;
    std::vector<std::string> body;
    // weak constraints only
    std::string weight;

    std::string str() const;
};

enum class EmitMode { None, Emergency, NonEmergency };
enum class HighPenaltyRule { None, Hard, Soft };

struct EmitOptions {
    bool include_executability_refinement = true;
    bool aggregates = true;  // cumulative_penalty / cumulative_time via #sum
    EmitMode mode = EmitMode::None;
    HighPenaltyRule high_penalty = HighPenaltyRule::None;
    long long high_penalty_threshold = 50;
    std::optional<long long> max_time;  // bounded-time mode
};

// E(P). With `only` set, emits just the block of the rule with that label
// functor (its facts, the prefers it wins and its penalties).
std::string emit_policy_encoding(const Policy &p, const DomainSignature &sig, const std::string &only = "");

// The policy-independent program R plus penalty, time and mode rules.
// Duration rules come from `d`'s table when given.
std::string emit_support_rules(const EmitOptions &opts, const Domain *d = nullptr);

// Signature, statics, initial state, timeline, executability and goal facts.
std::string emit_instance(const Domain &d, const PlanningProblem &p);

// Removes every whitespace character; the golden-file comparison form.
std::string canonicalize(const std::string &lp_text);

}  // namespace aoplkit

#endif
