#ifndef AOPLKIT_GROUND_H
#define AOPLKIT_GROUND_H

#include <string>
#include <unordered_map>
#include <vector>

#include "aoplkit/domain.h"
#include "aoplkit/policy.h"

namespace aoplkit {

struct GroundRule {
    Term label;
    std::string key;  // compact label rendering
    Strictness strictness = Strictness::Strict;
    HeadForm form = HeadForm::Permitted;
    int action = -1;  // domain action id of the head
    std::vector<BodyLiteral> body;
    // Static and arithmetic members, evaluated once.
    bool constant_ok = true;
    // Fluent members; the body holds iff constant_ok and all of these hold.
    std::vector<FluentLiteral> fluent_body;
    // Points of every penalty statement whose condition holds for this
    // instance. More than one entry is an authoring error reported when the
    // rule is charged.
    std::vector<long long> penalty_points;
    // Ground rules declared preferred over this one.
    std::vector<int> preferred_over_me;
    int source = -1;  // index into Policy::rules
};

struct GroundOptions {
    bool prune_unsatisfiable = false;
};

struct GroundPolicy {
    const Domain *domain = nullptr;
    std::vector<GroundRule> rules;
    std::vector<std::vector<int>> by_action;
    std::unordered_map<std::string, int> by_key;

    const GroundRule &rule(int i) const { return rules[i]; }
};

// Ground instances of every rule: the head action pattern is matched against
// the domain's actions and the result joined with the binding static
// literals. Throws EmitError when a label variable stays unbound.
GroundPolicy ground_policy(const Policy &p, const Domain &d, const GroundOptions &opts = {});

bool body_holds(const GroundRule &r, const State &s);

// lp(hd) of a ground head, e.g. neg(permitted(drive(6,8,45))).
std::string head_text(const GroundPolicy &g, const GroundRule &r);

}  // namespace aoplkit

#endif
