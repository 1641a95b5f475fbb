#ifndef AOPLKIT_DOMAIN_H
#define AOPLKIT_DOMAIN_H

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "aoplkit/term.h"

namespace aoplkit {

enum class SymbolClass { None, Static, Fluent, Action };

struct Schema {
    std::string name;
    std::vector<std::string> sorts;
};

struct DomainSignature {
    std::map<std::string, std::vector<Term>> sorts;
    std::vector<Schema> statics;
    std::vector<Schema> fluents;
    std::vector<Schema> actions;

    SymbolClass classify(const std::string &name, std::size_t arity) const;
    // Schema with this name regardless of arity, for arity diagnostics.
    const Schema *find_any(const std::string &name, SymbolClass *cls = nullptr) const;
    // All ground atoms of a schema, in sort order.
    std::vector<Term> instances(const Schema &s) const;
};

// Closed world: the true static atoms; everything else in the signature is false.
struct StaticFacts {
    std::unordered_set<std::string> true_keys;
    std::map<std::string, std::vector<Term>> by_functor;

    void add(const Term &t);
    bool holds(const Term &t) const { return true_keys.count(t.str()) != 0; }
};

struct FluentLiteral {
    int fluent = -1;
    bool value = true;

    friend bool operator==(const FluentLiteral &, const FluentLiteral &) = default;
};

struct State {
    std::shared_ptr<const StaticFacts> statics;
    std::vector<bool> fluents;

    bool holds(const FluentLiteral &l) const { return fluents[l.fluent] == l.value; }
    friend bool operator==(const State &a, const State &b) { return a.fluents == b.fluents; }
};

struct StateHash {
    std::size_t operator()(const State &s) const { return std::hash<std::vector<bool>>{}(s.fluents); }
};

struct ConditionalEffect {
    std::vector<FluentLiteral> when;
    std::vector<FluentLiteral> set;
};

struct GroundAction {
    Term term;
    std::string key;
    // Disjunction of conjunctions; empty means always executable.
    std::vector<std::vector<FluentLiteral>> preconditions;
    // False when statics alone rule the action out (no such road, no key...).
    bool physically_possible = true;
    std::vector<ConditionalEffect> effects;
};

// Sorted indices into Domain::actions; empty is the wait action.
using CompoundAction = std::vector<int>;

struct TransitionModel {
    std::vector<GroundAction> actions;
    // step -> fluent overrides applied to the state at that step
    std::map<int, std::vector<FluentLiteral>> timeline;
    bool allow_wait = false;
};

struct DurationEntry {
    std::string functor;
    int guard_arg = -1;  // argument compared against [lo, hi]; -1 for none
    long long lo = 0;
    long long hi = 0;
    long long units = 0;
};

struct DurationTable {
    std::vector<DurationEntry> entries;
    std::optional<long long> wait;
};

struct Domain {
    std::string kind;  // "traffic", "rooms" or "custom"
    DomainSignature sig;
    std::shared_ptr<const StaticFacts> statics;
    std::vector<Term> fluents;
    std::unordered_map<std::string, int> fluent_index;
    std::unordered_map<std::string, int> action_index;
    TransitionModel model;
    DurationTable durations;

    int fluent_id(const Term &t) const;
    int action_id(const Term &t) const;
    const GroundAction &action(int id) const { return model.actions[id]; }
    std::size_t action_count() const { return model.actions.size(); }

    // Registers fluents and actions; call after filling sig.
    void add_fluent(const Term &t);
    void add_action(GroundAction a);
};

struct PlanningProblem {
    std::string name;
    State initial;
    std::vector<FluentLiteral> goal;
    int horizon = 1;
    std::string mode = "emergency";

    bool goal_satisfied(const State &s) const;
};

struct LoadedProblem {
    std::shared_ptr<const Domain> domain;
    PlanningProblem problem;
};

bool executable(const Domain &d, const State &s, int action);
bool executable(const Domain &d, const State &s, const CompoundAction &ca);

// Effects, then inertia, then the overrides scheduled for step + 1.
State successor(const Domain &d, const State &s, const CompoundAction &ca, int step);

// Applies the overrides scheduled at `step` in place.
void apply_timeline(const Domain &d, State &s, int step);

long long duration(const Domain &d, int action);
long long duration(const Domain &d, const CompoundAction &ca);

struct EnumerateOptions {
    std::size_t bound = 1000000;
    bool exhaustive = false;
    int max_step = -1;  // reachable mode: depth limit, -1 = problem horizon
};

// Distinct states, reachable from the initial state (breadth first, each
// state paired with the first step it is seen at) or, with `exhaustive`, all
// assignments of the fluent signature.
std::vector<std::pair<State, int>> enumerate_states(const Domain &d, const PlanningProblem &p,
                                                    const EnumerateOptions &opts);

std::string render_action(const Domain &d, const CompoundAction &ca);
std::string render_state(const Domain &d, const State &s);

}  // namespace aoplkit

#endif
