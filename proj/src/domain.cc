#include "aoplkit/domain.h"

#include <algorithm>
#include <deque>

#include "aoplkit/errors.h"

namespace aoplkit {

SymbolClass DomainSignature::classify(const std::string &name, std::size_t arity) const {
    auto has = [&](const std::vector<Schema> &v) {
        return std::any_of(v.begin(), v.end(), [&](const Schema &s) {
            return s.name == name && s.sorts.size() == arity;
        });
    };
    if (has(statics))
        return SymbolClass::Static;
    if (has(fluents))
        return SymbolClass::Fluent;
    if (has(actions))
        return SymbolClass::Action;
    return SymbolClass::None;
}

const Schema *DomainSignature::find_any(const std::string &name, SymbolClass *cls) const {
    const std::pair<const std::vector<Schema> *, SymbolClass> groups[] = {
        {&statics, SymbolClass::Static},
        {&fluents, SymbolClass::Fluent},
        {&actions, SymbolClass::Action}};
    for (auto [v, c] : groups)
        for (const Schema &s : *v)
            if (s.name == name) {
                if (cls)
                    *cls = c;
                return &s;
            }
    return nullptr;
}

std::vector<Term> DomainSignature::instances(const Schema &s) const {
    std::vector<Term> out{Term::symbol(s.name)};
    for (const std::string &sort : s.sorts) {
        auto it = sorts.find(sort);
        if (it == sorts.end())
            throw ConfigError("sorts." + sort, "undeclared sort in schema " + s.name);
        std::vector<Term> next;
        for (const Term &partial : out)
            for (const Term &c : it->second) {
                Term t = partial;
                t.args.push_back(c);
                next.push_back(std::move(t));
            }
        out = std::move(next);
    }
    return out;
}

void StaticFacts::add(const Term &t) {
    if (true_keys.insert(t.str()).second)
        by_functor[t.name].push_back(t);
}

int Domain::fluent_id(const Term &t) const {
    auto it = fluent_index.find(t.str());
    return it == fluent_index.end() ? -1 : it->second;
}

int Domain::action_id(const Term &t) const {
    auto it = action_index.find(t.str());
    return it == action_index.end() ? -1 : it->second;
}

void Domain::add_fluent(const Term &t) {
    auto [it, inserted] = fluent_index.emplace(t.str(), static_cast<int>(fluents.size()));
    if (inserted)
        fluents.push_back(t);
}

void Domain::add_action(GroundAction a) {
    a.key = a.term.str();
    auto [it, inserted] = action_index.emplace(a.key, static_cast<int>(model.actions.size()));
    if (!inserted)
        throw ConfigError("actions", "duplicate ground action " + a.key);
    model.actions.push_back(std::move(a));
}

bool PlanningProblem::goal_satisfied(const State &s) const {
    return std::all_of(goal.begin(), goal.end(), [&](const FluentLiteral &l) { return s.holds(l); });
}

bool executable(const Domain &d, const State &s, int action) {
    const GroundAction &a = d.action(action);
    if (!a.physically_possible)
        return false;
    if (a.preconditions.empty())
        return true;
    return std::any_of(a.preconditions.begin(), a.preconditions.end(), [&](const auto &conj) {
        return std::all_of(conj.begin(), conj.end(), [&](const FluentLiteral &l) { return s.holds(l); });
    });
}

bool executable(const Domain &d, const State &s, const CompoundAction &ca) {
    if (ca.empty())
        return d.model.allow_wait;
    return std::all_of(ca.begin(), ca.end(), [&](int a) { return executable(d, s, a); });
}

void apply_timeline(const Domain &d, State &s, int step) {
    auto it = d.model.timeline.find(step);
    if (it == d.model.timeline.end())
        return;
    for (const FluentLiteral &l : it->second)
        s.fluents[l.fluent] = l.value;
}

State successor(const Domain &d, const State &s, const CompoundAction &ca, int step) {
    if (ca.empty() && !d.model.allow_wait)
        throw ExecError("wait is not an action of the " + d.kind + " domain (step " +
                        std::to_string(step) + ")");
    for (int a : ca)
        if (!executable(d, s, a))
            throw ExecError(d.action(a).key + " is not executable at step " + std::to_string(step));
    State next = s;  // inertia
    // Effect conditions are read from the old state; all effects land together.
    for (int a : ca)
        for (const ConditionalEffect &e : d.action(a).effects)
            if (std::all_of(e.when.begin(), e.when.end(), [&](const FluentLiteral &l) { return s.holds(l); }))
                for (const FluentLiteral &l : e.set)
                    next.fluents[l.fluent] = l.value;
    apply_timeline(d, next, step + 1);
    return next;
}

long long duration(const Domain &d, int action) {
    const Term &t = d.action(action).term;
    for (const DurationEntry &e : d.durations.entries) {
        if (e.functor != t.name)
            continue;
        if (e.guard_arg < 0)
            return e.units;
        if (e.guard_arg < static_cast<int>(t.args.size()) && t.args[e.guard_arg].is_integer()) {
            long long v = t.args[e.guard_arg].number;
            if (v >= e.lo && v <= e.hi)
                return e.units;
        }
    }
    throw NoDurationEntry("no duration entry matches " + t.str());
}

long long duration(const Domain &d, const CompoundAction &ca) {
    if (ca.empty()) {
        if (!d.durations.wait)
            throw NoDurationEntry("no duration entry for wait");
        return *d.durations.wait;
    }
    long long total = 0;
    for (int a : ca)
        total += duration(d, a);
    return total;
}

std::vector<std::pair<State, int>> enumerate_states(const Domain &d, const PlanningProblem &p,
                                                    const EnumerateOptions &opts) {
    if (opts.bound == 0)
        throw std::invalid_argument("enumerate_states: bound must be at least 1");
    std::vector<std::pair<State, int>> out;
    if (opts.exhaustive) {
        std::size_t n = d.fluents.size();
        if (n >= 63 || (std::size_t{1} << n) > opts.bound)
            throw BoundExceeded("exhaustive enumeration of " + std::to_string(n) +
                                " fluents exceeds bound " + std::to_string(opts.bound));
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            State s{d.statics, std::vector<bool>(n)};
            for (std::size_t i = 0; i < n; ++i)
                s.fluents[i] = (mask >> i) & 1;
            out.emplace_back(std::move(s), 0);
        }
        return out;
    }
    int max_step = opts.max_step < 0 ? p.horizon : opts.max_step;
    std::unordered_set<State, StateHash> seen;
    std::deque<std::pair<State, int>> queue{{p.initial, 0}};
    seen.insert(p.initial);
    while (!queue.empty() && out.size() < opts.bound) {
        auto [s, step] = queue.front();
        queue.pop_front();
        out.emplace_back(s, step);
        if (step >= max_step)
            continue;
        std::vector<CompoundAction> moves;
        if (d.model.allow_wait)
            moves.push_back({});
        for (std::size_t a = 0; a < d.action_count(); ++a)
            if (executable(d, s, static_cast<int>(a)))
                moves.push_back({static_cast<int>(a)});
        for (const auto &ca : moves) {
            State n = successor(d, s, ca, step);
            if (seen.insert(n).second)
                queue.emplace_back(std::move(n), step + 1);
        }
    }
    return out;
}

std::string render_action(const Domain &d, const CompoundAction &ca) {
    if (ca.empty())
        return "wait";
    std::string s;
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (i)
            s += "+";
        s += d.action(ca[i]).key;
    }
    return s;
}

std::string render_state(const Domain &d, const State &s) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < d.fluents.size(); ++i)
        if (s.fluents[i]) {
            if (!first)
                out += ", ";
            out += d.fluents[i].str();
            first = false;
        }
    return out + "}";
}

}  // namespace aoplkit
