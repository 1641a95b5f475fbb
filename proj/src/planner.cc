#include "aoplkit/planner.h"

#include <omp.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <deque>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include <spdlog/spdlog.h>

namespace aoplkit {

NoPlan::NoPlan(Reason r, const std::string &detail) : Error("no plan: " + detail), reason(r) {}

std::string_view reason_name(NoPlan::Reason r) {
    switch (r) {
    case NoPlan::Reason::HorizonTooShort: return "horizon-too-short";
    case NoPlan::Reason::Constraints: return "constraints";
    case NoPlan::Reason::Unreachable: return "unreachable";
    }
    return "?";
}

BehaviorMode BehaviorMode::parse(const std::string &text) {
    BehaviorMode m;
    if (text == "emergency") {
        m.kind = ModeKind::Emergency;
    } else if (text == "non-emergency" || text == "non_emergency") {
        m.kind = ModeKind::NonEmergency;
    } else if (text.rfind("bounded:", 0) == 0) {
        m.kind = ModeKind::BoundedTime;
        try {
            std::size_t used = 0;
            m.max_time = std::stoll(text.substr(8), &used);
            if (used != text.size() - 8 || m.max_time < 0)
                throw std::invalid_argument("bad");
        } catch (const std::exception &) {
            throw ConfigError("mode", "bounded mode needs a nonnegative integer, got '" + text + "'");
        }
    } else if (text == "risky") {
        m.kind = ModeKind::BaselineRisky;
    } else if (text == "normal") {
        m.kind = ModeKind::BaselineNormal;
    } else {
        throw ConfigError("mode", "unknown mode '" + text + "'");
    }
    return m;
}

std::string BehaviorMode::name() const {
    switch (kind) {
    case ModeKind::Emergency: return "emergency";
    case ModeKind::NonEmergency: return "non-emergency";
    case ModeKind::BoundedTime: return "bounded:" + std::to_string(max_time);
    case ModeKind::BaselineRisky: return "risky";
    case ModeKind::BaselineNormal: return "normal";
    }
    return "?";
}

std::string_view metric_name(Metric m) {
    switch (m) {
    case Metric::HighPenaltyHits: return "high_penalty_hits";
    case Metric::Time: return "time";
    case Metric::Penalty: return "penalty";
    case Metric::Length: return "length";
    case Metric::NonStronglyCompliant: return "non_strongly_compliant";
    }
    return "?";
}

std::vector<Metric> objective_tiers(const BehaviorMode &m) {
    std::vector<Metric> t;
    bool top = m.high_penalty == HighPenalty::MinimizeTop;
    switch (m.kind) {
    case ModeKind::Emergency:
        if (top) t.push_back(Metric::HighPenaltyHits);
        t.push_back(Metric::Time);
        t.push_back(Metric::Penalty);
        break;
    case ModeKind::NonEmergency:
        if (top) t.push_back(Metric::HighPenaltyHits);
        t.push_back(Metric::Penalty);
        t.push_back(Metric::Time);
        break;
    case ModeKind::BoundedTime:
        if (top) t.push_back(Metric::HighPenaltyHits);
        t.push_back(Metric::Penalty);
        break;
    case ModeKind::BaselineRisky:
        t.push_back(Metric::Length);
        break;
    case ModeKind::BaselineNormal:
        t.push_back(Metric::Length);
        t.push_back(Metric::NonStronglyCompliant);
        break;
    }
    return t;
}

namespace {

using Cost = std::array<long long, 3>;
constexpr int kWait = -1;

bool uses_policy(const BehaviorMode &m) { return m.kind != ModeKind::BaselineRisky; }
bool forbids_high(const BehaviorMode &m) { return uses_policy(m) && m.high_penalty == HighPenalty::Forbid; }

struct StepCost {
    long long hp = 0, time = 0, penalty = 0, length = 0, non_sc = 0;
    bool sc = false;
};

// Policy facts of one (state, step) that every move is scored against.
struct NodeEval {
    struct Charged {
        int rule;
        HeadForm form;
        int action;
        const std::vector<long long> *points;
    };
    std::vector<Charged> charged;  // applicable rules with penalties
    std::vector<int> obl, obl_neg, neg_permitted, permitted;
    int step = 0;
};

NodeEval evaluate_node(const GroundPolicy &g, const State &s, int step, bool filter) {
    NodeEval n;
    n.step = step;
    EvalOptions eo;
    eo.executability_filter = filter;
    DerivedSet ds = applicable_rules(g, s, step, eo);
    for (const RuleActivation &a : ds.activations) {
        if (a.status != ActivationStatus::Applicable)
            continue;
        const GroundRule &r = g.rules[a.rule];
        switch (r.form) {
        case HeadForm::Obl: n.obl.push_back(r.action); break;
        case HeadForm::OblNeg: n.obl_neg.push_back(r.action); break;
        case HeadForm::NegPermitted: n.neg_permitted.push_back(r.action); break;
        case HeadForm::Permitted: n.permitted.push_back(r.action); break;
        default: break;
        }
        if (!r.penalty_points.empty() && is_violable(r.form))
            n.charged.push_back({a.rule, r.form, r.action, &r.penalty_points});
    }
    return n;
}

bool has(const std::vector<int> &v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

// Scores one move (single action or wait). Returns false when the mode's
// hard constraints exclude it. Records are appended when `records` is set.
bool score_move(const GroundPolicy &g, const NodeEval *n, int move, const BehaviorMode &mode, StepCost &c,
                std::vector<PenaltyRecord> *records) {
    const Domain &d = *g.domain;
    c = StepCost{};
    c.length = move == kWait ? 0 : 1;
    c.time = move == kWait ? duration(d, CompoundAction{}) : duration(d, move);
    if (!n)
        return true;
    for (const auto &ch : n->charged) {
        ViolationKind kind;
        if (ch.form == HeadForm::NegPermitted && ch.action == move)
            kind = ViolationKind::ProhibitedAction;
        else if (ch.form == HeadForm::Obl && ch.action != move)
            kind = ViolationKind::UnfulfilledObl;
        else if (ch.form == HeadForm::OblNeg && ch.action == move)
            kind = ViolationKind::ForbiddenByObl;
        else
            continue;
        if (ch.points->size() > 1)
            throw AmbiguousPenalty(g.rules[ch.rule].key, n->step);
        long long pts = ch.points->front();
        if (pts >= mode.threshold && mode.high_penalty != HighPenalty::Off) {
            if (forbids_high(mode))
                return false;
            ++c.hp;
        }
        c.penalty += pts;
        if (records)
            records->push_back({ch.rule, g.rules[ch.rule].key, pts, n->step, kind});
    }
    bool obligations_ok = std::all_of(n->obl.begin(), n->obl.end(), [&](int a) { return a == move; }) &&
                          (move == kWait || !has(n->obl_neg, move));
    bool nc = move != kWait && has(n->neg_permitted, move);
    c.sc = move != kWait && !nc && has(n->permitted, move) && obligations_ok;
    c.non_sc = move != kWait && !c.sc ? 1 : 0;
    if (mode.kind == ModeKind::BaselineNormal && (nc || !obligations_ok))
        return false;
    return true;
}

Cost to_cost(const std::vector<Metric> &tiers, long long hp, long long time, long long penalty, long long length,
             long long non_sc) {
    Cost c{0, 0, 0};
    for (std::size_t i = 0; i < tiers.size() && i < c.size(); ++i) {
        switch (tiers[i]) {
        case Metric::HighPenaltyHits: c[i] = hp; break;
        case Metric::Time: c[i] = time; break;
        case Metric::Penalty: c[i] = penalty; break;
        case Metric::Length: c[i] = length; break;
        case Metric::NonStronglyCompliant: c[i] = non_sc; break;
        }
    }
    return c;
}

struct MemoKey {
    std::vector<bool> fluents;
    int step;
    bool operator==(const MemoKey &o) const { return step == o.step && fluents == o.fluents; }
};

struct MemoHash {
    std::size_t operator()(const MemoKey &k) const {
        return std::hash<std::vector<bool>>{}(k.fluents) * 31u + static_cast<std::size_t>(k.step);
    }
};

struct MemoEntry {
    Cost cost;
    long long time;
};

// Best cost found by any branch; read with strict comparison only, so a
// branch never loses a plan that ties with another branch's.
struct SharedBound {
    std::mutex mu;
    bool set = false;
    Cost cost{};

    bool strictly_worse(const Cost &c) {
        std::lock_guard<std::mutex> lk(mu);
        return set && c > cost;
    }
    void offer(const Cost &c) {
        std::lock_guard<std::mutex> lk(mu);
        if (!set || c < cost) {
            cost = c;
            set = true;
        }
    }
};

class Search {
public:
    Search(const Domain &d, const PlanningProblem &p, const GroundPolicy &g, const BehaviorMode &mode,
           const PlanOptions &opts, int horizon, SharedBound *shared)
        : d_(d), p_(p), g_(g), mode_(mode), opts_(opts), horizon_(horizon), tiers_(objective_tiers(mode)),
          shared_(shared) {}

    // Explores everything below (s, step) reached with the given prefix.
    void run(const State &s, int step, const Cost &prefix, long long time, std::vector<int> path) {
        path_ = std::move(path);
        dfs(s, step, prefix, time);
    }

    std::vector<int> moves(const State &s) const {
        std::vector<int> out;
        for (std::size_t a = 0; a < d_.action_count(); ++a)
            if (executable(d_, s, static_cast<int>(a)))
                out.push_back(static_cast<int>(a));
        if (d_.model.allow_wait)
            out.push_back(kWait);
        return out;
    }

    // Cost and successor of a move; false if the mode excludes it.
    bool expand(const State &s, int step, const NodeEval *n, int move, const Cost &prefix, long long time,
                Cost &child_cost, long long &child_time, State &child) const {
        StepCost sc;
        if (!score_move(g_, n, move, mode_, sc, nullptr))
            return false;
        child_time = time + sc.time;
        if (mode_.kind == ModeKind::BoundedTime && child_time > mode_.max_time)
            return false;
        Cost add = to_cost(tiers_, sc.hp, sc.time, sc.penalty, sc.length, sc.non_sc);
        for (std::size_t i = 0; i < child_cost.size(); ++i)
            child_cost[i] = prefix[i] + add[i];
        child = successor(d_, s, move == kWait ? CompoundAction{} : CompoundAction{move}, step);
        return true;
    }

    std::optional<NodeEval> node_eval(const State &s, int step) const {
        if (!uses_policy(mode_))
            return std::nullopt;
        return evaluate_node(g_, s, step, opts_.executability_filter);
    }

    bool found() const { return have_best_; }
    const Cost &best_cost() const { return best_cost_; }
    const std::vector<int> &best_path() const { return best_path_; }
    std::size_t nodes() const { return nodes_; }

private:
    bool pruned_by_bound(const Cost &c) const {
        if (have_best_ && c >= best_cost_)
            return true;
        return shared_ && shared_->strictly_worse(c);
    }

    // True when an earlier visit of (s, step) dominates this one.
    bool memo_prunes(const State &s, int step, const Cost &c, long long time) {
        if (!opts_.memoize)
            return false;
        auto &entries = memo_[MemoKey{s.fluents, step}];
        bool bounded = mode_.kind == ModeKind::BoundedTime;
        for (const MemoEntry &e : entries)
            if (e.cost <= c && (!bounded || e.time <= time))
                return true;
        if (!bounded) {
            entries.assign(1, {c, time});
        } else {
            std::erase_if(entries, [&](const MemoEntry &e) { return c <= e.cost && time <= e.time; });
            entries.push_back({c, time});
        }
        return false;
    }

    void dfs(const State &s, int step, const Cost &prefix, long long time) {
        ++nodes_;
        if (p_.goal_satisfied(s)) {
            if (!have_best_ || prefix < best_cost_) {
                have_best_ = true;
                best_cost_ = prefix;
                best_path_ = path_;
                if (shared_)
                    shared_->offer(prefix);
            }
            return;
        }
        if (step >= horizon_ || pruned_by_bound(prefix) || memo_prunes(s, step, prefix, time))
            return;
        auto ne = node_eval(s, step);
        const NodeEval *n = ne ? &*ne : nullptr;
        for (int m : moves(s)) {
            Cost cc;
            long long ct;
            State child;
            if (!expand(s, step, n, m, prefix, time, cc, ct, child))
                continue;
            if (pruned_by_bound(cc))
                continue;
            path_.push_back(m);
            dfs(child, step + 1, cc, ct);
            path_.pop_back();
        }
    }

    const Domain &d_;
    const PlanningProblem &p_;
    const GroundPolicy &g_;
    BehaviorMode mode_;
    PlanOptions opts_;
    int horizon_;
    std::vector<Metric> tiers_;
    SharedBound *shared_;
    std::unordered_map<MemoKey, std::vector<MemoEntry>, MemoHash> memo_;
    std::vector<int> path_;
    bool have_best_ = false;
    Cost best_cost_{};
    std::vector<int> best_path_;
    std::size_t nodes_ = 0;
};

// Shortest physically possible distance to the goal, ignoring the policy;
// -1 when the goal is unreachable at any depth.
int relaxed_distance(const Domain &d, const PlanningProblem &p) {
    int last = d.model.timeline.empty() ? 0 : d.model.timeline.rbegin()->first;
    struct Key {
        std::vector<bool> f;
        int t;
        bool operator==(const Key &o) const { return t == o.t && f == o.f; }
    };
    struct H {
        std::size_t operator()(const Key &k) const { return std::hash<std::vector<bool>>{}(k.f) ^ k.t; }
    };
    std::unordered_set<Key, H> seen;
    std::deque<std::pair<State, int>> q{{p.initial, 0}};
    seen.insert({p.initial.fluents, 0});
    while (!q.empty()) {
        auto [s, step] = q.front();
        q.pop_front();
        if (p.goal_satisfied(s))
            return step;
        std::vector<CompoundAction> mv;
        for (std::size_t a = 0; a < d.action_count(); ++a)
            if (executable(d, s, static_cast<int>(a)))
                mv.push_back({static_cast<int>(a)});
        if (d.model.allow_wait)
            mv.push_back({});
        for (const auto &ca : mv) {
            State n = successor(d, s, ca, step);
            // past the last scripted step the dynamics no longer depend on time
            if (seen.insert({n.fluents, std::min(step + 1, last + 1)}).second)
                q.emplace_back(std::move(n), step + 1);
        }
    }
    return -1;
}

}  // namespace

PlanResult score_plan(const Domain &d, const PlanningProblem &problem, const Policy &p, const GroundPolicy &g,
                      const BehaviorMode &mode, const std::vector<CompoundAction> &actions, const PlanOptions &opts) {
    PlanResult r;
    r.mode = mode;
    r.tiers = objective_tiers(mode);
    r.actions = actions;
    State s = problem.initial;
    long long hp = 0, time = 0, penalty = 0, length = 0, non_sc = 0;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        int step = static_cast<int>(i);
        const CompoundAction &ca = actions[i];
        if (ca.size() > 1)
            throw ExecError("bundled planner scores one action per step");
        int move = ca.empty() ? kWait : ca.front();
        std::optional<NodeEval> ne;
        if (uses_policy(mode))
            ne = evaluate_node(g, s, step, opts.executability_filter);
        StepCost sc;
        std::vector<PenaltyRecord> recs;
        if (!score_move(g, ne ? &*ne : nullptr, move, mode, sc, &recs))
            throw NoPlan(NoPlan::Reason::Constraints,
                         render_action(d, ca) + " at step " + std::to_string(step) + " breaks the " + mode.name() +
                             " constraints");
        for (PenaltyRecord &rec : recs) {
            const GroundRule &gr = g.rules[rec.rule];
            r.explanations.push_back({rec, render_action(d, ca), pretty_print(p.rules[gr.source])});
            r.metrics.records.push_back(std::move(rec));
        }
        hp += sc.hp;
        time += sc.time;
        penalty += sc.penalty;
        length += sc.length;
        non_sc += sc.non_sc;
        if (move != kWait) {
            ++r.elements;
            // compliance share is reported for every mode, policy or not
            if (!uses_policy(mode)) {
                NodeEval e = evaluate_node(g, s, step, opts.executability_filter);
                StepCost tmp;
                BehaviorMode probe = mode;
                probe.kind = ModeKind::NonEmergency;
                probe.high_penalty = HighPenalty::Off;
                score_move(g, &e, move, probe, tmp, nullptr);
                r.strongly_compliant_elements += tmp.sc;
            } else {
                r.strongly_compliant_elements += sc.sc;
            }
        }
        r.action_names.push_back(render_action(d, ca));
        s = successor(d, s, ca, step);
    }
    if (mode.kind == ModeKind::BoundedTime && time > mode.max_time)
        throw NoPlan(NoPlan::Reason::Constraints, "time bound exceeded");
    r.metrics.cumulative_penalty = 0;
    for (const auto &rec : r.metrics.records)
        r.metrics.cumulative_penalty += rec.points;
    r.metrics.cumulative_time = time;
    r.metrics.length = length;
    r.metrics.high_penalty_hits = 0;
    for (const auto &rec : r.metrics.records)
        if (rec.points >= mode.threshold)
            ++r.metrics.high_penalty_hits;
    Cost c = to_cost(r.tiers, hp, time, penalty, length, non_sc);
    r.objective.assign(c.begin(), c.begin() + static_cast<long>(r.tiers.size()));
    return r;
}

PlanResult plan(const Domain &d, const PlanningProblem &problem, const Policy &p, const GroundPolicy &g,
                const BehaviorMode &mode, const PlanOptions &opts) {
    auto t0 = std::chrono::steady_clock::now();
    int horizon = opts.horizon.value_or(problem.horizon);
    if (horizon < 0)
        throw ConfigError("horizon", "horizon must be nonnegative");

    std::vector<int> best;
    bool found = false;
    std::size_t nodes = 0;
    int threads = std::max(1, opts.threads);

    if (threads == 1 || problem.goal_satisfied(problem.initial) || horizon == 0) {
        Search s(d, problem, g, mode, opts, horizon, nullptr);
        s.run(problem.initial, 0, Cost{0, 0, 0}, 0, {});
        found = s.found();
        best = s.best_path();
        nodes = s.nodes();
    } else {
        // Root branches in parallel, one search (and memo) per branch.
        Search root(d, problem, g, mode, opts, horizon, nullptr);
        auto ne = root.node_eval(problem.initial, 0);
        std::vector<int> mv = root.moves(problem.initial);
        SharedBound shared;
        std::vector<std::optional<std::pair<Cost, std::vector<int>>>> results(mv.size());
        std::vector<std::size_t> branch_nodes(mv.size(), 0);
        std::exception_ptr error;
        std::mutex error_mu;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
        for (std::size_t i = 0; i < mv.size(); ++i) {
            try {
                Cost cc;
                long long ct;
                State child;
                if (!root.expand(problem.initial, 0, ne ? &*ne : nullptr, mv[i], Cost{0, 0, 0}, 0, cc, ct, child))
                    continue;
                Search s(d, problem, g, mode, opts, horizon, &shared);
                s.run(child, 1, cc, ct, {mv[i]});
                branch_nodes[i] = s.nodes();
                if (s.found())
                    results[i] = std::make_pair(s.best_cost(), s.best_path());
            } catch (...) {
                std::lock_guard<std::mutex> lk(error_mu);
                if (!error)
                    error = std::current_exception();
            }
        }
        if (error)
            std::rethrow_exception(error);
        // lowest cost, then lowest branch index: same answer as the serial search
        std::optional<Cost> best_cost;
        for (std::size_t i = 0; i < mv.size(); ++i) {
            nodes += branch_nodes[i];
            if (results[i] && (!best_cost || results[i]->first < *best_cost)) {
                best_cost = results[i]->first;
                best = results[i]->second;
                found = true;
            }
        }
        nodes += 1;  // the root
    }

    if (!found) {
        int dist = relaxed_distance(d, problem);
        if (dist < 0)
            throw NoPlan(NoPlan::Reason::Unreachable, "the goal is unreachable from the initial state");
        if (dist > horizon)
            throw NoPlan(NoPlan::Reason::HorizonTooShort,
                         "the goal needs at least " + std::to_string(dist) + " steps, horizon is " +
                             std::to_string(horizon));
        throw NoPlan(NoPlan::Reason::Constraints,
                     "the goal is reachable within the horizon but every route breaks a " + mode.name() +
                         " constraint");
    }

    std::vector<CompoundAction> actions;
    for (int m : best)
        actions.push_back(m == kWait ? CompoundAction{} : CompoundAction{m});
    PlanResult r = score_plan(d, problem, p, g, mode, actions, opts);
    r.nodes = nodes;
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    spdlog::debug("plan {} [{}]: {} steps, {} nodes, {:.4f}s", problem.name, mode.name(), actions.size(), nodes,
                  r.wall_seconds);
    return r;
}

PlanResult plan(const LoadedProblem &lp, const Policy &p, const BehaviorMode &mode, const PlanOptions &opts) {
    GroundPolicy g = ground_policy(p, *lp.domain);
    return plan(*lp.domain, lp.problem, p, g, mode, opts);
}

std::vector<ModeRow> compare_modes(const LoadedProblem &lp, const Policy &p, const std::vector<BehaviorMode> &modes,
                                   const PlanOptions &opts) {
    GroundPolicy g = ground_policy(p, *lp.domain);
    std::vector<ModeRow> rows;
    for (const BehaviorMode &m : modes) {
        ModeRow row;
        row.mode = m;
        auto t0 = std::chrono::steady_clock::now();
        try {
            row.result = plan(*lp.domain, lp.problem, p, g, m, opts);
        } catch (const NoPlan &e) {
            row.error = e.what();
        } catch (const AmbiguityError &e) {
            row.error = e.what();
        }
        row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace aoplkit
