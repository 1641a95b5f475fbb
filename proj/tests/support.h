#ifndef AOPLKIT_TESTS_SUPPORT_H
#define AOPLKIT_TESTS_SUPPORT_H

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "aoplkit/config.h"
#include "aoplkit/ground.h"
#include "aoplkit/planner.h"
#include "aoplkit/policy.h"
#include "aoplkit/validate.h"

namespace testsupport {

inline std::string data(const std::string &rel) { return std::string(AOPLKIT_DATA_DIR) + "/" + rel; }
inline std::string golden(const std::string &rel) { return std::string(AOPLKIT_GOLDEN_DIR) + "/" + rel; }

inline std::string scenario(const std::string &domain, int n) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s/s%02d.json", domain.c_str(), n);
    return data(buf);
}

struct Loaded {
    aoplkit::LoadedProblem lp;
    aoplkit::Policy policy;
    aoplkit::GroundPolicy g;
};

inline Loaded load(const std::string &policy_path, const std::string &problem_path) {
    Loaded l;
    l.lp = aoplkit::load_problem_file(problem_path);
    l.policy = aoplkit::load_policy_file(policy_path);
    l.g = aoplkit::ground_policy(l.policy, *l.lp.domain);
    return l;
}

inline Loaded load(const aoplkit::Policy &p, const aoplkit::LoadedProblem &lp) {
    Loaded l{lp, p, {}};
    l.g = aoplkit::ground_policy(l.policy, *l.lp.domain);
    return l;
}

// ---------------------------------------------------------------------------
// Hand-written reading of the bundled traffic norms, used as an oracle. It
// works straight off the TrafficConfig and knows nothing about the policy
// engine: speeding tiers, do-not-enter, stop signs, school buses,
// pedestrians and red lights.

struct Charge {
    std::string label;
    long long points;
    friend bool operator<(const Charge &a, const Charge &b) {
        return std::tie(a.label, a.points) < std::tie(b.label, b.points);
    }
    friend bool operator==(const Charge &a, const Charge &b) { return a.label == b.label && a.points == b.points; }
};

// A step of the hand simulation: where the car is, whether it has stopped.
struct CarState {
    long long at;
    bool stopped;
};

struct Move {
    bool stop = false;
    long long from = 0, to = 0, speed = 0;
};

class TrafficNorms {
public:
    explicit TrafficNorms(const aoplkit::TrafficConfig &c, long long high_points = 50) : c_(c), high_(high_points) {
        for (const auto &e : c.edges) {
            long long cap = e.max_speed.value_or(1 << 30);
            limit_[{e.from, e.to}] = e.speed_limit;
            cap_[{e.from, e.to}] = cap;
            if (e.bidirectional) {
                limit_[{e.to, e.from}] = e.speed_limit;
                cap_[{e.to, e.from}] = cap;
            }
        }
        speeds_ = c.speeds;
        std::sort(speeds_.begin(), speeds_.end());
        speeds_.erase(std::unique(speeds_.begin(), speeds_.end()), speeds_.end());
    }

    std::vector<Move> moves(const CarState &s) const {
        std::vector<Move> out;
        for (const auto &[k, lim] : limit_)
            if (k.first == s.at)
                for (long long v : speeds_)
                    if (v <= cap_.at(k))
                        out.push_back({false, k.first, k.second, v});
        out.push_back({true, s.at, s.at, 0});
        return out;
    }

    CarState next(const CarState &s, const Move &m) const {
        if (m.stop)
            return {s.at, true};
        return {m.to, false};
    }

    static long long time_of(const Move &m) {
        if (m.stop)
            return 2;
        if (m.speed >= 56)
            return 5;
        if (m.speed >= 36)
            return 10;
        return 15;
    }

    std::string light_at(long long loc, int step) const {
        std::string col;
        int best = -1;
        for (const auto &l : c_.lights)
            if (l.loc == loc && l.step <= step && l.step >= best) {
                best = l.step;
                col = l.color;
            }
        return col;
    }

    bool bus(long long a, long long b, int step) const {
        for (const auto &e : c_.school_bus)
            if (e.step == step && ((e.a == a && e.b == b) || (e.a == b && e.b == a)))
                return true;
        return false;
    }

    bool pedestrians(long long loc, int step) const {
        for (const auto &e : c_.pedestrians)
            if (e.step == step && e.a == loc)
                return true;
        return false;
    }

    bool stop_sign(long long loc) const {
        for (const auto &s : c_.signs)
            if (s.type == "stop" && s.loc == loc)
                return true;
        return false;
    }

    bool do_not_enter(long long from, long long to) const {
        for (const auto &s : c_.signs)
            if (s.type == "do_not_enter" && s.loc == to && s.from && *s.from == from)
                return true;
        return false;
    }

    std::vector<Charge> charges(const CarState &s, const Move &m, int step) const {
        std::vector<Charge> out;
        auto name = [](const char *r, std::vector<long long> xs) {
            std::string t = r;
            t += "(";
            for (std::size_t i = 0; i < xs.size(); ++i)
                t += (i ? "," : "") + std::to_string(xs[i]);
            return t + ")";
        };
        if (pedestrians(s.at, step) && !m.stop)
            out.push_back({name("r6", {s.at}), 50});
        if (m.stop)
            return out;
        long long lim = limit_.at({m.from, m.to});
        long long over = m.speed - lim;
        if (lim < 55 && m.speed > lim + 5)
            out.push_back({name("r1", {m.from, m.to, m.speed, lim}), over < 10 ? 1 : over < 20 ? 2 : 3});
        if (lim >= 55 && m.speed > lim + 10)
            out.push_back({name("r2", {m.from, m.to, m.speed, lim}), over < 20 ? 2 : 3});
        if (do_not_enter(m.from, m.to))
            out.push_back({name("r3", {m.from, m.to, m.speed}), 3});
        if (stop_sign(m.from) && !s.stopped)
            out.push_back({name("r4", {m.from, m.to, m.speed}), 2});
        if (bus(m.from, m.to, step))
            out.push_back({name("r5", {m.from, m.to, m.speed}), 50});
        if (light_at(m.from, step) == "red")
            out.push_back({name("r9", {m.from, m.to, m.speed}), 3});
        std::sort(out.begin(), out.end());
        return out;
    }

    long long high() const { return high_; }

private:
    aoplkit::TrafficConfig c_;
    long long high_;
    std::map<std::pair<long long, long long>, long long> limit_, cap_;
    std::vector<long long> speeds_;
};

// Exhaustive search over every move sequence up to the horizon, stopping at
// the first arrival. Returns the lexicographic minimum of the mode's tiers,
// or nothing when no sequence reaches the goal.
struct BruteResult {
    std::vector<long long> objective;
    std::size_t trajectories = 0;
};

inline std::optional<BruteResult> brute_force(const aoplkit::TrafficConfig &c, bool emergency, bool forbid_high = true) {
    TrafficNorms n(c);
    std::optional<std::vector<long long>> best;
    std::size_t count = 0;
    struct Frame {
        CarState s;
        int step;
        long long time, penalty;
    };
    auto rec = [&](auto &&self, const Frame &f) -> void {
        if (f.s.at == c.goal) {
            ++count;
            std::vector<long long> v = emergency ? std::vector<long long>{f.time, f.penalty}
                                                 : std::vector<long long>{f.penalty, f.time};
            if (!best || v < *best)
                best = v;
            return;
        }
        if (f.step >= c.horizon)
            return;
        for (const Move &m : n.moves(f.s)) {
            long long pts = 0;
            bool high = false;
            for (const Charge &ch : n.charges(f.s, m, f.step)) {
                pts += ch.points;
                high = high || ch.points >= n.high();
            }
            if (high && forbid_high)
                continue;
            self(self, Frame{n.next(f.s, m), f.step + 1, f.time + TrafficNorms::time_of(m), f.penalty + pts});
        }
    };
    rec(rec, Frame{{c.initial, false}, 0, 0, 0});
    if (!best)
        return std::nullopt;
    return BruteResult{*best, count};
}

// Random small road maps: a spanning path plus a few chords, random limits,
// optional signs, lights and events.
inline aoplkit::TrafficConfig random_map(std::mt19937_64 &rng, int max_locations = 6, int max_speeds = 3,
                                         int max_horizon = 5) {
    auto pick = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
    aoplkit::TrafficConfig c;
    int n = static_cast<int>(pick(2, max_locations));
    for (int i = 1; i <= n; ++i)
        c.locations.push_back(i);
    const std::vector<long long> limits{15, 25, 45, 55, 65};
    std::set<std::pair<long long, long long>> used;
    auto add_edge = [&](long long a, long long b) {
        if (a == b || used.count({std::min(a, b), std::max(a, b)}))
            return;
        used.insert({std::min(a, b), std::max(a, b)});
        aoplkit::TrafficEdge e;
        e.from = a;
        e.to = b;
        e.speed_limit = limits[pick(0, limits.size() - 1)];
        e.bidirectional = pick(0, 4) != 0;
        if (pick(0, 3) == 0)
            e.max_speed = 45;
        c.edges.push_back(e);
    };
    for (int i = 1; i < n; ++i)
        add_edge(i, i + 1);
    for (int k = pick(0, n); k > 0; --k)
        add_edge(pick(1, n), pick(1, n));
    const std::vector<long long> pool{15, 25, 35, 45, 65, 85};
    std::vector<long long> speeds = pool;
    std::shuffle(speeds.begin(), speeds.end(), rng);
    speeds.resize(pick(1, max_speeds));
    c.speeds = speeds;
    c.horizon = static_cast<int>(pick(1, max_horizon));
    c.initial = pick(1, n);
    c.goal = pick(1, n);
    if (pick(0, 2) == 0)
        c.signs.push_back({pick(1, n), "stop", std::nullopt});
    if (!c.edges.empty() && pick(0, 2) == 0) {
        const auto &e = c.edges[pick(0, c.edges.size() - 1)];
        c.signs.push_back({e.to, "do_not_enter", e.from});
    }
    if (pick(0, 2) == 0)
        c.lights.push_back({pick(1, n), static_cast<int>(pick(0, 3)), pick(0, 1) ? "red" : "green"});
    if (pick(0, 2) == 0) {
        long long l = pick(1, n);
        c.pedestrians.push_back({l, l, static_cast<int>(pick(0, 3))});
    }
    if (!c.edges.empty() && pick(0, 2) == 0) {
        const auto &e = c.edges[pick(0, c.edges.size() - 1)];
        c.school_bus.push_back({e.from, e.to, static_cast<int>(pick(0, 3))});
    }
    return c;
}

}  // namespace testsupport

#endif
