#include <gtest/gtest.h>

#include "aoplkit/config.h"
#include "aoplkit/domain.h"
#include "aoplkit/errors.h"
#include "support.h"

using namespace aoplkit;

namespace {

Term loc(long long l) { return Term::integer(l); }

bool holds(const Domain &d, const State &s, const Term &t) { return s.fluents[d.fluent_id(t)]; }

int act(const Domain &d, const std::string &name, std::vector<Term> args) {
    return d.action_id(Term::symbol(name, std::move(args)));
}

std::string config_error_key(const std::string &json) {
    try {
        load_problem(json);
    } catch (const ConfigError &e) {
        return e.key;
    }
    return "<none>";
}

}  // namespace

TEST(TrafficDomain, InitialStateAndGoal) {
    LoadedProblem lp = load_problem_file(testsupport::scenario("traffic", 5));
    const Domain &d = *lp.domain;
    EXPECT_EQ(d.kind, "traffic");
    EXPECT_TRUE(holds(d, lp.problem.initial, Term::symbol("at", {loc(6)})));
    EXPECT_FALSE(holds(d, lp.problem.initial, Term::symbol("at", {loc(5)})));
    EXPECT_FALSE(lp.problem.goal_satisfied(lp.problem.initial));
    EXPECT_EQ(lp.problem.horizon, 8);
}

TEST(TrafficDomain, DriveMovesAndClearsStop) {
    LoadedProblem lp = load_problem_file(testsupport::scenario("traffic", 5));
    const Domain &d = *lp.domain;
    int stop6 = act(d, "stop", {loc(6)});
    int drive = act(d, "drive", {loc(6), loc(5), loc(25)});
    ASSERT_GE(stop6, 0);
    ASSERT_GE(drive, 0);
    State s1 = successor(d, lp.problem.initial, {stop6}, 0);
    EXPECT_TRUE(holds(d, s1, Term::symbol("stopped_at", {loc(6)})));
    EXPECT_TRUE(holds(d, s1, Term::symbol("at", {loc(6)})));
    State s2 = successor(d, s1, {drive}, 1);
    EXPECT_TRUE(holds(d, s2, Term::symbol("at", {loc(5)})));
    EXPECT_FALSE(holds(d, s2, Term::symbol("at", {loc(6)})));
    EXPECT_FALSE(holds(d, s2, Term::symbol("stopped_at", {loc(6)})));
    EXPECT_EQ(duration(d, stop6), 2);
    EXPECT_EQ(duration(d, drive), 15);
}

TEST(TrafficDomain, DurationBands) {
    LoadedProblem lp = load_problem_file(testsupport::scenario("traffic", 11));
    const Domain &d = *lp.domain;
    // 11-12 has limit 55 and no cap, so every declared speed exists there.
    for (long long v : {5LL, 15LL, 35LL, 36LL, 45LL, 55LL, 56LL, 65LL, 105LL}) {
        int a = act(d, "drive", {loc(11), loc(12), loc(v)});
        if (a < 0)
            continue;
        long long want = v >= 56 ? 5 : v >= 36 ? 10 : 15;
        EXPECT_EQ(duration(d, a), want) << v;
    }
}

TEST(TrafficDomain, ExecutabilityFollowsPositionAndCap) {
    LoadedProblem lp = load_problem_file(testsupport::scenario("traffic", 5));
    const Domain &d = *lp.domain;
    const State &s = lp.problem.initial;
    EXPECT_TRUE(executable(d, s, act(d, "drive", {loc(6), loc(5), loc(85)})));
    EXPECT_FALSE(executable(d, s, act(d, "drive", {loc(5), loc(6), loc(25)})));
    // 6-8 is capped at 45
    int fast = act(d, "drive", {loc(6), loc(8), loc(65)});
    ASSERT_GE(fast, 0);
    EXPECT_FALSE(d.action(fast).physically_possible);
    EXPECT_FALSE(executable(d, s, fast));
    EXPECT_TRUE(executable(d, s, act(d, "drive", {loc(6), loc(8), loc(45)})));
    EXPECT_FALSE(executable(d, s, CompoundAction{}));  // no waiting on the road
}

TEST(TrafficDomain, ActionOrderIsCanonical) {
    LoadedProblem lp = load_problem_file(testsupport::scenario("traffic", 1));
    const Domain &d = *lp.domain;
    long long prev_speed = 1 << 30;
    bool seen_stop = false;
    for (std::size_t i = 0; i < d.action_count(); ++i) {
        const Term &t = d.action(static_cast<int>(i)).term;
        if (t.name == "stop") {
            seen_stop = true;
            continue;
        }
        ASSERT_FALSE(seen_stop) << "drive after stop: " << t.str();
        EXPECT_LE(t.args[2].number, prev_speed);
        prev_speed = t.args[2].number;
    }
}

TEST(TrafficDomain, TimelineEvents) {
    LoadedProblem lp = load_problem_file(testsupport::scenario("traffic", 9));
    const Domain &d = *lp.domain;
    State s = lp.problem.initial;
    Term green4 = Term::symbol("light", {loc(4), Term::symbol("green")});
    Term red4 = Term::symbol("light", {loc(4), Term::symbol("red")});
    EXPECT_TRUE(holds(d, s, green4));
    int stop3 = act(d, "stop", {loc(3)});
    for (int t = 0; t < 4; ++t) {
        EXPECT_TRUE(holds(d, s, green4)) << t;
        s = successor(d, s, {stop3}, t);
    }
    EXPECT_TRUE(holds(d, s, red4));
    EXPECT_FALSE(holds(d, s, green4));

    // pedestrians show up only at their step
    LoadedProblem p5 = load_problem_file(testsupport::scenario("traffic", 5));
    const Domain &d5 = *p5.domain;
    Term ped = Term::symbol("pedestrians_are_crossing", {loc(5)});
    int stop6 = act(d5, "stop", {loc(6)});
    State a = p5.problem.initial;
    EXPECT_FALSE(holds(d5, a, ped));
    a = successor(d5, a, {stop6}, 0);
    EXPECT_TRUE(holds(d5, a, ped));
    a = successor(d5, a, {stop6}, 1);
    EXPECT_FALSE(holds(d5, a, ped));
}

TEST(TrafficDomain, ReachableEnumerationIsDistinct) {
    LoadedProblem lp = load_problem_file(testsupport::scenario("traffic", 1));
    auto states = enumerate_states(*lp.domain, lp.problem, {});
    ASSERT_FALSE(states.empty());
    EXPECT_EQ(states.front().second, 0);
    for (std::size_t i = 1; i < states.size(); ++i)
        EXPECT_LE(states[i - 1].second, states[i].second);
    EXPECT_EQ(enumerate_states(*lp.domain, lp.problem, {.bound = 3}).size(), 3u);
    EXPECT_THROW(enumerate_states(*lp.domain, lp.problem, {.bound = 1000, .exhaustive = true}), BoundExceeded);
}

TEST(RoomsDomain, DoorsKeysAndWait) {
    LoadedProblem lp = load_problem_file(testsupport::scenario("rooms", 3));
    const Domain &d = *lp.domain;
    EXPECT_EQ(d.kind, "rooms");
    EXPECT_EQ(lp.problem.horizon, 12);
    const State &s = lp.problem.initial;
    auto sym = [](const char *n) { return Term::symbol(n); };
    EXPECT_TRUE(holds(d, s, Term::symbol("in", {sym("r6")})));
    EXPECT_TRUE(holds(d, s, Term::symbol("locked", {sym("d3")})));
    EXPECT_TRUE(d.statics->holds(Term::symbol("door", {sym("d1"), sym("r7"), sym("r4")})));
    EXPECT_TRUE(d.statics->holds(Term::symbol("wrong_way", {sym("r7"), sym("r4")})));
    EXPECT_TRUE(d.statics->holds(Term::symbol("fits", {sym("k0"), sym("d3")})));
    EXPECT_TRUE(d.statics->holds(Term::symbol("fire", {sym("r2")})));
    EXPECT_TRUE(executable(d, s, CompoundAction{}));
    EXPECT_EQ(duration(d, CompoundAction{}), 0);

    int mv = act(d, "move", {sym("r6"), sym("r7")});
    ASSERT_GE(mv, 0);
    EXPECT_TRUE(executable(d, s, mv));
    EXPECT_EQ(duration(d, mv), 1);
    State s1 = successor(d, s, {mv}, 0);
    EXPECT_TRUE(holds(d, s1, Term::symbol("in", {sym("r7")})));
    EXPECT_FALSE(holds(d, s1, Term::symbol("in", {sym("r6")})));

    int open = act(d, "open_door", {sym("d3")});
    ASSERT_GE(open, 0);
    EXPECT_TRUE(d.action(open).physically_possible);
    EXPECT_FALSE(executable(d, s, open));  // not next to it
}

TEST(RoomsDomain, LockedDoorBlocksMove) {
    LoadedProblem lp = load_problem_file(testsupport::scenario("rooms", 3));
    const Domain &d = *lp.domain;
    auto sym = [](const char *n) { return Term::symbol(n); };
    State s = lp.problem.initial;
    s.fluents[d.fluent_id(Term::symbol("in", {sym("r6")}))] = false;
    s.fluents[d.fluent_id(Term::symbol("in", {sym("r2")}))] = true;
    int through = act(d, "move", {sym("r2"), sym("r1")});
    int open = act(d, "open_door", {sym("d3")});
    EXPECT_FALSE(executable(d, s, through));
    EXPECT_TRUE(executable(d, s, open));
    State s1 = successor(d, s, {open}, 0);
    EXPECT_TRUE(executable(d, s1, through));
}

TEST(Config, ErrorsNameTheKey) {
    EXPECT_EQ(config_error_key(R"({"domain": "traffic"})"), "locations");
    EXPECT_EQ(config_error_key(R"({"domain": "boats"})"), "domain");
    EXPECT_EQ(config_error_key(R"({"domain": "traffic", "locations": [1, 2],
        "edges": [{"from": 1, "to": 3, "speed_limit": 25}], "initial": 1, "goal": 2})"),
              "edges[0].to");
    EXPECT_EQ(config_error_key(R"({"domain": "traffic", "locations": [1, 2],
        "edges": [{"from": 1, "to": 2, "speed_limit": 25}], "initial": 1, "goal": 2,
        "lights": [{"loc": 1, "step": 0, "color": "blue"}]})"),
              "lights[0].color");
    EXPECT_EQ(config_error_key(R"({"domain": "traffic", "locations": [1, 2],
        "edges": [{"from": 1, "to": 2, "speed_limit": "fast"}], "initial": 1, "goal": 2})"),
              "edges[0].speed_limit");
    EXPECT_EQ(config_error_key(R"({"domain": "rooms", "rooms": ["a", "b"],
        "doors": [{"from": "a", "to": "a"}], "agent": {"start": "a"}, "goal": "b"})"),
              "doors[0]");
    EXPECT_EQ(config_error_key("not json"), "<document>");
}

TEST(Config, MissingFileIsIoError) {
    EXPECT_THROW(load_problem_file("/nonexistent/problem.json"), IoError);
}

TEST(Config, BuildFromStructMatchesJson) {
    TrafficConfig c;
    c.locations = {1, 2, 3};
    c.edges = {{1, 2, 25, true, std::nullopt}, {2, 3, 45, false, std::nullopt}};
    c.speeds = {25, 45};
    c.initial = 1;
    c.goal = 3;
    c.horizon = 3;
    LoadedProblem a = build_traffic(c);
    LoadedProblem b = load_problem(R"({"domain": "traffic", "locations": [1, 2, 3],
        "edges": [{"from": 1, "to": 2, "speed_limit": 25},
                  {"from": 2, "to": 3, "speed_limit": 45, "bidirectional": false}],
        "speeds": [25, 45], "initial": 1, "goal": 3, "horizon": 3})");
    ASSERT_EQ(a.domain->action_count(), b.domain->action_count());
    for (std::size_t i = 0; i < a.domain->action_count(); ++i)
        EXPECT_EQ(a.domain->action(static_cast<int>(i)).key, b.domain->action(static_cast<int>(i)).key);
    EXPECT_EQ(a.problem.initial, b.problem.initial);
    // one-way 2->3: no drive back
    EXPECT_LT(a.domain->action_id(Term::symbol("drive", {loc(3), loc(2), loc(25)})), 0);
}
