#include <gtest/gtest.h>

#include <random>

#include "aoplkit/config.h"
#include "aoplkit/planner.h"
#include "support.h"

using namespace aoplkit;

namespace {

std::vector<std::string> names(const PlanResult &r) { return r.action_names; }

}  // namespace

TEST(Modes, ParseAndTiers) {
    EXPECT_EQ(BehaviorMode::parse("emergency").kind, ModeKind::Emergency);
    EXPECT_EQ(BehaviorMode::parse("non-emergency").kind, ModeKind::NonEmergency);
    BehaviorMode b = BehaviorMode::parse("bounded:40");
    EXPECT_EQ(b.kind, ModeKind::BoundedTime);
    EXPECT_EQ(b.max_time, 40);
    EXPECT_EQ(BehaviorMode::parse("risky").kind, ModeKind::BaselineRisky);
    EXPECT_EQ(BehaviorMode::parse("normal").kind, ModeKind::BaselineNormal);
    EXPECT_THROW(BehaviorMode::parse("reckless"), Error);
    BehaviorMode e;
    EXPECT_EQ(e.high_penalty, HighPenalty::Forbid);
    EXPECT_EQ(e.threshold, 50);
    EXPECT_EQ(objective_tiers(BehaviorMode::parse("emergency")), (std::vector<Metric>{Metric::Time, Metric::Penalty}));
    EXPECT_EQ(objective_tiers(BehaviorMode::parse("non-emergency")),
              (std::vector<Metric>{Metric::Penalty, Metric::Time}));
    EXPECT_EQ(objective_tiers(BehaviorMode::parse("risky")), std::vector<Metric>{Metric::Length});
    e.high_penalty = HighPenalty::MinimizeTop;
    EXPECT_EQ(objective_tiers(e).front(), Metric::HighPenaltyHits);
}

TEST(Planner, EmergencyTakesTheFastRoute) {
    auto l = testsupport::load(testsupport::data("policies/traffic.aopl"), testsupport::scenario("traffic", 1));
    PlanResult r = plan(l.lp, l.policy, BehaviorMode::parse("emergency"));
    EXPECT_EQ(names(r), (std::vector<std::string>{"drive(6,8,45)", "drive(8,7,85)", "drive(7,9,45)",
                                                  "drive(9,10,85)"}));
    EXPECT_EQ(r.metrics.cumulative_time, 30);
    EXPECT_EQ(r.metrics.cumulative_penalty, 15);
    EXPECT_EQ(r.objective, (std::vector<long long>{30, 15}));
    EXPECT_EQ(r.explanations.size(), r.metrics.records.size());
}

TEST(Planner, NonEmergencyAvoidsAllPenalties) {
    auto l = testsupport::load(testsupport::data("policies/traffic.aopl"), testsupport::scenario("traffic", 1));
    PlanResult r = plan(l.lp, l.policy, BehaviorMode::parse("non-emergency"));
    EXPECT_EQ(r.metrics.cumulative_penalty, 0);
    EXPECT_EQ(r.metrics.cumulative_time, 67);
    EXPECT_EQ(r.actions.size(), 6u);
    EXPECT_EQ(r.action_names.back(), "drive(13,10,15)");
}

TEST(Planner, PedestrianScenario) {
    auto l = testsupport::load(testsupport::data("policies/traffic.aopl"), testsupport::scenario("traffic", 5));
    PlanResult em = plan(l.lp, l.policy, BehaviorMode::parse("emergency"));
    EXPECT_EQ(em.actions.size(), 3u);
    EXPECT_EQ(em.metrics.cumulative_penalty, 6);
    EXPECT_EQ(em.metrics.cumulative_time, 17);
    EXPECT_EQ(em.metrics.high_penalty_hits, 0);
    PlanResult risky = plan(l.lp, l.policy, BehaviorMode::parse("risky"));
    EXPECT_EQ(risky.actions.size(), 2u);
    EXPECT_EQ(risky.metrics.cumulative_penalty, 0);  // risky ignores the policy

    // letting high penalties through shortens the emergency plan
    BehaviorMode off = BehaviorMode::parse("emergency");
    off.high_penalty = HighPenalty::Off;
    PlanResult loose = plan(l.lp, l.policy, off);
    EXPECT_LE(loose.metrics.cumulative_time, em.metrics.cumulative_time);
    EXPECT_GE(loose.metrics.high_penalty_hits, 1);
}

TEST(Planner, BoundedTimeRespectsBound) {
    auto l = testsupport::load(testsupport::data("policies/traffic.aopl"), testsupport::scenario("traffic", 1));
    PlanResult r = plan(l.lp, l.policy, BehaviorMode::parse("bounded:45"));
    EXPECT_LE(r.metrics.cumulative_time, 45);
    PlanResult em = plan(l.lp, l.policy, BehaviorMode::parse("emergency"));
    EXPECT_LE(r.metrics.cumulative_penalty, em.metrics.cumulative_penalty);
    try {
        plan(l.lp, l.policy, BehaviorMode::parse("bounded:10"));
        FAIL() << "plan found under an impossible bound";
    } catch (const NoPlan &e) {
        EXPECT_EQ(e.reason, NoPlan::Reason::Constraints);
    }
}

TEST(Planner, NoPlanReasons) {
    auto l = testsupport::load(testsupport::data("policies/traffic.aopl"), testsupport::scenario("traffic", 1));
    try {
        plan(l.lp, l.policy, BehaviorMode::parse("emergency"), {.horizon = 2});
        FAIL();
    } catch (const NoPlan &e) {
        EXPECT_EQ(e.reason, NoPlan::Reason::HorizonTooShort);
    }
    TrafficConfig c;
    c.locations = {1, 2, 3};
    c.edges = {{1, 2, 25, true, std::nullopt}};
    c.initial = 1;
    c.goal = 3;
    LoadedProblem lp = build_traffic(c);
    try {
        plan(lp, l.policy, BehaviorMode::parse("emergency"));
        FAIL();
    } catch (const NoPlan &e) {
        EXPECT_EQ(e.reason, NoPlan::Reason::Unreachable);
    }
}

TEST(Planner, ThreadsAndMemoDoNotChangeTheAnswer) {
    for (int n : {1, 4, 9, 12}) {
        auto l = testsupport::load(testsupport::data("policies/traffic.aopl"), testsupport::scenario("traffic", n));
        for (const char *m : {"emergency", "non-emergency", "normal"}) {
            SCOPED_TRACE(std::to_string(n) + " " + m);
            PlanResult a = plan(l.lp, l.policy, BehaviorMode::parse(m));
            PlanResult b = plan(l.lp, l.policy, BehaviorMode::parse(m), {.threads = 4});
            EXPECT_EQ(a.action_names, b.action_names);
            // the unmemoised search is exponential; keep it to the small maps
            if (n == 1) {
                PlanResult c = plan(l.lp, l.policy, BehaviorMode::parse(m), {.memoize = false});
                EXPECT_EQ(a.action_names, c.action_names);
                EXPECT_EQ(a.objective, c.objective);
            }
        }
    }
}

TEST(Planner, ScorePlanReproducesObjective) {
    auto l = testsupport::load(testsupport::data("policies/traffic.aopl"), testsupport::scenario("traffic", 8));
    for (const char *m : {"emergency", "non-emergency", "risky", "normal"}) {
        BehaviorMode mode = BehaviorMode::parse(m);
        PlanResult r = plan(l.lp, l.policy, mode);
        PlanResult s = score_plan(*l.lp.domain, l.lp.problem, l.policy, l.g, mode, r.actions);
        EXPECT_EQ(r.objective, s.objective) << m;
        EXPECT_EQ(r.metrics.cumulative_penalty, s.metrics.cumulative_penalty) << m;
    }
}

TEST(Planner, CompareModesOneRowEach) {
    auto l = testsupport::load(testsupport::data("policies/rooms.aopl"), testsupport::scenario("rooms", 3));
    std::vector<BehaviorMode> modes;
    for (const char *m : {"non-emergency", "emergency", "normal", "risky"})
        modes.push_back(BehaviorMode::parse(m));
    auto rows = compare_modes(l.lp, l.policy, modes);
    ASSERT_EQ(rows.size(), 4u);
    for (const auto &row : rows)
        EXPECT_TRUE(row.result.has_value()) << row.mode.name() << ": " << row.error;
    // risky never takes longer than any policy-aware mode
    for (const auto &row : rows)
        EXPECT_LE(rows[3].result->metrics.length, row.result->metrics.length);
}

// Optimality against exhaustive search on small random maps.
TEST(Planner, MatchesBruteForceOnRandomMaps) {
    std::mt19937_64 rng(2024);
    Policy p = load_policy_file(testsupport::data("policies/traffic.aopl"));
    int solved = 0;
    for (int trial = 0; trial < 40; ++trial) {
        TrafficConfig c = testsupport::random_map(rng, 5, 3, 4);
        LoadedProblem lp = build_traffic(c);
        for (bool emergency : {true, false}) {
            SCOPED_TRACE("trial " + std::to_string(trial) + (emergency ? " emergency" : " non-emergency"));
            auto want = testsupport::brute_force(c, emergency);
            std::optional<std::vector<long long>> got;
            try {
                got = plan(lp, p, BehaviorMode::parse(emergency ? "emergency" : "non-emergency")).objective;
            } catch (const NoPlan &) {
            }
            ASSERT_EQ(got.has_value(), want.has_value());
            if (want) {
                EXPECT_EQ(*got, want->objective);
                ++solved;
            }
        }
    }
    EXPECT_GT(solved, 20);
}
