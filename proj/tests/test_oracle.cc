#include <gtest/gtest.h>

#include "aoplkit/checker.h"
#include "aoplkit/config.h"
#include "aoplkit/errors.h"
#include "aoplkit/oracle.h"
#include "support.h"

using namespace aoplkit;

namespace {

NormalProgram program(const std::vector<std::tuple<std::string, std::vector<std::string>, std::vector<std::string>>> &rs) {
    NormalProgram p;
    for (const auto &[h, pos, neg] : rs) {
        NormalProgram::Rule r{p.atom(h), {}, {}};
        for (const auto &a : pos)
            r.pos.push_back(p.atom(a));
        for (const auto &a : neg)
            r.neg.push_back(p.atom(a));
        p.rules.push_back(r);
    }
    return p;
}

std::set<std::string> true_atoms(const NormalProgram &p, const std::vector<char> &m) {
    std::set<std::string> out;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i])
            out.insert(p.atoms[i]);
    return out;
}

}  // namespace

TEST(StableModels, EvenLoopHasTwoModels) {
    NormalProgram p = program({{"a", {}, {"b"}}, {"b", {}, {"a"}}, {"c", {"a"}, {}}});
    auto ms = stable_models(p, 100);
    ASSERT_EQ(ms.size(), 2u);
    std::set<std::set<std::string>> got{true_atoms(p, ms[0]), true_atoms(p, ms[1])};
    EXPECT_EQ(got, (std::set<std::set<std::string>>{{"a", "c"}, {"b"}}));
}

TEST(StableModels, OddLoopHasNone) {
    NormalProgram p = program({{"p", {}, {"p"}}});
    EXPECT_TRUE(stable_models(p, 100).empty());
}

TEST(StableModels, StratifiedProgramHasOne) {
    NormalProgram p = program({{"a", {}, {}}, {"b", {"a"}, {"c"}}, {"d", {"c"}, {}}});
    auto ms = stable_models(p, 100);
    ASSERT_EQ(ms.size(), 1u);
    EXPECT_EQ(true_atoms(p, ms[0]), (std::set<std::string>{"a", "b"}));
}

TEST(StableModels, ReductOfCandidate) {
    NormalProgram p = program({{"a", {}, {"b"}}, {"b", {}, {"a"}}});
    std::vector<char> m(p.atom_count(), 0);
    m[p.atom("a")] = 1;
    EXPECT_EQ(reduct_least_model(p, m), m);
    std::vector<char> both(p.atom_count(), 1);
    EXPECT_NE(reduct_least_model(p, both), both);
}

TEST(StableModels, BranchBound) {
    // n independent even loops: 2^n models
    std::vector<std::tuple<std::string, std::vector<std::string>, std::vector<std::string>>> rs;
    for (int i = 0; i < 6; ++i) {
        std::string a = "a" + std::to_string(i), b = "b" + std::to_string(i);
        rs.push_back({a, {}, {b}});
        rs.push_back({b, {}, {a}});
    }
    NormalProgram p = program(rs);
    EXPECT_EQ(stable_models(p, 1000).size(), 64u);
    EXPECT_THROW(stable_models(p, 10), OracleBoundExceeded);
}

TEST(Oracle, MatchesEvaluatorOnScenarioStart) {
    auto l = testsupport::load(testsupport::data("policies/traffic.aopl"), testsupport::scenario("traffic", 1));
    auto models = oracle_answer_sets(l.g, l.lp.problem.initial, 0);
    ASSERT_EQ(models.size(), 1u);
    DerivedSet ds = applicable_rules(l.g, l.lp.problem.initial, 0);
    EXPECT_EQ(models[0], ds.literals);
}

TEST(Oracle, ConflictPolicyGivesTwoModels) {
    auto l = testsupport::load(testsupport::data("policies/conflict.aopl"), testsupport::scenario("traffic", 1));
    auto models = oracle_answer_sets(l.g, l.lp.problem.initial, 0);
    ASSERT_EQ(models.size(), 2u);
    int a = l.lp.domain->action_id(Term::symbol("drive", {Term::integer(6), Term::integer(8), Term::integer(45)}));
    DerivedLiteral pos{HeadForm::Permitted, a}, neg{HeadForm::NegPermitted, a};
    std::set<std::vector<DerivedLiteral>> got(models.begin(), models.end());
    EXPECT_TRUE(got.count({pos}));
    EXPECT_TRUE(got.count({neg}));
}

TEST(Oracle, ExecutabilityRefinementInProgram) {
    auto l = testsupport::load(testsupport::data("policies/conflict.aopl"), testsupport::scenario("traffic", 1));
    // move the car away from 6: both rules are blocked and the conflict disappears
    LoadedProblem lp = l.lp;
    const Domain &d = *lp.domain;
    State s = lp.problem.initial;
    s.fluents[d.fluent_id(Term::symbol("at", {Term::integer(6)}))] = false;
    s.fluents[d.fluent_id(Term::symbol("at", {Term::integer(5)}))] = true;
    auto on = oracle_answer_sets(l.g, s, 0);
    ASSERT_EQ(on.size(), 1u);
    EXPECT_TRUE(on[0].empty());
    auto off = oracle_answer_sets(l.g, s, 0, {.executability_filter = false});
    EXPECT_EQ(off.size(), 2u);
}

TEST(Oracle, AgreementOverReachableStates) {
    for (const auto &[dom, n, pol] : std::vector<std::tuple<std::string, int, std::string>>{
             {"traffic", 5, "policies/traffic.aopl"}, {"rooms", 3, "policies/rooms.aopl"}}) {
        auto l = testsupport::load(testsupport::data(pol), testsupport::scenario(dom, n));
        auto states = sample_states(*l.lp.domain, l.lp.problem, 40, 1);
        OracleAgreement a = oracle_agreement_serial(l.g, states);
        EXPECT_TRUE(a.ok()) << dom << " " << a.mismatches.size() << " mismatches";
        EXPECT_EQ(a.states, states.size());
        EXPECT_EQ(a.single_model, a.categorical);
        OracleAgreement par = oracle_agreement(l.g, states, {}, 4);
        EXPECT_EQ(par.agree, a.agree);
        EXPECT_EQ(par.single_model, a.single_model);
    }
}

TEST(Oracle, AgreementOnAmbiguousStates) {
    auto l = testsupport::load(testsupport::data("policies/conflict.aopl"), testsupport::scenario("traffic", 1));
    auto states = sample_states(*l.lp.domain, l.lp.problem, 60, 3);
    OracleAgreement a = oracle_agreement_serial(l.g, states);
    EXPECT_TRUE(a.ok());
    EXPECT_LT(a.categorical, a.states);
}
