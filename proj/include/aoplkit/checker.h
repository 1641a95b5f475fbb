#ifndef AOPLKIT_CHECKER_H
#define AOPLKIT_CHECKER_H

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aoplkit/evaluator.h"
#include "aoplkit/oracle.h"

namespace aoplkit {

// A state together with the step it is evaluated at.
using StateSample = std::pair<State, int>;

struct StateFinding {
    std::size_t index = 0;  // position in the input stream
    int step = 0;
    std::vector<Diagnostic> diagnostics;
};

struct PolicyReport {
    std::string coverage;  // how the states were obtained
    std::size_t states = 0;
    std::size_t ambiguous = 0;
    std::size_t modality_conflicts = 0;
    std::size_t strict_conflicts = 0;
    // per source rule: number of states with at least one applicable instance
    std::vector<std::string> rule_labels;
    std::vector<std::size_t> applicable_states;
    std::vector<std::string> dead_rules;
    std::vector<StateFinding> findings;  // states with diagnostics, in input order

    bool categorical() const { return ambiguous == 0; }
    bool consistent() const { return ambiguous == 0 && strict_conflicts == 0; }
};

// Evaluates every state without throwing on ambiguity and aggregates the
// diagnostics. The parallel version splits the stream across OpenMP threads
// and produces the same report.
PolicyReport check_policy_serial(const Policy &p, const GroundPolicy &g, const std::vector<StateSample> &states,
                                 const EvalOptions &opts = {});
PolicyReport check_policy(const Policy &p, const GroundPolicy &g, const std::vector<StateSample> &states,
                          const EvalOptions &opts = {}, int threads = 0);

struct OracleMismatch {
    std::size_t index = 0;
    int step = 0;
    std::size_t models = 0;
    std::string detail;
};

struct OracleAgreement {
    std::size_t states = 0;
    std::size_t agree = 0;
    std::size_t categorical = 0;      // states where the evaluator found no ambiguity
    std::size_t single_model = 0;     // states where the oracle found exactly one model
    std::vector<OracleMismatch> mismatches;

    bool ok() const { return mismatches.empty() && agree == states; }
};

// Evaluator against oracle, state by state. Categorical states must give one
// model equal to the derived literals; ambiguous ones at least two models,
// each containing the literals of every strict applicable rule.
OracleAgreement oracle_agreement_serial(const GroundPolicy &g, const std::vector<StateSample> &states,
                                        const OracleOptions &opts = {});
OracleAgreement oracle_agreement(const GroundPolicy &g, const std::vector<StateSample> &states,
                                 const OracleOptions &opts = {}, int threads = 0);

// Reachable states of the problem; when there are more than `n`, a seeded
// uniform sample of `n` of them in enumeration order.
std::vector<StateSample> sample_states(const Domain &d, const PlanningProblem &p, std::size_t n, std::uint64_t seed);

}  // namespace aoplkit

#endif
