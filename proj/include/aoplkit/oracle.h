#ifndef AOPLKIT_ORACLE_H
#define AOPLKIT_ORACLE_H

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "aoplkit/evaluator.h"

namespace aoplkit {

struct OracleOptions {
    bool executability_filter = true;
    std::size_t max_ground_rules = 2000000;
    std::size_t max_branches = 1u << 16;
};

// A ground normal program: head :- pos, not neg.
struct NormalProgram {
    struct Rule {
        int head;
        std::vector<int> pos;
        std::vector<int> neg;
    };
    std::vector<std::string> atoms;
    std::vector<Rule> rules;

    int atom(const std::string &name);
    std::size_t atom_count() const { return atoms.size(); }

private:
    std::unordered_map<std::string, int> index_;
};

// Least model of the reduct P^M (Gelfond-Lifschitz).
std::vector<char> reduct_least_model(const NormalProgram &p, const std::vector<char> &m);

// Every stable model, by well-founded propagation plus guessing on atoms the
// well-founded model leaves undefined. Each candidate is checked against
// the reduct of `p`. Throws OracleBoundExceeded past `max_branches` leaves.
std::vector<std::vector<char>> stable_models(const NormalProgram &p, std::size_t max_branches,
                                             const std::vector<int> &preferred_guesses = {});

// Answer sets of the reified program (policy-independent rules, E(P) and the
// state facts) for one state and step, each restricted to its
// holds(lp(hd), step) atoms.
std::vector<std::vector<DerivedLiteral>> oracle_answer_sets(const GroundPolicy &g, const State &s, int step,
                                                            const OracleOptions &opts = {});

// The ground program itself, for inspection and tests.
NormalProgram reified_program(const GroundPolicy &g, const State &s, int step, bool executability_filter);

}  // namespace aoplkit

#endif
