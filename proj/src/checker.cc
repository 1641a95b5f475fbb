#include "aoplkit/checker.h"

#include <omp.h>

#include <algorithm>
#include <random>

#include "aoplkit/errors.h"

namespace aoplkit {

namespace {

struct StateOutcome {
    std::vector<Diagnostic> diagnostics;
    std::vector<char> source_applicable;
    bool ambiguous = false;
};

StateOutcome evaluate_one(const Policy &p, const GroundPolicy &g, const StateSample &s, const EvalOptions &opts) {
    EvalOptions o = opts;
    o.throw_on_ambiguity = false;
    DerivedSet ds = applicable_rules(g, s.first, s.second, o);
    StateOutcome out;
    out.source_applicable.assign(p.rules.size(), 0);
    for (const RuleActivation &a : ds.activations)
        if (a.status == ActivationStatus::Applicable)
            out.source_applicable[g.rules[a.rule].source] = 1;
    out.ambiguous = ds.ambiguous;
    out.diagnostics = std::move(ds.diagnostics);
    return out;
}

PolicyReport merge(const Policy &p, const std::vector<StateSample> &states, std::vector<StateOutcome> &outcomes) {
    PolicyReport r;
    r.coverage = "sampled";
    r.states = states.size();
    for (const PolicyRule &rule : p.rules)
        r.rule_labels.push_back(rule.label.str());
    r.applicable_states.assign(p.rules.size(), 0);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        StateOutcome &o = outcomes[i];
        for (std::size_t k = 0; k < o.source_applicable.size(); ++k)
            r.applicable_states[k] += o.source_applicable[k];
        if (o.ambiguous)
            ++r.ambiguous;
        for (const Diagnostic &d : o.diagnostics) {
            if (d.kind == "modality-conflict")
                ++r.modality_conflicts;
            else if (d.kind == "strict-conflict")
                ++r.strict_conflicts;
        }
        if (!o.diagnostics.empty())
            r.findings.push_back({i, states[i].second, std::move(o.diagnostics)});
    }
    for (std::size_t k = 0; k < p.rules.size(); ++k)
        if (r.applicable_states[k] == 0)
            r.dead_rules.push_back(r.rule_labels[k]);
    return r;
}

std::string render_set(const GroundPolicy &g, const std::vector<DerivedLiteral> &lits) {
    std::string s = "{";
    for (std::size_t i = 0; i < lits.size(); ++i)
        s += (i ? ", " : "") + render_literal(g, lits[i]);
    return s + "}";
}

struct AgreementOutcome {
    bool categorical = false;
    bool agree = false;
    std::size_t models = 0;
    std::string detail;
};

AgreementOutcome agree_one(const GroundPolicy &g, const StateSample &s, const OracleOptions &opts) {
    AgreementOutcome out;
    EvalOptions eo;
    eo.executability_filter = opts.executability_filter;
    eo.throw_on_ambiguity = false;
    DerivedSet ds = applicable_rules(g, s.first, s.second, eo);
    out.categorical = !ds.ambiguous;
    std::vector<std::vector<DerivedLiteral>> models;
    try {
        models = oracle_answer_sets(g, s.first, s.second, opts);
    } catch (const OracleBoundExceeded &e) {
        out.detail = e.what();
        return out;
    }
    out.models = models.size();
    if (out.categorical) {
        out.agree = models.size() == 1 && models[0] == ds.literals;
        if (!out.agree)
            out.detail = "evaluator " + render_set(g, ds.literals) + ", oracle " +
                         (models.empty() ? std::string("no model") : render_set(g, models[0])) +
                         (models.size() > 1 ? " (+" + std::to_string(models.size() - 1) + " more)" : "");
        return out;
    }
    // every model keeps the strict conclusions and drops one side of each
    // ambiguous pair
    std::vector<DerivedLiteral> strict;
    for (const RuleActivation &a : ds.activations)
        if (a.status == ActivationStatus::Applicable && g.rules[a.rule].strictness == Strictness::Strict)
            strict.push_back({g.rules[a.rule].form, g.rules[a.rule].action});
    out.agree = models.size() >= 2;
    for (const auto &m : models)
        for (const DerivedLiteral &l : strict)
            if (!std::binary_search(m.begin(), m.end(), l))
                out.agree = false;
    if (!out.agree)
        out.detail = "ambiguous state, oracle found " + std::to_string(models.size()) + " models";
    return out;
}

OracleAgreement merge_agreement(const std::vector<StateSample> &states, const std::vector<AgreementOutcome> &outs) {
    OracleAgreement r;
    r.states = states.size();
    for (std::size_t i = 0; i < outs.size(); ++i) {
        const AgreementOutcome &o = outs[i];
        r.categorical += o.categorical;
        r.single_model += o.models == 1;
        if (o.agree)
            ++r.agree;
        else
            r.mismatches.push_back({i, states[i].second, o.models, o.detail});
    }
    return r;
}

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

}  // namespace

PolicyReport check_policy_serial(const Policy &p, const GroundPolicy &g, const std::vector<StateSample> &states,
                                 const EvalOptions &opts) {
    std::vector<StateOutcome> outcomes;
    outcomes.reserve(states.size());
    for (const StateSample &s : states)
        outcomes.push_back(evaluate_one(p, g, s, opts));
    return merge(p, states, outcomes);
}

PolicyReport check_policy(const Policy &p, const GroundPolicy &g, const std::vector<StateSample> &states,
                          const EvalOptions &opts, int threads) {
    std::vector<StateOutcome> outcomes(states.size());
    const long long n = static_cast<long long>(states.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(resolve_threads(threads))
    for (long long i = 0; i < n; ++i)
        outcomes[i] = evaluate_one(p, g, states[i], opts);
    return merge(p, states, outcomes);
}

OracleAgreement oracle_agreement_serial(const GroundPolicy &g, const std::vector<StateSample> &states,
                                        const OracleOptions &opts) {
    std::vector<AgreementOutcome> outs;
    outs.reserve(states.size());
    for (const StateSample &s : states)
        outs.push_back(agree_one(g, s, opts));
    return merge_agreement(states, outs);
}

OracleAgreement oracle_agreement(const GroundPolicy &g, const std::vector<StateSample> &states,
                                 const OracleOptions &opts, int threads) {
    std::vector<AgreementOutcome> outs(states.size());
    const long long n = static_cast<long long>(states.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(resolve_threads(threads))
    for (long long i = 0; i < n; ++i)
        outs[i] = agree_one(g, states[i], opts);
    return merge_agreement(states, outs);
}

std::vector<StateSample> sample_states(const Domain &d, const PlanningProblem &p, std::size_t n, std::uint64_t seed) {
    EnumerateOptions eo;
    std::vector<StateSample> all = enumerate_states(d, p, eo);
    if (all.size() <= n)
        return all;
    std::vector<std::size_t> idx(all.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(n);
    std::sort(idx.begin(), idx.end());
    std::vector<StateSample> out;
    out.reserve(n);
    for (std::size_t i : idx)
        out.push_back(std::move(all[i]));
    return out;
}

}  // namespace aoplkit
