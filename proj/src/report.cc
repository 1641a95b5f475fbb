#include "aoplkit/report.h"

#include <cstdio>
#include <sstream>

namespace aoplkit {

using nlohmann::json;

namespace {

json record_json(const PenaltyRecord &r) {
    return {{"rule", r.label}, {"points", r.points}, {"step", r.step}, {"kind", std::string(violation_name(r.kind))}};
}

std::string seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", s);
    return buf;
}

}  // namespace

json plan_json(const PlanResult &r) {
    json steps = json::array();
    for (std::size_t i = 0; i < r.action_names.size(); ++i)
        steps.push_back({{"step", i}, {"action", r.action_names[i]}});
    json records = json::array();
    for (const PenaltyRecord &rec : r.metrics.records)
        records.push_back(record_json(rec));
    json expl = json::array();
    for (const Explanation &e : r.explanations) {
        json j = record_json(e.record);
        j["action"] = e.action;
        j["rule_text"] = e.rule_text;
        expl.push_back(std::move(j));
    }
    json objective = json::array();
    for (std::size_t i = 0; i < r.tiers.size(); ++i)
        objective.push_back({{"metric", std::string(metric_name(r.tiers[i]))}, {"value", r.objective[i]}});
    return {{"mode", r.mode.name()},
            {"steps", steps},
            {"metrics",
             {{"cumulative_penalty", r.metrics.cumulative_penalty},
              {"cumulative_time", r.metrics.cumulative_time},
              {"length", r.metrics.length},
              {"high_penalty_hits", r.metrics.high_penalty_hits}}},
            {"records", records},
            {"objective", objective},
            {"explanations", expl},
            {"strongly_compliant_elements", r.strongly_compliant_elements},
            {"elements", r.elements},
            {"nodes", r.nodes},
            {"wall_seconds", r.wall_seconds}};
}

std::string plan_text(const PlanResult &r) {
    std::ostringstream os;
    os << "mode " << r.mode.name() << ", " << r.action_names.size() << " steps\n";
    for (std::size_t i = 0; i < r.action_names.size(); ++i)
        os << "  " << i << "  " << r.action_names[i] << "\n";
    os << "penalty " << r.metrics.cumulative_penalty << ", time " << r.metrics.cumulative_time << ", length "
       << r.metrics.length << "\n";
    for (const Explanation &e : r.explanations)
        os << "  step " << e.record.step << ": " << e.record.label << " (" << e.record.points << " points, "
           << violation_name(e.record.kind) << ") by " << e.action << "\n      " << e.rule_text << "\n";
    return os.str();
}

json report_json(const PolicyReport &r) {
    json rules = json::array();
    for (std::size_t i = 0; i < r.rule_labels.size(); ++i)
        rules.push_back({{"label", r.rule_labels[i]}, {"applicable_states", r.applicable_states[i]}});
    json findings = json::array();
    for (const StateFinding &f : r.findings) {
        json diags = json::array();
        for (const Diagnostic &d : f.diagnostics)
            diags.push_back({{"kind", d.kind}, {"detail", d.detail}});
        findings.push_back({{"state", f.index}, {"step", f.step}, {"diagnostics", diags}});
    }
    return {{"coverage", r.coverage},
            {"states", r.states},
            {"ambiguous_states", r.ambiguous},
            {"modality_conflicts", r.modality_conflicts},
            {"strict_conflicts", r.strict_conflicts},
            {"consistent", r.consistent()},
            {"categorical", r.categorical()},
            {"dead_rules", r.dead_rules},
            {"rules", rules},
            {"findings", findings}};
}

std::string report_text(const PolicyReport &r) {
    std::ostringstream os;
    os << r.states << " states (" << r.coverage << ")\n";
    os << "ambiguous states: " << r.ambiguous << "\n";
    os << "modality conflicts: " << r.modality_conflicts << "\n";
    os << "strict conflicts: " << r.strict_conflicts << "\n";
    os << (r.categorical() ? "categorical" : "NOT categorical") << " and "
       << (r.consistent() ? "consistent" : "NOT consistent") << " over these states\n";
    if (!r.dead_rules.empty()) {
        os << "never applicable:";
        for (const auto &l : r.dead_rules)
            os << " " << l;
        os << "\n";
    }
    std::size_t shown = 0;
    for (const StateFinding &f : r.findings) {
        for (const Diagnostic &d : f.diagnostics)
            os << "  state " << f.index << " step " << f.step << ": " << d.kind << " " << d.detail << "\n";
        if (++shown == 20) {
            os << "  ... " << r.findings.size() - shown << " more states with findings\n";
            break;
        }
    }
    return os.str();
}

json verdict_json(const GroundPolicy &g, const DerivedSet &derived, const ComplianceVerdict &v) {
    json lits = json::array();
    for (const DerivedLiteral &l : derived.literals)
        lits.push_back(render_literal(g, l));
    json per = json::array();
    for (Authorization a : v.per_element)
        per.push_back(std::string(authorization_name(a)));
    json viol = json::array();
    for (const Violation &x : v.violations)
        viol.push_back({{"rule", g.rules[x.rule].key},
                        {"kind", std::string(violation_name(x.kind))},
                        {"action", g.domain->action(x.action).key}});
    json diags = json::array();
    for (const Diagnostic &d : derived.diagnostics)
        diags.push_back({{"kind", d.kind}, {"detail", d.detail}});
    return {{"step", derived.step},
            {"derived", lits},
            {"authorization", std::string(authorization_name(v.authorization))},
            {"per_element", per},
            {"obligation_compliant", v.obligation_compliant},
            {"strongly_compliant", v.strongly_compliant},
            {"violations", viol},
            {"diagnostics", diags}};
}

std::string verdict_text(const GroundPolicy &g, const DerivedSet &derived, const ComplianceVerdict &v) {
    std::ostringstream os;
    os << "step " << derived.step << " derived:";
    for (const DerivedLiteral &l : derived.literals)
        os << " " << render_literal(g, l);
    os << "\nauthorization: " << authorization_name(v.authorization) << "\n";
    os << "obligations: " << (v.obligation_compliant ? "compliant" : "non-compliant") << "\n";
    os << "strongly compliant: " << (v.strongly_compliant ? "yes" : "no") << "\n";
    for (const Violation &x : v.violations)
        os << "  " << g.rules[x.rule].key << ": " << violation_name(x.kind) << " "
           << g.domain->action(x.action).key << "\n";
    return os.str();
}

json agreement_json(const OracleAgreement &a) {
    json mm = json::array();
    for (const OracleMismatch &m : a.mismatches)
        mm.push_back({{"state", m.index}, {"step", m.step}, {"models", m.models}, {"detail", m.detail}});
    return {{"states", a.states},
            {"agree", a.agree},
            {"categorical", a.categorical},
            {"single_model", a.single_model},
            {"ok", a.ok()},
            {"mismatches", mm}};
}

std::string agreement_text(const OracleAgreement &a) {
    std::ostringstream os;
    os << a.agree << "/" << a.states << " states agree (" << a.categorical << " categorical, " << a.single_model
       << " with a single model)\n";
    for (const OracleMismatch &m : a.mismatches)
        os << "  state " << m.index << " step " << m.step << ": " << m.detail << "\n";
    return os.str();
}

json compare_json(const std::vector<ModeRow> &rows) {
    json out = json::array();
    for (const ModeRow &r : rows) {
        json j = {{"mode", r.mode.name()}, {"wall_seconds", r.wall_seconds}};
        if (r.result) {
            j["length"] = r.result->metrics.length;
            j["steps"] = r.result->action_names.size();
            j["cumulative_penalty"] = r.result->metrics.cumulative_penalty;
            j["cumulative_time"] = r.result->metrics.cumulative_time;
            j["plan"] = r.result->action_names;
        } else {
            j["error"] = r.error;
        }
        out.push_back(std::move(j));
    }
    return out;
}

std::string compare_text(const std::vector<ModeRow> &rows) {
    std::ostringstream os;
    os << "mode             length  penalty  time  seconds\n";
    for (const ModeRow &r : rows) {
        char buf[160];
        if (r.result)
            std::snprintf(buf, sizeof buf, "%-16s %6lld  %7lld  %4lld  %s\n", r.mode.name().c_str(),
                          r.result->metrics.length, r.result->metrics.cumulative_penalty,
                          r.result->metrics.cumulative_time, seconds(r.wall_seconds).c_str());
        else
            std::snprintf(buf, sizeof buf, "%-16s no plan: %s\n", r.mode.name().c_str(), r.error.c_str());
        os << buf;
    }
    return os.str();
}

}  // namespace aoplkit
