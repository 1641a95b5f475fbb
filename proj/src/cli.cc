#include "aoplkit/cli.h"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "aoplkit/checker.h"
#include "aoplkit/emitter.h"
#include "aoplkit/planner.h"
#include "aoplkit/report.h"
#include "aoplkit/validate.h"

namespace fs = std::filesystem;

namespace aoplkit {

namespace {

struct Options {
    std::string policy;
    std::vector<std::string> problems;
    std::string domain = "traffic";
    std::string mode;
    std::string high_penalty = "forbid";
    long long threshold = 50;
    int horizon = 0;
    bool no_filter = false;
    std::string format = "human";
    std::string out_dir;
    int threads = 1;
    std::uint64_t seed = 1;
    std::size_t samples = 500;
    std::string only;
    std::string action;
    std::string after;
    std::string modes = "emergency,non-emergency,risky,normal";
    std::string manifest;
    int runs = 10;
};

class UsageError : public Error {
public:
    using Error::Error;
};

// the report has already been printed
struct ValidationFailed {};

void setup_logging() {
    auto logger = spdlog::get("aopl-kit");
    if (!logger) {
        logger = spdlog::stderr_color_mt("aopl-kit");
        spdlog::set_default_logger(logger);
    }
    const char *env = std::getenv("AOPL_KIT_LOG");
    spdlog::set_level(env ? spdlog::level::from_str(env) : spdlog::level::warn);
}

std::string data_dir() {
#ifdef AOPLKIT_DATA_DIR
    return AOPLKIT_DATA_DIR;
#else
    return "data";
#endif
}

LoadedProblem load_first_problem(const Options &o) {
    if (!o.problems.empty())
        return load_problem_file(o.problems.front());
    if (o.domain != "traffic" && o.domain != "rooms")
        throw UsageError("--domain must be traffic or rooms");
    // a representative signature for policy-only commands
    return load_problem_file(data_dir() + "/" + o.domain + "/s01.json");
}

Policy load_valid_policy(const Options &o, const DomainSignature &sig, std::ostream &err) {
    if (o.policy.empty())
        throw UsageError("--policy is required");
    Policy p = load_policy_file(o.policy);
    ValidationReport rep = validate_policy(p, sig);
    if (!rep.ok()) {
        err << o.policy << ": invalid policy\n" << rep.str();
        throw ValidationFailed();
    }
    return p;
}

BehaviorMode make_mode(const Options &o, const std::string &text) {
    BehaviorMode m = BehaviorMode::parse(text);
    if (o.high_penalty == "forbid")
        m.high_penalty = HighPenalty::Forbid;
    else if (o.high_penalty == "minimize")
        m.high_penalty = HighPenalty::MinimizeTop;
    else if (o.high_penalty == "off")
        m.high_penalty = HighPenalty::Off;
    else
        throw UsageError("--high-penalty must be forbid, minimize or off");
    m.threshold = o.threshold;
    return m;
}

PlanOptions plan_options(const Options &o) {
    PlanOptions po;
    po.executability_filter = !o.no_filter;
    po.threads = o.threads;
    if (o.horizon > 0)
        po.horizon = o.horizon;
    return po;
}

bool json_out(const Options &o) {
    if (o.format != "human" && o.format != "json")
        throw UsageError("--format must be human or json");
    return o.format == "json";
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        if (!cur.empty())
            out.push_back(cur);
    return out;
}

std::string strip_spaces(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    return s;
}

// "a+b" is one compound action, "wait" the empty one.
CompoundAction parse_compound(const Domain &d, const std::string &text) {
    CompoundAction ca;
    std::string t = strip_spaces(text);
    if (t == "wait" || t.empty())
        return ca;
    for (const std::string &e : split(t, '+')) {
        auto it = d.action_index.find(e);
        if (it == d.action_index.end())
            throw UsageError("unknown action '" + e + "'");
        ca.push_back(it->second);
    }
    std::sort(ca.begin(), ca.end());
    return ca;
}

void write_file(const fs::path &path, const std::string &text) {
    std::ofstream f(path);
    if (!f)
        throw IoError("cannot write " + path.string());
    f << text;
}

int cmd_translate(const Options &o, std::ostream &out, std::ostream &err) {
    LoadedProblem lp = load_first_problem(o);
    Policy p = load_valid_policy(o, lp.domain->sig, err);
    std::string policy_lp = emit_policy_encoding(p, lp.domain->sig, o.only);
    if (o.out_dir.empty()) {
        out << policy_lp;
        return 0;
    }
    EmitOptions eo;
    eo.include_executability_refinement = !o.no_filter;
    BehaviorMode m = make_mode(o, o.mode.empty() ? lp.problem.mode : o.mode);
    if (m.kind == ModeKind::Emergency)
        eo.mode = EmitMode::Emergency;
    else if (m.kind == ModeKind::NonEmergency)
        eo.mode = EmitMode::NonEmergency;
    else if (m.kind == ModeKind::BoundedTime)
        eo.max_time = m.max_time;
    eo.high_penalty = m.high_penalty == HighPenalty::Forbid        ? HighPenaltyRule::Hard
                      : m.high_penalty == HighPenalty::MinimizeTop ? HighPenaltyRule::Soft
                                                                   : HighPenaltyRule::None;
    eo.high_penalty_threshold = m.threshold;
    fs::path dir(o.out_dir);
    fs::create_directories(dir);
    std::string name = o.problems.empty() ? fs::path(o.policy).stem().string() : fs::path(o.problems[0]).stem().string();
    write_file(dir / (name + ".policy.lp"), policy_lp);
    write_file(dir / (name + ".support.lp"), emit_support_rules(eo, lp.domain.get()));
    write_file(dir / (name + ".instance.lp"), emit_instance(*lp.domain, lp.problem));
    out << "wrote " << (dir / name).string() << ".{policy,support,instance}.lp\n";
    return 0;
}

std::vector<StateSample> states_for(const Options &o, const LoadedProblem &lp) {
    return sample_states(*lp.domain, lp.problem, o.samples, o.seed);
}

int cmd_check(const Options &o, std::ostream &out, std::ostream &err) {
    LoadedProblem lp = load_first_problem(o);
    Policy p = load_valid_policy(o, lp.domain->sig, err);
    GroundPolicy g = ground_policy(p, *lp.domain);
    auto states = states_for(o, lp);
    EvalOptions eo;
    eo.executability_filter = !o.no_filter;
    PolicyReport r = o.threads == 1 ? check_policy_serial(p, g, states, eo) : check_policy(p, g, states, eo, o.threads);
    r.coverage = std::to_string(states.size()) + " reachable states of " + lp.problem.name;
    if (json_out(o))
        out << report_json(r).dump(2) << "\n";
    else
        out << report_text(r);
    return 0;
}

int cmd_classify(const Options &o, std::ostream &out, std::ostream &err) {
    LoadedProblem lp = load_first_problem(o);
    const Domain &d = *lp.domain;
    Policy p = load_valid_policy(o, d.sig, err);
    GroundPolicy g = ground_policy(p, d);
    std::vector<CompoundAction> prefix;
    for (const std::string &s : split(o.after, ';'))
        prefix.push_back(parse_compound(d, s));
    Trajectory t = simulate(d, lp.problem.initial, prefix);
    const State &s = t.states.back();
    int step = static_cast<int>(prefix.size());
    CompoundAction ca = parse_compound(d, o.action);
    EvalOptions eo;
    eo.executability_filter = !o.no_filter;
    DerivedSet ds = applicable_rules(g, s, step, eo);
    ComplianceVerdict v = classify_event(g, ds, ca);
    if (json_out(o))
        out << verdict_json(g, ds, v).dump(2) << "\n";
    else
        out << "state: " << render_state(d, s) << "\n" << verdict_text(g, ds, v);
    return 0;
}

int cmd_plan(const Options &o, std::ostream &out, std::ostream &err) {
    LoadedProblem lp = load_first_problem(o);
    Policy p = load_valid_policy(o, lp.domain->sig, err);
    BehaviorMode m = make_mode(o, o.mode.empty() ? lp.problem.mode : o.mode);
    PlanResult r = plan(lp, p, m, plan_options(o));
    if (json_out(o))
        out << plan_json(r).dump(2) << "\n";
    else
        out << plan_text(r);
    return 0;
}

int cmd_compare(const Options &o, std::ostream &out, std::ostream &err) {
    LoadedProblem lp = load_first_problem(o);
    Policy p = load_valid_policy(o, lp.domain->sig, err);
    std::vector<BehaviorMode> modes;
    for (const std::string &s : split(o.modes, ','))
        modes.push_back(make_mode(o, s));
    auto rows = compare_modes(lp, p, modes, plan_options(o));
    if (json_out(o))
        out << compare_json(rows).dump(2) << "\n";
    else
        out << compare_text(rows);
    return 0;
}

int cmd_oracle(const Options &o, std::ostream &out, std::ostream &err) {
    LoadedProblem lp = load_first_problem(o);
    Policy p = load_valid_policy(o, lp.domain->sig, err);
    GroundPolicy g = ground_policy(p, *lp.domain);
    auto states = states_for(o, lp);
    OracleOptions oo;
    oo.executability_filter = !o.no_filter;
    OracleAgreement a = o.threads == 1 ? oracle_agreement_serial(g, states, oo) : oracle_agreement(g, states, oo, o.threads);
    if (json_out(o))
        out << agreement_json(a).dump(2) << "\n";
    else
        out << agreement_text(a);
    return a.ok() ? 0 : 2;
}

struct BenchItem {
    std::string problem;
    std::map<std::string, long long> expected;
};

int cmd_bench(const Options &o, std::ostream &out, std::ostream &err) {
    std::vector<BenchItem> items;
    std::string policy = o.policy;
    std::vector<std::string> modes = split(o.modes, ',');
    if (!o.manifest.empty()) {
        auto j = nlohmann::json::parse(read_file(o.manifest), nullptr, false);
        if (j.is_discarded() || !j.contains("scenarios"))
            throw ConfigError("manifest", o.manifest + " is not a bench manifest");
        fs::path root = fs::path(o.manifest).parent_path().parent_path();
        if (policy.empty() && j.contains("policy"))
            policy = (root / j["policy"].get<std::string>()).string();
        if (j.contains("modes") && o.modes == Options{}.modes)
            modes = j["modes"].get<std::vector<std::string>>();
        for (const auto &s : j["scenarios"]) {
            BenchItem it;
            it.problem = (root / s.at("problem").get<std::string>()).string();
            if (s.contains("expected"))
                for (auto &[k, v] : s["expected"].items())
                    it.expected[k] = v.get<long long>();
            items.push_back(std::move(it));
        }
    }
    for (const std::string &p : o.problems)
        items.push_back({p, {}});
    if (items.empty())
        throw UsageError("bench needs --manifest or --problem");
    if (o.runs < 1)
        throw UsageError("--runs must be positive");

    nlohmann::json rows = nlohmann::json::array();
    bool all_match = true;
    char line[256];
    if (!json_out(o)) {
        std::snprintf(line, sizeof line, "%-40s %-14s %6s %8s %10s %s\n", "scenario", "mode", "length", "expected",
                      "mean s", "deterministic");
        out << line;
    }
    for (const BenchItem &it : items) {
        LoadedProblem lp = load_problem_file(it.problem);
        Options po = o;
        po.policy = policy;
        Policy p = load_valid_policy(po, lp.domain->sig, err);
        GroundPolicy g = ground_policy(p, *lp.domain);
        for (const std::string &ms : modes) {
            BehaviorMode m = make_mode(o, ms);
            double total = 0;
            bool deterministic = true;
            std::optional<PlanResult> first;
            std::string error;
            for (int run = 0; run < o.runs; ++run) {
                try {
                    PlanResult r = plan(*lp.domain, lp.problem, p, g, m, plan_options(o));
                    total += r.wall_seconds;
                    if (!first)
                        first = std::move(r);
                    else if (r.actions != first->actions || r.objective != first->objective)
                        deterministic = false;
                } catch (const NoPlan &e) {
                    error = e.what();
                    break;
                }
            }
            long long length = first ? first->metrics.length : -1;
            auto exp = it.expected.find(ms);
            bool match = exp == it.expected.end() || exp->second == length;
            all_match = all_match && match && deterministic;
            double mean = first ? total / o.runs : 0;
            if (json_out(o)) {
                nlohmann::json row = {{"scenario", lp.problem.name}, {"mode", ms}, {"mean_seconds", mean},
                                      {"runs", o.runs}, {"deterministic", deterministic}};
                row["length"] = first ? nlohmann::json(length) : nlohmann::json(nullptr);
                if (exp != it.expected.end())
                    row["expected"] = exp->second;
                if (!error.empty())
                    row["error"] = error;
                rows.push_back(std::move(row));
            } else {
                std::string e = exp == it.expected.end() ? "-" : std::to_string(exp->second);
                std::string l = first ? std::to_string(length) : "none";
                std::snprintf(line, sizeof line, "%-40s %-14s %6s %8s %10.4f %s%s\n", lp.problem.name.c_str(),
                              ms.c_str(), l.c_str(), e.c_str(), mean, deterministic ? "yes" : "NO",
                              match ? "" : "  MISMATCH");
                out << line;
            }
        }
    }
    if (json_out(o))
        out << nlohmann::json{{"runs", o.runs}, {"rows", rows}, {"all_match", all_match}}.dump(2) << "\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    setup_logging();
    Options o;
    CLI::App app{"AOPL-P policy toolkit: translate, check, classify, plan"};
    app.require_subcommand(1);

    auto common = [&](CLI::App *c) {
        c->add_option("--policy", o.policy, "policy file (.aopl)");
        c->add_option("--problem", o.problems, "problem config (.json)");
        c->add_option("--domain", o.domain, "signature to use without --problem: traffic or rooms");
        c->add_flag("--no-executability-filter", o.no_filter, "evaluate rules whose action is not executable");
        c->add_option("--format", o.format, "human or json");
        c->add_option("--threads", o.threads, "worker threads (0 = all)");
    };
    auto mode_opts = [&](CLI::App *c) {
        c->add_option("--mode", o.mode, "emergency, non-emergency, bounded:<t>, risky or normal");
        c->add_option("--high-penalty", o.high_penalty, "forbid, minimize or off");
        c->add_option("--threshold", o.threshold, "points that count as a high penalty");
        c->add_option("--horizon", o.horizon, "override the problem horizon");
    };
    auto sampling = [&](CLI::App *c) {
        c->add_option("--seed", o.seed, "sampling seed");
        c->add_option("--samples", o.samples, "maximum number of states");
    };

    auto *translate = app.add_subcommand("translate", "emit the ASP encoding");
    common(translate);
    mode_opts(translate);
    translate->add_option("--out", o.out_dir, "directory for .policy.lp/.support.lp/.instance.lp");
    translate->add_option("--only", o.only, "emit only the block of this rule functor");

    auto *check = app.add_subcommand("check", "consistency and categoricity over reachable states");
    common(check);
    sampling(check);

    auto *classify = app.add_subcommand("classify", "compliance verdict for one event");
    common(classify);
    classify->add_option("--action", o.action, "compound action, elements joined by '+', or wait")->required();
    classify->add_option("--after", o.after, "actions executed first, separated by ';'");

    auto *plan_cmd = app.add_subcommand("plan", "optimal plan under a behavior mode");
    common(plan_cmd);
    mode_opts(plan_cmd);

    auto *compare = app.add_subcommand("compare", "one plan per mode");
    common(compare);
    mode_opts(compare);
    compare->add_option("--modes", o.modes, "comma separated modes");

    auto *oracle = app.add_subcommand("oracle", "evaluator against the stable-model oracle");
    common(oracle);
    sampling(oracle);

    auto *bench = app.add_subcommand("bench", "mean planning time over repeated runs");
    common(bench);
    mode_opts(bench);
    bench->add_option("--manifest", o.manifest, "bench manifest (.json)");
    bench->add_option("--modes", o.modes, "comma separated modes");
    bench->add_option("--runs", o.runs, "runs per scenario and mode");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 3;
    }

    try {
        if (*translate)
            return cmd_translate(o, out, err);
        if (*check)
            return cmd_check(o, out, err);
        if (*classify)
            return cmd_classify(o, out, err);
        if (*plan_cmd)
            return cmd_plan(o, out, err);
        if (*compare)
            return cmd_compare(o, out, err);
        if (*oracle)
            return cmd_oracle(o, out, err);
        if (*bench)
            return cmd_bench(o, out, err);
    } catch (const NoPlan &e) {
        err << "no plan (" << reason_name(e.reason) << "): " << e.what() << "\n";
        return 1;
    } catch (const ValidationFailed &) {
        return 2;
    } catch (const ParseError &e) {
        err << o.policy << ": " << e.what() << "\n";
        return 2;
    } catch (const AmbiguityError &e) {
        err << "ambiguous policy: " << e.what() << "\n";
        return 2;
    } catch (const AmbiguousPenalty &e) {
        err << "ambiguous penalty: " << e.what() << "\n";
        return 2;
    } catch (const EmitError &e) {
        err << "cannot translate: " << e.what() << "\n";
        return 2;
    } catch (const ExecError &e) {
        err << "not executable: " << e.what() << "\n";
        return 3;
    } catch (const Error &e) {
        err << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}

}  // namespace aoplkit
