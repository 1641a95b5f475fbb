#include "aoplkit/emitter.h"

#include <algorithm>
#include <cctype>
#include <limits>

#include "aoplkit/errors.h"
#include "aoplkit/validate.h"

namespace aoplkit {

namespace {

constexpr std::size_t kWrap = 72;

std::string join(const std::vector<std::string> &v, const std::string &sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += sep;
        out += v[i];
    }
    return out;
}

std::string member_text(const BodyLiteral &l) {
    if (auto d = std::get_if<DomainLiteral>(&l))
        return d->negated ? "neg(" + d->atom.spaced() + ")" : d->atom.spaced();
    const auto &a = std::get<ArithConstraint>(l);
    return std::string(relop_name(a.op)) + "(" + a.lhs.str(true) + ", " + a.rhs.str(true) + ")";
}

// Condition literal of a penalty rule: statics through holds/1, arithmetic as is.
std::string condition_text(const BodyLiteral &l) {
    if (auto d = std::get_if<DomainLiteral>(&l))
        return (d->negated ? "-holds(" : "holds(") + d->atom.spaced() + ")";
    const auto &a = std::get<ArithConstraint>(l);
    return a.lhs.str(false) + " " + std::string(relop_symbol(a.op)) + " " + a.rhs.str(false);
}

std::string head_text(const HeadLiteral &h) {
    std::string act = h.happening.action.spaced();
    return lp_head(h.form(), act);
}

void emit(std::string &out, const std::string &head, const std::vector<std::string> &body) {
    out += AspRuleText{head, body, ""}.str();
    out += "\n";
}

}  // namespace

std::string AspRuleText::str() const {
    if (!weight.empty())
        return ":~ " + join(body, ", ") + ". [" + weight + "]";
    if (body.empty())
        return head + ".";
    std::string one = head + " :- " + join(body, ", ") + ".";
    if (one.size() <= kWrap)
        return one;
    // Continuation lines as in hand-written listings.
    std::string out = head + " :-\n    ";
    std::size_t col = 4;
    for (std::size_t i = 0; i < body.size(); ++i) {
        std::string piece = body[i] + (i + 1 == body.size() ? "." : ",");
        if (i && col + piece.size() + 1 > kWrap) {
            out += "\n    ";
            col = 4;
        } else if (i) {
            out += " ";
            ++col;
        }
        out += piece;
        col += piece.size();
    }
    return out;
}

std::string emit_policy_encoding(const Policy &p, const DomainSignature &sig, const std::string &only) {
    std::string out;
    for (const PolicyRule &r : p.rules) {
        if (!only.empty() && r.label.name != only)
            continue;
        auto unbound = unbound_label_variables(r, sig);
        if (!unbound.empty())
            throw EmitError("rule " + r.label.str() + ": label variable " + unbound.front() +
                            " is bound by no action or static, the emitted rule would be unsafe");
        std::string label = r.label.spaced();
        std::string guard = "rule(" + label + ")";
        bool ground = r.label.is_ground();
        std::vector<std::string> g = ground ? std::vector<std::string>{} : std::vector<std::string>{guard};

        if (ground) {
            emit(out, guard, {});
        } else {
            std::vector<std::string> safety{"action(" + r.head.happening.action.spaced() + ")"};
            for (std::size_t i : binding_literals(r, sig))
                safety.push_back("holds(" + std::get<DomainLiteral>(r.body[i]).atom.spaced() + ")");
            emit(out, guard, safety);
        }
        emit(out, "type(" + label + ", " + (r.strictness == Strictness::Strict ? "strict" : "defeasible") + ")", g);
        emit(out, "head(" + label + ", " + head_text(r.head) + ")", g);
        for (const BodyLiteral &l : r.body)
            emit(out, "mbr(b(" + label + "), " + member_text(l) + ")", g);

        for (const PreferStatement &pr : p.prefers) {
            if (pr.preferred.name != r.label.name || pr.preferred.arity() != r.label.arity())
                continue;
            std::string a = pr.preferred.spaced(), b = pr.overridden.spaced();
            std::vector<std::string> body;
            if (!pr.preferred.is_ground() || !pr.overridden.is_ground())
                body = {"rule(" + a + ")", "rule(" + b + ")"};
            emit(out, "prefer(" + a + ", " + b + ")", body);
        }
        for (const PenaltyStatement &pen : p.penalties) {
            if (pen.target.name != r.label.name || pen.target.arity() != r.label.arity())
                continue;
            std::vector<std::string> body;
            if (!pen.target.is_ground())
                body.push_back("rule(" + pen.target.spaced() + ")");
            for (const BodyLiteral &l : pen.condition)
                body.push_back(condition_text(l));
            emit(out, "penalty(" + pen.target.spaced() + "," + std::to_string(pen.points) + ")", body);
        }
    }
    return out;
}

std::string emit_support_rules(const EmitOptions &o, const Domain *d) {
    std::string s;
    const bool ref = o.include_executability_refinement;
    const std::string exec = ref ? ", action_is_executable(R, I)" : "";

    s += "% policy-independent rules\n";
    s += "body(R, b(R)) :- rule(R).\n";
    s += "holds(R, I) :- type(R, strict), holds(b(R), I)" + exec + ".\n";
    s += "holds(R, I) :- type(R, defeasible), holds(b(R), I), opp(R, O),\n"
         "    not holds(O, I), not holds(ab(R), I)" + exec + ".\n";
    s += "-holds(B, I) :- body(R, B), mbr(B, F), fluent(F), -holds(F, I).\n";
    s += "-holds(B, I) :- body(R, B), mbr(B, neg(F)), fluent(F), holds(F, I).\n";
    s += "-holds(B, I) :- body(R, B), mbr(B, S), static(S), -holds(S), step(I).\n";
    s += "-holds(B, I) :- body(R, B), mbr(B, neg(S)), static(S), holds(S), step(I).\n";
    s += "holds(B, I) :- body(R, B), not -holds(B, I), step(I).\n";
    s += "holds(ab(R2), I) :- prefer(R1, R2), holds(b(R1), I).\n";
    s += "holds(Hd, I) :- holds(R, I), head(R, Hd).\n";
    s += "opp(R, permitted(E)) :- head(R, neg(permitted(E))).\n";
    s += "opp(R, neg(permitted(E))) :- head(R, permitted(E)).\n";
    s += "opp(R, obl(H)) :- head(R, neg(obl(H))).\n";
    s += "opp(R, neg(obl(H))) :- head(R, obl(H)).\n";

    s += "\n% comparison members\n";
    for (RelOp op : {RelOp::Gt, RelOp::Gte, RelOp::Lt, RelOp::Lte, RelOp::Eq, RelOp::Neq}) {
        std::string n(relop_name(op)), sym(relop_symbol(op));
        s += n + "(X, Y) :- mbr(B, " + n + "(X, Y)), int_value(X), int_value(Y), X " + sym + " Y.\n";
    }
    for (RelOp op : {RelOp::Gt, RelOp::Gte, RelOp::Lt, RelOp::Lte, RelOp::Eq, RelOp::Neq}) {
        std::string n(relop_name(op));
        s += "-holds(B, I) :- body(R, B), mbr(B, " + n + "(X, Y)), not " + n + "(X, Y), step(I).\n";
    }

    if (ref) {
        s += "\n% executability refinement\n";
        s += "action_in_rule(R, E) :- head(R, permitted(E)).\n";
        s += "action_in_rule(R, E) :- head(R, neg(permitted(E))).\n";
        s += "action_in_rule(R, E) :- head(R, obl(E)), action(E).\n";
        s += "action_in_rule(R, E) :- head(R, obl(neg(E))), action(E).\n";
        s += "action_in_rule(R, E) :- head(R, neg(obl(E))), action(E).\n";
        s += "action_in_rule(R, E) :- head(R, neg(obl(neg(E)))), action(E).\n";
        s += "action_is_executable(R, I) :- action_in_rule(R, E), not -occurs(E, I), step(I).\n";
    }

    s += "\n% penalties\n";
    s += "add_penalty(R, P, I) :- rule(R), holds(R, I), head(R, neg(permitted(E))),\n"
         "    occurs(E, I), penalty(R, P).\n";
    s += "add_penalty(R, P, I) :- rule(R), holds(R, I), head(R, obl(E)), action(E),\n"
         "    not occurs(E, I), penalty(R, P).\n";
    s += "add_penalty(R, P, I) :- rule(R), holds(R, I), head(R, obl(neg(E))),\n"
         "    occurs(E, I), penalty(R, P).\n";
    if (o.aggregates)
        s += "cumulative_penalty(N) :- #sum{P, R, I: add_penalty(R, P, I)} = N.\n";

    if (d) {
        s += "\n% durations\n";
        constexpr long long big = std::numeric_limits<long long>::max() / 8;
        for (const DurationEntry &e : d->durations.entries) {
            const Schema *sc = nullptr;
            for (const Schema &a : d->sig.actions)
                if (a.name == e.functor)
                    sc = &a;
            std::size_t arity = sc ? sc->sorts.size() : 0;
            std::vector<std::string> vars;
            for (std::size_t i = 0; i < arity; ++i)
                vars.push_back("X" + std::to_string(i + 1));
            std::string act = e.functor + (arity ? "(" + join(vars, ", ") + ")" : "");
            std::vector<std::string> body{"occurs(" + act + ", I)"};
            if (e.guard_arg >= 0 && static_cast<std::size_t>(e.guard_arg) < arity) {
                const std::string &v = vars[e.guard_arg];
                if (e.lo > -big)
                    body.push_back(v + " >= " + std::to_string(e.lo));
                if (e.hi < big)
                    body.push_back(v + " <= " + std::to_string(e.hi));
            }
            emit(s, "add_time(" + std::to_string(e.units) + ", I)", body);
        }
        if (d->durations.wait && *d->durations.wait != 0) {
            s += "busy(I) :- occurs(E, I).\n";
            emit(s, "add_time(" + std::to_string(*d->durations.wait) + ", I)", {"step(I)", "not busy(I)"});
        }
    }
    if (o.aggregates)
        s += "cumulative_time(N) :- #sum{T, I: add_time(T, I)} = N.\n";

    if (o.mode != EmitMode::None) {
        s += "\n% behavior mode\n";
        s += "time_priority(2) :- emergency.\n";
        s += "penalty_priority(1) :- emergency.\n";
        s += "penalty_priority(2) :- non_emergency.\n";
        s += "time_priority(1) :- non_emergency.\n";
        s += o.mode == EmitMode::Emergency ? "emergency.\n" : "non_emergency.\n";
        if (o.max_time) {
            s += "max_time(" + std::to_string(*o.max_time) + ").\n";
            s += ":- cumulative_time(N), max_time(M), N > M.\n";
            s += ":~ add_penalty(R, P, I). [P@1, R, I]\n";
        } else {
            s += ":~ add_penalty(R, P, I), penalty_priority(Y). [P@Y, R, I]\n";
            s += ":~ add_time(T, I), time_priority(Y). [T@Y, I]\n";
        }
    }
    if (o.high_penalty != HighPenaltyRule::None) {
        s += "\n% high penalties\n";
        s += "high_penalty(" + std::to_string(o.high_penalty_threshold) + ").\n";
        if (o.high_penalty == HighPenaltyRule::Hard)
            s += ":- add_penalty(R, P, I), high_penalty(H), P >= H.\n";
        else
            s += ":~ add_penalty(R, P, I), high_penalty(H), P >= H. [P@3, R, I]\n";
    }
    return s;
}

std::string emit_instance(const Domain &d, const PlanningProblem &p) {
    std::string s;
    auto fact = [&](const std::string &t) { s += t + ".\n"; };

    s += "% signature\n";
    long long lo = 0, hi = 0;
    for (const auto &[name, consts] : d.sig.sorts)
        for (const Term &c : consts)
            if (c.is_integer()) {
                lo = std::min(lo, c.number);
                hi = std::max(hi, c.number);
            }
    long long k = std::max(-lo, hi);
    fact("int_value(" + std::to_string(lo - k) + ".." + std::to_string(hi + k) + ")");
    fact("step(0.." + std::to_string(p.horizon) + ")");
    for (const GroundAction &a : d.model.actions)
        fact("action(" + a.term.spaced() + ")");
    for (const Term &f : d.fluents)
        fact("fluent(" + f.spaced() + ")");
    std::vector<Term> all_statics;
    for (const Schema &sc : d.sig.statics)
        for (const Term &t : d.sig.instances(sc))
            all_statics.push_back(t);
    for (const Term &t : all_statics)
        fact("static(" + t.spaced() + ")");

    s += "\n% statics\n";
    for (const Term &t : all_statics)
        fact((d.statics->holds(t) ? "holds(" : "-holds(") + t.spaced() + ")");

    s += "\n% initial state\n";
    for (std::size_t i = 0; i < d.fluents.size(); ++i)
        fact((p.initial.fluents[i] ? "holds(" : "-holds(") + d.fluents[i].spaced() + ", 0)");

    s += "\n% exogenous timeline\n";
    for (const auto &[step, lits] : d.model.timeline) {
        if (step == 0 || step > p.horizon)
            continue;
        for (const FluentLiteral &l : lits)
            fact((l.value ? "holds(" : "-holds(") + d.fluents[l.fluent].spaced() + ", " + std::to_string(step) + ")");
    }

    s += "\n% executability\n";
    for (const GroundAction &a : d.model.actions) {
        if (!a.physically_possible)
            continue;
        std::string e = a.term.spaced();
        if (a.preconditions.empty())
            emit(s, "executable(" + e + ", I)", {"step(I)"});
        for (const auto &conj : a.preconditions) {
            std::vector<std::string> body;
            for (const FluentLiteral &l : conj)
                body.push_back((l.value ? "holds(" : "-holds(") + d.fluents[l.fluent].spaced() + ", I)");
            body.push_back("step(I)");
            emit(s, "executable(" + e + ", I)", body);
        }
    }
    s += "-occurs(E, I) :- action(E), step(I), not executable(E, I).\n";

    s += "\n% goal\n";
    std::vector<std::string> goal;
    for (const FluentLiteral &l : p.goal)
        goal.push_back((l.value ? "holds(" : "-holds(") + d.fluents[l.fluent].spaced() + ", I)");
    goal.push_back("step(I)");
    emit(s, "goal(I)", goal);
    return s;
}

std::string canonicalize(const std::string &text) {
    std::string out;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out += c;
    return out;
}

}  // namespace aoplkit
