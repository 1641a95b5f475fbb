#include "aoplkit/validate.h"

#include <algorithm>
#include <set>

namespace aoplkit {

bool ValidationReport::has(const std::string &code) const { return count(code) > 0; }

std::size_t ValidationReport::count(const std::string &code) const {
    return std::count_if(issues.begin(), issues.end(),
                         [&](const ValidationIssue &i) { return i.code == code; });
}

std::string ValidationReport::str() const {
    std::string out;
    for (const auto &i : issues)
        out += std::to_string(i.pos.line) + ":" + std::to_string(i.pos.column) + ": " + i.code +
               ": " + i.message + "\n";
    return out;
}

static bool contains(const std::vector<std::string> &v, const std::string &s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

std::vector<std::size_t> binding_literals(const PolicyRule &r, const DomainSignature &sig) {
    std::vector<std::string> bound = variables_of(r.head.happening.action);
    std::vector<std::string> label_vars = variables_of(r.label);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < r.body.size(); ++i) {
        const auto *d = std::get_if<DomainLiteral>(&r.body[i]);
        if (!d || d->negated || sig.classify(d->atom.name, d->atom.arity()) != SymbolClass::Static)
            continue;
        bool useful = false;
        for (const auto &v : variables_of(d->atom))
            if (contains(label_vars, v) && !contains(bound, v))
                useful = true;
        if (!useful)
            continue;
        out.push_back(i);
        collect_variables(d->atom, bound);
    }
    return out;
}

std::vector<std::string> unbound_label_variables(const PolicyRule &r, const DomainSignature &sig) {
    std::vector<std::string> bound = variables_of(r.head.happening.action);
    for (std::size_t i : binding_literals(r, sig))
        collect_variables(std::get<DomainLiteral>(r.body[i]).atom, bound);
    std::vector<std::string> out;
    for (const auto &v : variables_of(r.label))
        if (!contains(bound, v))
            out.push_back(v);
    return out;
}

namespace {

class Validator {
public:
    Validator(const Policy &p, const DomainSignature &sig) : p_(p), sig_(sig) {}

    ValidationReport run() {
        std::set<std::pair<std::string, std::size_t>> labels;
        for (const auto &r : p_.rules) {
            if (!labels.insert({r.label.name, r.label.arity()}).second)
                add("duplicate-label", "label " + r.label.name + "/" + std::to_string(r.label.arity()) +
                                           " used by more than one rule", r.pos);
            rule(r);
        }
        for (const auto &pr : p_.prefers)
            prefer(pr);
        for (const auto &pen : p_.penalties)
            penalty(pen);
        return std::move(report_);
    }

private:
    void add(std::string code, std::string msg, SourcePos pos) {
        report_.issues.push_back({std::move(code), std::move(msg), pos});
    }

    // Checks an atom against the signature; returns its class or None.
    SymbolClass atom(const Term &t, const std::string &where) {
        SymbolClass cls = sig_.classify(t.name, t.arity());
        if (cls == SymbolClass::None) {
            SymbolClass other;
            if (const Schema *s = sig_.find_any(t.name, &other))
                add("arity-mismatch", where + ": " + t.name + " takes " + std::to_string(s->sorts.size()) +
                                          " arguments, got " + std::to_string(t.arity()), t.pos);
            else
                add("unknown-atom", where + ": " + t.name + " is not in the domain signature", t.pos);
            return cls;
        }
        // constants must belong to the argument's sort
        for (const auto *group : {&sig_.statics, &sig_.fluents, &sig_.actions})
            for (const Schema &sc : *group) {
                if (sc.name != t.name || sc.sorts.size() != t.arity())
                    continue;
                for (std::size_t i = 0; i < t.args.size(); ++i) {
                    const Term &a = t.args[i];
                    if (a.is_variable())
                        continue;
                    auto it = sig_.sorts.find(sc.sorts[i]);
                    if (it == sig_.sorts.end() ||
                        std::find(it->second.begin(), it->second.end(), a) == it->second.end())
                        add("sort-mismatch", where + ": " + a.str() + " is not a " + sc.sorts[i], a.pos);
                }
                return cls;
            }
        return cls;
    }

    void rule(const PolicyRule &r) {
        std::string where = "rule " + r.label.str();
        const Term &act = r.head.happening.action;
        SymbolClass hc = atom(act, where);
        if (hc != SymbolClass::None && hc != SymbolClass::Action)
            add("head-not-action", where + ": " + act.name + " is not an action", act.pos);

        std::vector<std::string> label_vars = variables_of(r.label);
        std::vector<std::string> domain_vars;
        for (const auto &l : r.body) {
            if (auto d = std::get_if<DomainLiteral>(&l)) {
                SymbolClass c = atom(d->atom, where);
                if (c == SymbolClass::Action)
                    add("unknown-atom", where + ": action " + d->atom.name + " used as a body literal",
                        d->atom.pos);
                collect_variables(d->atom, domain_vars);
            }
        }
        auto check_declared = [&](const std::string &v, SourcePos pos) {
            if (!contains(label_vars, v))
                add("unsafe-variable", where + ": variable " + v + " does not occur in the label", pos);
        };
        for (const auto &v : variables_of(act))
            check_declared(v, act.pos);
        for (const auto &l : r.body) {
            if (auto d = std::get_if<DomainLiteral>(&l)) {
                for (const auto &v : variables_of(d->atom))
                    check_declared(v, d->atom.pos);
            } else {
                const auto &a = std::get<ArithConstraint>(l);
                std::vector<std::string> vs;
                a.lhs.collect_variables(vs);
                a.rhs.collect_variables(vs);
                for (const auto &v : vs)
                    if (!contains(label_vars, v) && !contains(domain_vars, v))
                        add("unsafe-variable",
                            where + ": variable " + v + " of a comparison is never bound", a.pos);
            }
        }
        for (const auto &v : unbound_label_variables(r, sig_))
            add("unsafe-variable",
                where + ": label variable " + v +
                    " is bound neither by the head action nor by a positive static literal",
                r.label.pos);
    }

    const PolicyRule *resolve(const Term &label, SourcePos pos, const std::string &where) {
        const PolicyRule *r = p_.find_rule(label);
        if (!r)
            add("unknown-label", where + ": no rule labelled " + label.name + "/" +
                                     std::to_string(label.arity()), pos);
        return r;
    }

    void prefer(const PreferStatement &s) {
        std::string where = "prefer(" + s.preferred.str() + ", " + s.overridden.str() + ")";
        const PolicyRule *a = resolve(s.preferred, s.pos, where);
        const PolicyRule *b = resolve(s.overridden, s.pos, where);
        if (s.preferred.name == s.overridden.name && s.preferred.arity() == s.overridden.arity())
            add("prefer-same-label", where + ": a rule cannot be preferred over itself", s.pos);
        for (const PolicyRule *r : {a, b})
            if (r && r->strictness == Strictness::Strict)
                add("prefer-on-strict", where + ": " + r->label.str() + " is strict", s.pos);
    }

    void penalty(const PenaltyStatement &s) {
        std::string where = "penalty(" + s.target.str() + ", " + std::to_string(s.points) + ")";
        if (s.points < 1)
            add("non-positive-points", where + ": points must be at least 1", s.pos);
        const PolicyRule *r = resolve(s.target, s.pos, where);
        if (r && !is_violable(r->head.form()))
            add("penalty-on-permission",
                where + ": " + r->label.str() + " has head " + pretty_print(r->head) +
                    ", which cannot be violated",
                s.pos);
        std::vector<std::string> target_vars = variables_of(s.target);
        for (const auto &l : s.condition) {
            if (auto d = std::get_if<DomainLiteral>(&l)) {
                SymbolClass c = atom(d->atom, where);
                if (c == SymbolClass::Fluent || c == SymbolClass::Action)
                    add("penalty-condition-fluent",
                        where + ": condition literal " + d->atom.str() + " is not a static", d->atom.pos);
                for (const auto &v : variables_of(d->atom))
                    if (!contains(target_vars, v))
                        add("unsafe-variable", where + ": variable " + v + " does not occur in the target",
                            d->atom.pos);
            } else {
                const auto &a = std::get<ArithConstraint>(l);
                std::vector<std::string> vs;
                a.lhs.collect_variables(vs);
                a.rhs.collect_variables(vs);
                for (const auto &v : vs)
                    if (!contains(target_vars, v))
                        add("unsafe-variable", where + ": variable " + v + " does not occur in the target",
                            a.pos);
            }
        }
    }

    const Policy &p_;
    const DomainSignature &sig_;
    ValidationReport report_;
};

}  // namespace

ValidationReport validate_policy(const Policy &p, const DomainSignature &sig) {
    return Validator(p, sig).run();
}

}  // namespace aoplkit
