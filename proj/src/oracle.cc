#include "aoplkit/oracle.h"

#include <algorithm>
#include <functional>
#include <set>

#include "aoplkit/errors.h"

namespace aoplkit {

int NormalProgram::atom(const std::string &name) {
    auto [it, inserted] = index_.emplace(name, static_cast<int>(atoms.size()));
    if (inserted)
        atoms.push_back(name);
    return it->second;
}

namespace {

class Propagator {
public:
    explicit Propagator(const NormalProgram &p) : p_(p), occurs_(p.atom_count()) {
        for (std::size_t r = 0; r < p.rules.size(); ++r)
            for (int a : p.rules[r].pos)
                occurs_[a].push_back(static_cast<int>(r));
    }

    // Least model of the reduct w.r.t. `m`, with some atoms forced true and
    // the rules of some heads dropped.
    std::vector<char> gamma(const std::vector<char> &m, const std::vector<char> &forced,
                            const std::vector<char> &dropped) const {
        const std::size_t n = p_.atom_count();
        std::vector<char> out(n, 0);
        std::vector<int> count(p_.rules.size(), -1);
        std::vector<int> queue;
        for (std::size_t a = 0; a < n; ++a)
            if (forced[a]) {
                out[a] = 1;
                queue.push_back(static_cast<int>(a));
            }
        for (std::size_t r = 0; r < p_.rules.size(); ++r) {
            const auto &rule = p_.rules[r];
            if (dropped[rule.head])
                continue;
            if (std::any_of(rule.neg.begin(), rule.neg.end(), [&](int a) { return m[a] != 0; }))
                continue;
            count[r] = static_cast<int>(rule.pos.size());
            if (count[r] == 0 && !out[rule.head]) {
                out[rule.head] = 1;
                queue.push_back(rule.head);
            }
        }
        while (!queue.empty()) {
            int a = queue.back();
            queue.pop_back();
            for (int r : occurs_[a]) {
                if (count[r] <= 0)
                    continue;
                if (--count[r] == 0 && !out[p_.rules[r].head]) {
                    out[p_.rules[r].head] = 1;
                    queue.push_back(p_.rules[r].head);
                }
            }
        }
        return out;
    }

private:
    const NormalProgram &p_;
    std::vector<std::vector<int>> occurs_;
};

}  // namespace

std::vector<char> reduct_least_model(const NormalProgram &p, const std::vector<char> &m) {
    std::vector<char> none(p.atom_count(), 0);
    return Propagator(p).gamma(m, none, none);
}

std::vector<std::vector<char>> stable_models(const NormalProgram &p, std::size_t max_branches,
                                             const std::vector<int> &preferred) {
    Propagator prop(p);
    const std::size_t n = p.atom_count();
    std::vector<char> in_neg(n, 0);
    for (const auto &r : p.rules)
        for (int a : r.neg)
            in_neg[a] = 1;
    std::vector<char> none(n, 0);
    std::set<std::vector<char>> found;
    std::size_t leaves = 0;

    std::function<void(std::vector<char>, std::vector<char>)> solve = [&](std::vector<char> forced,
                                                                          std::vector<char> dropped) {
        // well-founded model by alternating fixpoint
        std::vector<char> t(n, 0), u;
        for (;;) {
            u = prop.gamma(t, forced, dropped);
            std::vector<char> t2 = prop.gamma(u, forced, dropped);
            if (t2 == t)
                break;
            t = std::move(t2);
        }
        int pick = -1;
        for (int a : preferred)
            if (u[a] && !t[a]) {
                pick = a;
                break;
            }
        for (std::size_t a = 0; pick < 0 && a < n; ++a)
            if (u[a] && !t[a] && in_neg[a])
                pick = static_cast<int>(a);
        for (std::size_t a = 0; pick < 0 && a < n; ++a)
            if (u[a] && !t[a])
                pick = static_cast<int>(a);
        if (pick < 0) {
            if (++leaves > max_branches)
                throw OracleBoundExceeded("oracle explored more than " + std::to_string(max_branches) +
                                          " candidate models");
            if (prop.gamma(t, none, none) == t)
                found.insert(t);
            return;
        }
        auto f2 = forced;
        f2[pick] = 1;
        solve(std::move(f2), dropped);
        auto d2 = dropped;
        d2[pick] = 1;
        solve(std::move(forced), std::move(d2));
    };
    solve(none, none);
    return {found.begin(), found.end()};
}

NormalProgram reified_program(const GroundPolicy &g, const State &s, int step, bool filter) {
    const Domain &d = *g.domain;
    NormalProgram p;
    const std::string I = std::to_string(step);
    auto fact = [&](int a) { p.rules.push_back({a, {}, {}}); };
    auto at = [&](const std::string &x) { return p.atom(x); };

    std::vector<int> hd_atom(g.rules.size());
    for (std::size_t i = 0; i < g.rules.size(); ++i)
        hd_atom[i] = at("holds(" + head_text(g, g.rules[i]) + "," + I + ")");

    std::set<int> fact_atoms;
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
        const GroundRule &r = g.rules[i];
        const std::string &k = r.key;
        int hb = at("holds(b(" + k + ")," + I + ")");
        int nb = at("-holds(b(" + k + ")," + I + ")");
        int hr = at("holds(" + k + "," + I + ")");

        for (const BodyLiteral &l : r.body) {
            if (auto dl = std::get_if<DomainLiteral>(&l)) {
                SymbolClass cls = d.sig.classify(dl->atom.name, dl->atom.arity());
                std::string a = dl->atom.str();
                if (cls == SymbolClass::Fluent) {
                    int id = d.fluent_id(dl->atom);
                    if (id < 0)
                        continue;  // fluent(F) is not a fact: never falsifies
                    bool v = s.fluents[id];
                    int pos = at("holds(" + a + "," + I + ")"), neg = at("-holds(" + a + "," + I + ")");
                    fact_atoms.insert(v ? pos : neg);
                    p.rules.push_back({nb, {dl->negated ? pos : neg}, {}});
                } else if (cls == SymbolClass::Static) {
                    bool v = d.statics->holds(dl->atom);
                    int pos = at("holds(" + a + ")"), neg = at("-holds(" + a + ")");
                    fact_atoms.insert(v ? pos : neg);
                    p.rules.push_back({nb, {dl->negated ? pos : neg}, {}});
                }
            } else {
                const auto &ac = std::get<ArithConstraint>(l);
                std::string name = std::string(relop_name(ac.op)) + "(" + ac.lhs.str(true) + "," + ac.rhs.str(true) + ")";
                int cmp = at(name);
                if (ac.evaluate({}).value_or(false))
                    fact_atoms.insert(cmp);
                p.rules.push_back({nb, {}, {cmp}});
            }
        }
        p.rules.push_back({hb, {}, {nb}});

        std::vector<int> pos{hb};
        if (filter) {
            const std::string &e = d.action(r.action).key;
            int ex = at("action_is_executable(" + k + "," + I + ")");
            int no = at("-occurs(" + e + "," + I + ")");
            if (!executable(d, s, r.action))
                fact_atoms.insert(no);
            p.rules.push_back({ex, {}, {no}});
            pos.push_back(ex);
        }
        if (r.strictness == Strictness::Strict) {
            p.rules.push_back({hr, pos, {}});
        } else {
            int opp = at("holds(" + lp_head(complement(r.form), d.action(r.action).key) + "," + I + ")");
            int ab = at("holds(ab(" + k + ")," + I + ")");
            p.rules.push_back({hr, pos, {opp, ab}});
        }
        p.rules.push_back({hd_atom[i], {hr}, {}});
    }
    for (std::size_t i = 0; i < g.rules.size(); ++i)
        for (int j : g.rules[i].preferred_over_me)
            p.rules.push_back({at("holds(ab(" + g.rules[i].key + ")," + I + ")"),
                               {at("holds(b(" + g.rules[j].key + ")," + I + ")")}, {}});
    for (int a : fact_atoms)
        fact(a);
    return p;
}

std::vector<std::vector<DerivedLiteral>> oracle_answer_sets(const GroundPolicy &g, const State &s, int step,
                                                            const OracleOptions &opts) {
    NormalProgram p = reified_program(g, s, step, opts.executability_filter);
    if (p.rules.size() > opts.max_ground_rules)
        throw OracleBoundExceeded("ground program has " + std::to_string(p.rules.size()) + " rules, bound is " +
                                  std::to_string(opts.max_ground_rules));
    const std::string I = std::to_string(step);
    std::vector<int> guesses;
    std::vector<std::pair<int, DerivedLiteral>> heads;
    for (const GroundRule &r : g.rules) {
        if (r.strictness == Strictness::Defeasible)
            guesses.push_back(p.atom("holds(" + r.key + "," + I + ")"));
        heads.push_back({p.atom("holds(" + head_text(g, r) + "," + I + ")"), DerivedLiteral{r.form, r.action}});
    }
    std::vector<std::vector<DerivedLiteral>> out;
    for (const auto &m : stable_models(p, opts.max_branches, guesses)) {
        std::vector<DerivedLiteral> lits;
        for (const auto &[atom, lit] : heads)
            if (m[atom])
                lits.push_back(lit);
        std::sort(lits.begin(), lits.end());
        lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
        out.push_back(std::move(lits));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace aoplkit
