#include "aoplkit/policy.h"

#include <algorithm>

namespace aoplkit {

HeadForm HeadLiteral::form() const {
    switch (kind) {
    case HeadKind::Permitted:
        return HeadForm::Permitted;
    case HeadKind::NotPermitted:
        return HeadForm::NegPermitted;
    case HeadKind::Obl:
        return happening.negated ? HeadForm::OblNeg : HeadForm::Obl;
    case HeadKind::NotObl:
        return happening.negated ? HeadForm::NegOblNeg : HeadForm::NegObl;
    }
    return HeadForm::Permitted;
}

HeadForm complement(HeadForm f) {
    switch (f) {
    case HeadForm::Permitted: return HeadForm::NegPermitted;
    case HeadForm::NegPermitted: return HeadForm::Permitted;
    case HeadForm::Obl: return HeadForm::NegObl;
    case HeadForm::NegObl: return HeadForm::Obl;
    case HeadForm::OblNeg: return HeadForm::NegOblNeg;
    case HeadForm::NegOblNeg: return HeadForm::OblNeg;
    }
    return f;
}

bool is_violable(HeadForm f) {
    return f == HeadForm::NegPermitted || f == HeadForm::Obl || f == HeadForm::OblNeg;
}

std::string lp_head(HeadForm f, std::string_view action) {
    std::string a(action);
    switch (f) {
    case HeadForm::Permitted: return "permitted(" + a + ")";
    case HeadForm::NegPermitted: return "neg(permitted(" + a + "))";
    case HeadForm::Obl: return "obl(" + a + ")";
    case HeadForm::OblNeg: return "obl(neg(" + a + "))";
    case HeadForm::NegObl: return "neg(obl(" + a + "))";
    case HeadForm::NegOblNeg: return "neg(obl(neg(" + a + ")))";
    }
    return a;
}

std::string_view head_form_name(HeadForm f) {
    switch (f) {
    case HeadForm::Permitted: return "permitted";
    case HeadForm::NegPermitted: return "-permitted";
    case HeadForm::Obl: return "obl";
    case HeadForm::OblNeg: return "obl-neg";
    case HeadForm::NegObl: return "-obl";
    case HeadForm::NegOblNeg: return "-obl-neg";
    }
    return "";
}

static std::optional<long long> operand_value(const Term &t, const Binding &b) {
    if (t.is_integer())
        return t.number;
    if (t.is_variable()) {
        auto it = b.find(t.name);
        if (it != b.end() && it->second.is_integer())
            return it->second.number;
    }
    return std::nullopt;
}

std::optional<long long> LinearExpr::evaluate(const Binding &b) const {
    auto x = operand_value(first, b);
    if (!x || !op)
        return x;
    auto y = operand_value(second, b);
    if (!y)
        return std::nullopt;
    return *op == ArithOp::Plus ? *x + *y : *x - *y;
}

std::string LinearExpr::str(bool compact) const {
    std::string s = first.str();
    if (op) {
        const char *sym = *op == ArithOp::Plus ? "+" : "-";
        s += compact ? std::string(sym) : " " + std::string(sym) + " ";
        s += second.str();
    }
    return s;
}

void LinearExpr::collect_variables(std::vector<std::string> &out) const {
    aoplkit::collect_variables(first, out);
    if (op)
        aoplkit::collect_variables(second, out);
}

bool compare(long long lhs, RelOp op, long long rhs) {
    switch (op) {
    case RelOp::Gt: return lhs > rhs;
    case RelOp::Gte: return lhs >= rhs;
    case RelOp::Lt: return lhs < rhs;
    case RelOp::Lte: return lhs <= rhs;
    case RelOp::Eq: return lhs == rhs;
    case RelOp::Neq: return lhs != rhs;
    }
    return false;
}

std::optional<bool> ArithConstraint::evaluate(const Binding &b) const {
    auto x = lhs.evaluate(b);
    auto y = rhs.evaluate(b);
    if (!x || !y)
        return std::nullopt;
    return compare(*x, op, *y);
}

std::string_view relop_symbol(RelOp op) {
    switch (op) {
    case RelOp::Gt: return ">";
    case RelOp::Gte: return ">=";
    case RelOp::Lt: return "<";
    case RelOp::Lte: return "<=";
    case RelOp::Eq: return "=";
    case RelOp::Neq: return "!=";
    }
    return "?";
}

std::string_view relop_name(RelOp op) {
    switch (op) {
    case RelOp::Gt: return "gt";
    case RelOp::Gte: return "gte";
    case RelOp::Lt: return "lt";
    case RelOp::Lte: return "lte";
    case RelOp::Eq: return "eq";
    case RelOp::Neq: return "neq";
    }
    return "?";
}

const PolicyRule *Policy::find_rule(const Term &label) const {
    auto it = std::find_if(rules.begin(), rules.end(), [&](const PolicyRule &r) {
        return r.label.name == label.name && r.label.arity() == label.arity();
    });
    return it == rules.end() ? nullptr : &*it;
}

// ---- printing

std::string pretty_print(const HeadLiteral &h) {
    std::string act = (h.happening.negated ? "-" : "") + h.happening.action.str();
    switch (h.kind) {
    case HeadKind::Permitted: return "permitted(" + act + ")";
    case HeadKind::NotPermitted: return "-permitted(" + act + ")";
    case HeadKind::Obl: return "obl(" + act + ")";
    case HeadKind::NotObl: return "-obl(" + act + ")";
    }
    return act;
}

std::string pretty_print(const BodyLiteral &l) {
    if (auto d = std::get_if<DomainLiteral>(&l))
        return (d->negated ? "-" : "") + d->atom.str();
    const auto &a = std::get<ArithConstraint>(l);
    return a.lhs.str(false) + " " + std::string(relop_symbol(a.op)) + " " + a.rhs.str(false);
}

static std::string print_body(const std::vector<BodyLiteral> &body) {
    std::string s;
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (i)
            s += ", ";
        s += pretty_print(body[i]);
    }
    return s;
}

std::string pretty_print(const PolicyRule &r) {
    std::string s = r.label.str() + ": ";
    if (r.strictness == Strictness::Defeasible)
        s += "normally ";
    s += pretty_print(r.head);
    if (!r.body.empty())
        s += " if " + print_body(r.body);
    return s + ".";
}

std::string pretty_print(const Policy &p) {
    std::string out;
    for (const auto &r : p.rules)
        out += pretty_print(r) + "\n";
    for (const auto &pr : p.prefers)
        out += "prefer(" + pr.preferred.str() + ", " + pr.overridden.str() + ").\n";
    for (const auto &pen : p.penalties) {
        out += "penalty(" + pen.target.str() + ", " + std::to_string(pen.points) + ")";
        if (!pen.condition.empty())
            out += " if " + print_body(pen.condition);
        out += ".\n";
    }
    return out;
}

}  // namespace aoplkit
