#ifndef AOPLKIT_POLICY_H
#define AOPLKIT_POLICY_H

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aoplkit/term.h"

namespace aoplkit {

enum class Strictness { Strict, Defeasible };

enum class HeadKind { Permitted, NotPermitted, Obl, NotObl };

// The six reified head shapes: permitted(e), neg(permitted(e)), obl(e),
// obl(neg(e)), neg(obl(e)), neg(obl(neg(e))).
enum class HeadForm { Permitted, NegPermitted, Obl, OblNeg, NegObl, NegOblNeg };

struct Happening {
    Term action;
    bool negated = false;

    friend bool operator==(const Happening &, const Happening &) = default;
};

struct HeadLiteral {
    HeadKind kind = HeadKind::Permitted;
    Happening happening;

    HeadForm form() const;
    friend bool operator==(const HeadLiteral &, const HeadLiteral &) = default;
};

HeadForm complement(HeadForm f);
// Prohibitions and obligations are the only heads an action can violate.
bool is_violable(HeadForm f);
// Reified text, e.g. lp_head(NegPermitted, "drive(6,8,45)") ==
// "neg(permitted(drive(6,8,45)))".
std::string lp_head(HeadForm f, std::string_view action);
std::string_view head_form_name(HeadForm f);

enum class ArithOp { Plus, Minus };
enum class RelOp { Gt, Gte, Lt, Lte, Eq, Neq };

// operand [(+|-) operand], operands being integers or variables.
struct LinearExpr {
    Term first;
    std::optional<ArithOp> op;
    Term second;

    std::optional<long long> evaluate(const Binding &b) const;
    // "S1+5" when compact, "S1 + 5" otherwise.
    std::string str(bool compact) const;
    void collect_variables(std::vector<std::string> &out) const;

    friend bool operator==(const LinearExpr &, const LinearExpr &) = default;
};

struct ArithConstraint {
    LinearExpr lhs;
    RelOp op = RelOp::Eq;
    LinearExpr rhs;
    SourcePos pos;

    std::optional<bool> evaluate(const Binding &b) const;
    friend bool operator==(const ArithConstraint &a, const ArithConstraint &b) {
        return a.lhs == b.lhs && a.op == b.op && a.rhs == b.rhs;
    }
};

bool compare(long long lhs, RelOp op, long long rhs);
std::string_view relop_symbol(RelOp op);
// gt, gte, lt, lte, eq, neq
std::string_view relop_name(RelOp op);

struct DomainLiteral {
    Term atom;
    bool negated = false;

    friend bool operator==(const DomainLiteral &, const DomainLiteral &) = default;
};

using BodyLiteral = std::variant<DomainLiteral, ArithConstraint>;

struct PolicyRule {
    Term label;
    Strictness strictness = Strictness::Strict;
    HeadLiteral head;
    std::vector<BodyLiteral> body;
    SourcePos pos;

    friend bool operator==(const PolicyRule &a, const PolicyRule &b) {
        return a.label == b.label && a.strictness == b.strictness && a.head == b.head &&
               a.body == b.body;
    }
};

struct PreferStatement {
    Term preferred;
    Term overridden;
    SourcePos pos;

    friend bool operator==(const PreferStatement &a, const PreferStatement &b) {
        return a.preferred == b.preferred && a.overridden == b.overridden;
    }
};

struct PenaltyStatement {
    Term target;
    long long points = 0;
    std::vector<BodyLiteral> condition;
    SourcePos pos;

    friend bool operator==(const PenaltyStatement &a, const PenaltyStatement &b) {
        return a.target == b.target && a.points == b.points && a.condition == b.condition;
    }
};

struct Policy {
    std::vector<PolicyRule> rules;
    std::vector<PreferStatement> prefers;
    std::vector<PenaltyStatement> penalties;

    // Rule whose label has the same functor and arity as `label`.
    const PolicyRule *find_rule(const Term &label) const;

    friend bool operator==(const Policy &, const Policy &) = default;
};

Policy parse_policy(std::string_view text);
Policy load_policy_file(const std::string &path);

std::string pretty_print(const Policy &p);
std::string pretty_print(const PolicyRule &r);
std::string pretty_print(const BodyLiteral &l);
std::string pretty_print(const HeadLiteral &h);

}  // namespace aoplkit

#endif
