#ifndef AOPLKIT_EVALUATOR_H
#define AOPLKIT_EVALUATOR_H

#include <string>
#include <vector>

#include "aoplkit/ground.h"

namespace aoplkit {

enum class ActivationStatus {
    Applicable,
    DefeatedByStrict,
    DefeatedByPrefer,
    BodyUnsatisfied,
    NotExecutable
};

std::string_view status_name(ActivationStatus s);

struct RuleActivation {
    int rule = -1;
    ActivationStatus status = ActivationStatus::BodyUnsatisfied;
    int by = -1;  // defeating ground rule, for DefeatedBy*
};

struct DerivedLiteral {
    HeadForm form;
    int action;

    friend auto operator<=>(const DerivedLiteral &, const DerivedLiteral &) = default;
};

struct Diagnostic {
    std::string kind;  // ambiguity, modality-conflict, strict-conflict
    std::string detail;
    int first = -1;  // ground rule ids involved, when any
    int second = -1;
};

struct DerivedSet {
    int step = 0;
    std::vector<RuleActivation> activations;  // one per ground rule, same order
    std::vector<DerivedLiteral> literals;     // sorted, unique
    std::vector<Diagnostic> diagnostics;
    bool ambiguous = false;

    bool contains(HeadForm f, int action) const;
    std::size_t applicable_count() const;
};

struct EvalOptions {
    bool executability_filter = true;
    // Planning contexts throw AmbiguityError; checking contexts record a
    // diagnostic and keep every surviving rule applicable.
    bool throw_on_ambiguity = true;
};

DerivedSet applicable_rules(const GroundPolicy &g, const State &s, int step, const EvalOptions &opts = {});

std::string render_literal(const GroundPolicy &g, const DerivedLiteral &l);

enum class Authorization { StronglyCompliant, Underspecified, NonCompliant, Mixed };
enum class ViolationKind { ProhibitedAction, UnfulfilledObl, ForbiddenByObl };

std::string_view authorization_name(Authorization a);
std::string_view violation_name(ViolationKind k);

struct Violation {
    int rule = -1;
    ViolationKind kind = ViolationKind::ProhibitedAction;
    int action = -1;
};

struct ComplianceVerdict {
    Authorization authorization = Authorization::Underspecified;
    bool obligation_compliant = true;
    bool strongly_compliant = false;
    std::vector<Authorization> per_element;
    std::vector<Violation> violations;
};

ComplianceVerdict classify_event(const GroundPolicy &g, const DerivedSet &derived, const CompoundAction &ca);
ComplianceVerdict classify_event(const GroundPolicy &g, const State &s, const CompoundAction &ca, int step,
                                 const EvalOptions &opts = {});

}  // namespace aoplkit

#endif
