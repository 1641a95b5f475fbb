#ifndef AOPLKIT_VALIDATE_H
#define AOPLKIT_VALIDATE_H

#include <string>
#include <vector>

#include "aoplkit/domain.h"
#include "aoplkit/policy.h"

namespace aoplkit {

struct ValidationIssue {
    // unsafe-variable, prefer-on-strict, prefer-same-label, penalty-on-permission,
    // unknown-atom, arity-mismatch, unknown-label, duplicate-label,
    // penalty-condition-fluent, head-not-action, non-positive-points, sort-mismatch
    std::string code;
    std::string message;
    SourcePos pos;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }
    bool has(const std::string &code) const;
    std::size_t count(const std::string &code) const;
    std::string str() const;
};

ValidationReport validate_policy(const Policy &p, const DomainSignature &sig);

// Positive static literals (indices into r.body) that bind the label
// variables not occurring in the head action: each one is picked when it
// mentions a variable that is still unbound. The emitter puts these into the
// safety body of rule/1 and the grounder joins on them.
std::vector<std::size_t> binding_literals(const PolicyRule &r, const DomainSignature &sig);

// Label variables that neither the head action nor a binding literal binds.
std::vector<std::string> unbound_label_variables(const PolicyRule &r, const DomainSignature &sig);

}  // namespace aoplkit

#endif
