#ifndef AOPLKIT_REPORT_H
#define AOPLKIT_REPORT_H

#include <string>
#include <vector>

#include "aoplkit/checker.h"
#include "aoplkit/planner.h"
#include "json.hpp"

namespace aoplkit {

// Structured (JSON) and human renderings used by the CLI. Key sets are
// fixed; the schema tests pin them.
nlohmann::json plan_json(const PlanResult &r);
std::string plan_text(const PlanResult &r);

nlohmann::json report_json(const PolicyReport &r);
std::string report_text(const PolicyReport &r);

nlohmann::json verdict_json(const GroundPolicy &g, const DerivedSet &derived, const ComplianceVerdict &v);
std::string verdict_text(const GroundPolicy &g, const DerivedSet &derived, const ComplianceVerdict &v);

nlohmann::json agreement_json(const OracleAgreement &a);
std::string agreement_text(const OracleAgreement &a);

nlohmann::json compare_json(const std::vector<ModeRow> &rows);
std::string compare_text(const std::vector<ModeRow> &rows);

}  // namespace aoplkit

#endif
