// Copyright 2026 The Spreadhedge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPREADHEDGE_REPORT_HPP_
#define SPREADHEDGE_REPORT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spreadhedge/scenario_tree.hpp"
#include "spreadhedge/superhedge.hpp"

namespace spreadhedge {

enum class ReportFormat { kJson, kCsv, kText };

// Throws Error(kUsageError) for anything but json, csv or text.
ReportFormat ParseReportFormat(std::string_view name);

// Certificate columns in CSV order; absent entries render as "na".
const std::vector<std::string>& CertificateColumns();

// The single reason code of a report that is not a clean success:
// DualInfeasible, PrimalInfeasible or CertificateFailure.
std::optional<std::string> report_reason(const SuperHedgeReport& report);

// "0e0" for zero, otherwise one decimal of mantissa, e.g. "3.2e-12".
std::string FormatGap(double gap);

nlohmann::json report_to_json(const ScenarioTree& tree, const SuperHedgeReport& report);

// Throws Error(kReportIncomplete) when the certificate map is empty.
std::string emit_report(const ScenarioTree& tree, const SuperHedgeReport& report,
                        ReportFormat format);

// One row per lambda.
std::string emit_curve(const ScenarioTree& tree,
                       const std::vector<std::pair<double, SuperHedgeReport>>& curve,
                       ReportFormat format);

}  // namespace spreadhedge

#endif  // SPREADHEDGE_REPORT_HPP_
