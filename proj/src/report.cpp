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

#include "spreadhedge/report.hpp"

#include <cmath>
#include <cstdlib>
#include <optional>

#include <fmt/core.h>

#include "spreadhedge/errors.hpp"
#include "spreadhedge/json_io.hpp"

namespace spreadhedge {

using nlohmann::json;

namespace {

std::string ModeName(const AdmissibilityCap& cap) {
  return cap.kind == AdmissibilityKind::kNumeraireBased ? "nb" : "nf";
}

std::string CapName(const AdmissibilityCap& cap) {
  return cap.bound ? fmt::format("{}", *cap.bound) : "inf";
}

std::string ClaimKindName(LowerBoundKind kind) {
  return kind == LowerBoundKind::kConstant ? "constant" : "stock_bond";
}

std::string CertificateCell(const SuperHedgeReport& report, const std::string& name) {
  const auto it = report.certificates.find(name);
  if (it == report.certificates.end()) return "na";
  return it->second ? "true" : "false";
}

std::string StatusCell(const SuperHedgeReport& r) {
  const auto reason = report_reason(r);
  return reason ? *reason : "ok";
}

void RequireComplete(const SuperHedgeReport& report) {
  if (report.certificates.empty()) {
    throw Error(ErrorCode::kReportIncomplete, "report carries no certificates");
  }
}

std::string CsvHeader() {
  std::string out = "lambda,primal,dual,gap,mode,cap,status";
  for (const auto& name : CertificateColumns()) out += "," + name;
  return out + "\n";
}

std::string CsvRow(double lambda, const SuperHedgeReport& r) {
  std::string out = fmt::format("{},{},{},{},{},{},{}", lambda, r.primal_value, r.dual_value,
                                r.gap, ModeName(r.admissibility), CapName(r.admissibility),
                                StatusCell(r));
  for (const auto& name : CertificateColumns()) out += "," + CertificateCell(r, name);
  return out + "\n";
}

json CertificateJson(const lp::CertificateReport& c) {
  return json{{"ok", c.ok},
              {"primal_residual", c.primal_residual},
              {"dual_residual", c.dual_residual},
              {"complementarity_residual", c.complementarity_residual},
              {"duality_gap", c.duality_gap},
              {"failed", c.failed}};
}

}  // namespace

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "text") return ReportFormat::kText;
  throw Error(ErrorCode::kUsageError, fmt::format("unknown format '{}'", name));
}

const std::vector<std::string>& CertificateColumns() {
  static const std::vector<std::string> kColumns = {
      "self_financing", "terminal_dominates_claim", "admissibility", "cps",
      "supermartingale", "weak_duality", "complementary_slackness", "zero_gap"};
  return kColumns;
}

std::optional<std::string> report_reason(const SuperHedgeReport& report) {
  if (report.status != HedgeStatus::kOk) return std::string(HedgeStatusName(report.status));
  if (!report.all_certificates()) return std::string(ErrorCodeName(ErrorCode::kCertificateFailure));
  return std::nullopt;
}

std::string FormatGap(double gap) {
  if (gap == 0.0) return "0e0";
  const std::string s = fmt::format("{:.1e}", gap);
  const auto e = s.find('e');
  const std::string mantissa = s.substr(0, e);
  const int exponent = std::atoi(s.c_str() + e + 1);
  return fmt::format("{}e{}", mantissa, exponent);
}

json report_to_json(const ScenarioTree& tree, const SuperHedgeReport& r) {
  RequireComplete(r);
  json j;
  j["status"] = HedgeStatusName(r.status);
  const auto reason = report_reason(r);
  j["reason"] = reason ? json(*reason) : json(nullptr);
  j["lambda"] = r.lambda;
  j["claim_kind"] = ClaimKindName(r.claim_kind);
  j["mode"] = ModeName(r.admissibility);
  j["cap"] = r.admissibility.bound ? json(*r.admissibility.bound) : json("inf");
  j["certificates"] = r.certificates;
  if (r.status == HedgeStatus::kDualInfeasible) return j;
  j["dual_value"] = r.dual_value;
  j["cps"] = cps_to_json(r.cps);
  j["dual_optimizer_strict"] = r.dual_optimizer_strict;
  j["cps_strict"] = r.cps_strict ? cps_to_json(*r.cps_strict) : json(nullptr);
  j["dual_certificate"] = CertificateJson(r.dual_certificate);
  if (r.status == HedgeStatus::kPrimalInfeasible) return j;
  j["primal_value"] = r.primal_value;
  j["gap"] = r.gap;
  j["admissibility_bound_used"] = r.admissibility_bound_used;
  j["strategy"] = strategy_to_json(tree, r.strategy);
  j["primal_certificate"] = CertificateJson(r.primal_certificate);
  return j;
}

std::string emit_report(const ScenarioTree& tree, const SuperHedgeReport& r,
                        ReportFormat format) {
  RequireComplete(r);
  switch (format) {
    case ReportFormat::kJson:
      return report_to_json(tree, r).dump(2) + "\n";
    case ReportFormat::kCsv:
      return CsvHeader() + CsvRow(r.lambda, r);
    case ReportFormat::kText: {
      std::string out;
      out += fmt::format("status {}\n", HedgeStatusName(r.status));
      if (const auto reason = report_reason(r)) out += fmt::format("reason {}\n", *reason);
      out += fmt::format("lambda {:.4f}\n", r.lambda);
      out += fmt::format("claim {}\n", ClaimKindName(r.claim_kind));
      out += fmt::format("mode {}\ncap {}\n", ModeName(r.admissibility),
                         CapName(r.admissibility));
      if (r.status == HedgeStatus::kOk) {
        out += fmt::format("primal {:.4f}\n", r.primal_value);
        out += fmt::format("dual {:.4f}\n", r.dual_value);
        out += fmt::format("gap {}\n", FormatGap(r.gap));
        out += fmt::format("dual optimizer strict {}\n", r.dual_optimizer_strict);
      }
      out += "certificates\n";
      for (const auto& [name, ok] : r.certificates) out += fmt::format("  {} {}\n", name, ok);
      return out;
    }
  }
  return {};
}

std::string emit_curve(const ScenarioTree& tree,
                       const std::vector<std::pair<double, SuperHedgeReport>>& curve,
                       ReportFormat format) {
  for (const auto& [lambda, r] : curve) RequireComplete(r);
  switch (format) {
    case ReportFormat::kJson: {
      json rows = json::array();
      for (const auto& [lambda, r] : curve) rows.push_back(report_to_json(tree, r));
      return json{{"curve", rows}}.dump(2) + "\n";
    }
    case ReportFormat::kCsv: {
      std::string out = CsvHeader();
      for (const auto& [lambda, r] : curve) out += CsvRow(lambda, r);
      return out;
    }
    case ReportFormat::kText: {
      std::string out = fmt::format("{:>8} {:>12} {:>12} {:>8}\n", "lambda", "primal", "dual", "gap");
      for (const auto& [lambda, r] : curve) {
        out += fmt::format("{:>8.4f} {:>12.4f} {:>12.4f} {:>8}\n", lambda, r.primal_value,
                           r.dual_value, FormatGap(r.gap));
      }
      return out;
    }
  }
  return {};
}

}  // namespace spreadhedge
