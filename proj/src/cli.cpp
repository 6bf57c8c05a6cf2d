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

#include "spreadhedge/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "spreadhedge/cps.hpp"
#include "spreadhedge/errors.hpp"
#include "spreadhedge/json_io.hpp"
#include "spreadhedge/superhedge.hpp"

namespace spreadhedge::cli {

using nlohmann::json;

namespace {

struct Outcome {
  int exit_code = kExitOk;
  std::string body;
};

std::vector<double> ParseNumberList(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') {
      throw Error(ErrorCode::kUsageError, fmt::format("bad {} entry '{}'", what, item));
    }
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::kUsageError, fmt::format("empty {}", what));
  return out;
}

void CheckParameter(double value, const char* name) {
  if (!(value >= 0.0 && value < 1.0)) {
    throw Error(ErrorCode::kBadFriction, fmt::format("{} = {} is not in [0, 1)", name, value));
  }
}

void Require(const std::string& path, const char* flag) {
  if (path.empty()) throw Error(ErrorCode::kUsageError, fmt::format("{} is required", flag));
}

std::string VerificationText(const CpsVerification& v) {
  std::string out = fmt::format("valid {}\n", v.ok);
  out += fmt::format("{:<14} {:>12} {:>6}\n", "family", "residual", "node");
  const auto row = [&](const char* name, const CpsResidual& r) {
    out += fmt::format("{:<14} {:>12.3e} {:>6}\n", name, r.value,
                       r.node ? std::to_string(*r.node) : std::string("-"));
  };
  row("normalization", v.normalization);
  row("sign", v.sign);
  row("martingale", v.martingale);
  row("spread", v.spread);
  return out;
}

json ResidualJson(const CpsResidual& r) {
  return json{{"value", r.value}, {"node", r.node ? json(*r.node) : json(nullptr)}};
}

json VerificationJson(const CpsVerification& v) {
  return json{{"valid", v.ok},
              {"normalization", ResidualJson(v.normalization)},
              {"sign", ResidualJson(v.sign)},
              {"martingale", ResidualJson(v.martingale)},
              {"spread", ResidualJson(v.spread)}};
}

// Renders a flat key/value finding in the requested format.
std::string RenderFlat(const json& obj, ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson:
      return obj.dump(2) + "\n";
    case ReportFormat::kCsv: {
      std::string header, row;
      for (const auto& [key, value] : obj.items()) {
        if (value.is_structured()) continue;
        header += (header.empty() ? "" : ",") + key;
        row += (row.empty() ? "" : ",") + (value.is_string() ? value.get<std::string>() : value.dump());
      }
      return header + "\n" + row + "\n";
    }
    case ReportFormat::kText: {
      std::string out;
      for (const auto& [key, value] : obj.items()) {
        if (value.is_structured()) continue;
        out += fmt::format("{} {}\n", key, value.is_string() ? value.get<std::string>() : value.dump());
      }
      return out;
    }
  }
  return {};
}

Outcome Price(const RunConfig& c) {
  Require(c.tree_path, "--tree");
  Require(c.claim_path, "--claim");
  const ScenarioTree tree = load_tree(read_file(c.tree_path));
  const ClaimSpec claim = load_claim(read_file(c.claim_path), tree);
  const SuperHedgeReport report = superhedge_price(tree, c.lambda, claim, c.cap);
  return {report_reason(report) ? kExitDomain : kExitOk, emit_report(tree, report, c.format)};
}

Outcome Dual(const RunConfig& c) {
  Require(c.tree_path, "--tree");
  Require(c.claim_path, "--claim");
  const ScenarioTree tree = load_tree(read_file(c.tree_path));
  const ClaimSpec claim = load_claim(read_file(c.claim_path), tree);
  const SuperHedgeReport r = superhedge_price(tree, c.lambda, claim, AdmissibilityCap::Unbounded());
  json j;
  j["lambda"] = c.lambda;
  if (r.status == HedgeStatus::kDualInfeasible) {
    j["status"] = "error";
    j["reason"] = HedgeStatusName(r.status);
    return {kExitDomain, RenderFlat(j, c.format)};
  }
  j["status"] = "ok";
  j["dual_value"] = r.dual_value;
  j["dual_optimizer_strict"] = r.dual_optimizer_strict;
  j["cps_valid"] = r.certificates.at("cps");
  if (c.format == ReportFormat::kJson) {
    j["cps"] = cps_to_json(r.cps);
    j["cps_strict"] = r.cps_strict ? cps_to_json(*r.cps_strict) : json(nullptr);
  }
  if (!r.certificates.at("cps")) {
    j["status"] = "error";
    j["reason"] = ErrorCodeName(ErrorCode::kCertificateFailure);
    return {kExitDomain, RenderFlat(j, c.format)};
  }
  return {kExitOk, RenderFlat(j, c.format)};
}

Outcome VerifyCps(const RunConfig& c) {
  Require(c.tree_path, "--tree");
  Require(c.cps_path, "--cps");
  check_lambda(c.lambda);
  const ScenarioTree tree = load_tree(read_file(c.tree_path));
  const ConsistentPriceSystem cps = load_cps(read_file(c.cps_path), tree);
  const CpsVerification v = verify_cps(tree, c.lambda, cps);
  std::string body;
  if (c.format == ReportFormat::kJson) {
    json j = VerificationJson(v);
    if (!v.ok) j["reason"] = "InvalidCps";
    body = j.dump(2) + "\n";
  } else if (c.format == ReportFormat::kCsv) {
    body = "family,residual,node\n";
    for (const auto& [name, r] : {std::pair{"normalization", v.normalization},
                                  std::pair{"sign", v.sign},
                                  std::pair{"martingale", v.martingale},
                                  std::pair{"spread", v.spread}}) {
      body += fmt::format("{},{},{}\n", name, r.value, r.node ? std::to_string(*r.node) : "");
    }
    if (!v.ok) body += "reason,InvalidCps,\n";
  } else {
    body = VerificationText(v);
    if (!v.ok) body += "reason InvalidCps\n";
  }
  return {v.ok ? kExitOk : kExitDomain, body};
}

Outcome CheckStrategy(const RunConfig& c) {
  Require(c.tree_path, "--tree");
  Require(c.strategy_path, "--strategy");
  check_lambda(c.lambda);
  const ScenarioTree tree = load_tree(read_file(c.tree_path));
  const Strategy s = load_strategy(read_file(c.strategy_path), tree);
  check_shape(tree, s);
  json j;
  std::optional<std::string> reason;
  const SelfFinancingReport sf = is_self_financing(tree, c.lambda, s);
  j["self_financing"] = sf.ok;
  if (!sf.ok) {
    reason = "NotSelfFinancing";
    const auto& v = sf.violations.front();
    j["violation_node"] = v.node;
    j["violation_field"] = v.field;
    j["violation_residual"] = v.residual;
  }
  const AdmissibilityReport adm = check_admissibility(tree, c.lambda, s, c.cap);
  j["admissible"] = adm.ok;
  j["minimal_bound"] = minimal_admissibility_bound(tree, c.lambda, s, c.cap.kind);
  if (!adm.ok && !reason) {
    reason = "NotAdmissible";
    j["admissibility_witness"] = *adm.witness;
  }
  if (!c.claim_path.empty()) {
    const ClaimSpec claim = load_claim(read_file(c.claim_path), tree);
    const StrategyPath path = evaluate(tree, c.lambda, s);
    bool dominates = true;
    for (NodeId leaf : tree.leaves()) {
      const Holdings h = path.post_trade[leaf];
      dominates = dominates && std::abs(h.shares) <= kSelfFinancingTolerance &&
                  h.bonds >= claim.payoff[leaf] - kSelfFinancingTolerance;
    }
    j["terminal_dominates_claim"] = dominates;
    if (!dominates && !reason) reason = "DoesNotSuperReplicate";
  }
  if (!c.cps_path.empty()) {
    const ConsistentPriceSystem cps = load_cps(read_file(c.cps_path), tree);
    const SupermartingaleReport sm = supermartingale_check(tree, c.lambda, cps, s);
    j["supermartingale"] = sm.ok;
    j["polar_pairing"] = polar_pairing(tree, c.lambda, cps, s);
    if (!sm.ok && !reason) {
      reason = "NotSupermartingale";
      j["supermartingale_witness"] = *sm.witness;
    }
  }
  j["status"] = reason ? "error" : "ok";
  if (reason) j["reason"] = *reason;
  return {reason ? kExitDomain : kExitOk, RenderFlat(j, c.format)};
}

Outcome VariationBoundCmd(const RunConfig& c) {
  Require(c.tree_path, "--tree");
  Require(c.strategy_path, "--strategy");
  Require(c.cps_path, "--cps");
  if (!c.cap.bound) throw Error(ErrorCode::kUsageError, "--cap must be a finite bound M");
  const ScenarioTree tree = load_tree(read_file(c.tree_path));
  const Strategy s = load_strategy(read_file(c.strategy_path), tree);
  const ConsistentPriceSystem cps = load_cps(read_file(c.cps_path), tree);
  const VariationBound vb =
      variation_bound_check(tree, c.lambda, c.lambda_prime, s, cps, *c.cap.bound);
  json j{{"holds", vb.holds}, {"lhs", vb.lhs}, {"rhs", vb.rhs}};
  j["status"] = vb.holds ? "ok" : "error";
  if (!vb.holds) j["reason"] = "BoundViolated";
  return {vb.holds ? kExitOk : kExitDomain, RenderFlat(j, c.format)};
}

Outcome ConcatCps(const RunConfig& c) {
  Require(c.tree_path, "--tree");
  Require(c.cps_path, "--cps");
  Require(c.global_cps_path, "--global-cps");
  if (c.stop.empty()) throw Error(ErrorCode::kUsageError, "--stop is required");
  const ScenarioTree tree = load_tree(read_file(c.tree_path));
  const Antichain stop = make_antichain(tree, c.stop);
  const ConsistentPriceSystem local = load_cps(read_file(c.cps_path), tree);
  const ConsistentPriceSystem global = load_cps(read_file(c.global_cps_path), tree);
  const ConsistentPriceSystem out =
      concatenate_cps(tree, c.lambda, c.lambda_n, c.lambda_prime, stop, local, global);
  return {kExitOk, cps_to_json(out).dump(2) + "\n"};
}

Outcome GenTree(const RunConfig& c) {
  return {kExitOk, tree_to_json(generate_random_tree(c.seed, c.depth, c.branching)).dump(2) + "\n"};
}

Outcome Report(const RunConfig& c) {
  Require(c.tree_path, "--tree");
  Require(c.claim_path, "--claim");
  if (c.lambdas.empty()) throw Error(ErrorCode::kUsageError, "--lambdas is required");
  for (double l : c.lambdas) CheckParameter(l, "lambda");
  const ScenarioTree tree = load_tree(read_file(c.tree_path));
  const ClaimSpec claim = load_claim(read_file(c.claim_path), tree);
  const auto curve = price_curve(tree, claim, c.lambdas);
  bool ok = true;
  for (const auto& [lambda, r] : curve) ok = ok && !report_reason(r);
  return {ok ? kExitOk : kExitDomain, emit_curve(tree, curve, c.format)};
}

Outcome Dispatch(const RunConfig& c) {
  CheckParameter(c.lambda, "lambda");
  CheckParameter(c.lambda_prime, "lambda-prime");
  CheckParameter(c.lambda_n, "lambda-n");
  switch (c.command) {
    case Command::kPrice: return Price(c);
    case Command::kDual: return Dual(c);
    case Command::kVerifyCps: return VerifyCps(c);
    case Command::kCheckStrategy: return CheckStrategy(c);
    case Command::kVariationBound: return VariationBoundCmd(c);
    case Command::kConcatCps: return ConcatCps(c);
    case Command::kGenTree: return GenTree(c);
    case Command::kReport: return Report(c);
  }
  return {};
}

std::string DomainErrorBody(const Error& e, ReportFormat format) {
  const std::string reason(ErrorCodeName(e.code()));
  return RenderFlat(json{{"status", "error"}, {"reason", reason}, {"message", e.what()}}, format);
}

}  // namespace

RunConfig parse_args(int argc, const char* const* argv) {
  RunConfig c;
  CLI::App app{"Super-replication prices under proportional transaction costs"};
  app.require_subcommand(1);
  std::string format = "text";
  std::string mode = "nb";
  std::string cap = "inf";
  std::string stop;
  std::string lambdas;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--tree", c.tree_path, "Scenario tree JSON");
    sub->add_option("--claim", c.claim_path, "Claim JSON");
    sub->add_option("--strategy", c.strategy_path, "Strategy JSON");
    sub->add_option("--cps", c.cps_path, "Consistent price system JSON");
    sub->add_option("--lambda", c.lambda, "Transaction cost");
    sub->add_option("--lambda-prime", c.lambda_prime, "Lower transaction cost");
    sub->add_option("--lambda-n", c.lambda_n, "Local transaction cost");
    sub->add_option("--mode", mode, "Admissibility kind")->check(CLI::IsMember({"nb", "nf"}));
    sub->add_option("--cap", cap, "Admissibility bound M or inf");
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--output", c.output, "Output path (default stdout)");
  };
  const std::vector<std::pair<const char*, Command>> commands = {
      {"price", Command::kPrice},
      {"dual", Command::kDual},
      {"verify-cps", Command::kVerifyCps},
      {"check-strategy", Command::kCheckStrategy},
      {"variation-bound", Command::kVariationBound},
      {"concat-cps", Command::kConcatCps},
      {"gen-tree", Command::kGenTree},
      {"report", Command::kReport},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, cmd] : commands) {
    CLI::App* sub = app.add_subcommand(name);
    common(sub);
    subs.push_back(sub);
    if (cmd == Command::kConcatCps) {
      sub->add_option("--global-cps", c.global_cps_path, "Global price system JSON");
      sub->add_option("--stop", stop, "Comma-separated stopping nodes");
    }
    if (cmd == Command::kGenTree) {
      sub->add_option("--seed", c.seed, "Generator seed");
      sub->add_option("--depth", c.depth, "Tree depth");
      sub->add_option("--branching", c.branching, "Maximum branching");
    }
    if (cmd == Command::kReport) sub->add_option("--lambdas", lambdas, "Comma-separated lambdas");
  }
  app.parse(argc, argv);
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) c.command = commands[i].second;
  }

  c.format = ParseReportFormat(format);
  c.cap.kind = mode == "nb" ? AdmissibilityKind::kNumeraireBased
                            : AdmissibilityKind::kNumeraireFree;
  if (cap != "inf") {
    const auto values = ParseNumberList(cap, "--cap");
    if (values.size() != 1 || !(values[0] >= 0.0) || std::isinf(values[0])) {
      throw Error(ErrorCode::kUsageError, fmt::format("bad --cap '{}'", cap));
    }
    c.cap.bound = values[0];
  }
  if (!stop.empty()) {
    for (double v : ParseNumberList(stop, "--stop")) c.stop.push_back(static_cast<NodeId>(v));
  }
  if (!lambdas.empty()) c.lambdas = ParseNumberList(lambdas, "--lambdas");
  if (const char* env = std::getenv("SPREADHEDGE_SEED"); env && c.command == Command::kGenTree) {
    char* end = nullptr;
    const unsigned long long seed = std::strtoull(env, &end, 10);
    if (*env == '\0' || *end != '\0') {
      throw Error(ErrorCode::kUsageError, fmt::format("bad SPREADHEDGE_SEED '{}'", env));
    }
    c.seed = seed;
  }
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Outcome outcome;
  try {
    outcome = Dispatch(config);
  } catch (const Error& e) {
    if (!IsDomainError(e.code())) {
      err << "error: " << e.what() << "\n";
      return kExitInput;
    }
    outcome = {kExitDomain, DomainErrorBody(e, config.format)};
  }
  if (config.output.empty()) {
    out << outcome.body;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    file << outcome.body;
    if (!file) {
      err << "error: " << ErrorCodeName(ErrorCode::kIoError) << ": cannot write '"
          << config.output << "'\n";
      return kExitInput;
    }
  }
  return outcome.exit_code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << "usage: spreadhedge <price|dual|verify-cps|check-strategy|variation-bound|"
           "concat-cps|gen-tree|report> [options]\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << ErrorCodeName(ErrorCode::kUsageError) << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return run(config, out, err);
}

}  // namespace spreadhedge::cli
