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

#include "spreadhedge/superhedge.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

#include "spreadhedge/errors.hpp"

namespace spreadhedge {
namespace {

constexpr double kClampTolerance = 1e-9;

// Clamps round-off below zero; returns nullopt for genuinely negative values.
std::optional<double> NonNegative(double v, double scale) {
  if (v >= 0.0) return v;
  if (v >= -kClampTolerance * std::max(1.0, scale)) return 0.0;
  return std::nullopt;
}

}  // namespace

std::string_view HedgeStatusName(HedgeStatus status) {
  switch (status) {
    case HedgeStatus::kOk: return "ok";
    case HedgeStatus::kDualInfeasible: return "DualInfeasible";
    case HedgeStatus::kPrimalInfeasible: return "PrimalInfeasible";
  }
  return "unknown";
}

bool SuperHedgeReport::all_certificates() const {
  return !certificates.empty() &&
         std::all_of(certificates.begin(), certificates.end(),
                     [](const auto& kv) { return kv.second; });
}

PrimalModel build_primal(const ScenarioTree& tree, double lambda, const ClaimSpec& claim,
                         const AdmissibilityCap& cap) {
  check_lambda(lambda);
  check_claim(tree, claim);
  if (cap.bound && !(*cap.bound >= 0.0)) {
    throw Error(ErrorCode::kPreconditionViolated, "admissibility bound must be >= 0");
  }
  const int n = static_cast<int>(tree.node_count());
  const bool capped = cap.bound.has_value();
  const int num_vars = 1 + 3 * n + (capped ? 2 * n : 0);

  PrimalModel model;
  auto& lp = model.lp;
  auto& layout = model.layout;
  lp = lp::LinearProgram::WithVariables(num_vars, lp::Sense::kMinimize);
  layout.initial_capital = 0;
  lp.lower(0) = -lp::kInf;
  lp.c(0) = 1.0;
  lp.names[0] = "X0";
  layout.buy.resize(n);
  layout.sell.resize(n);
  layout.consume.resize(n);
  for (int id = 0; id < n; ++id) {
    layout.buy[id] = 1 + 3 * id;
    layout.sell[id] = 2 + 3 * id;
    layout.consume[id] = 3 + 3 * id;
    lp.names[layout.buy[id]] = fmt::format("buy[{}]", id);
    lp.names[layout.sell[id]] = fmt::format("sell[{}]", id);
    lp.names[layout.consume[id]] = fmt::format("consume[{}]", id);
  }
  if (capped) {
    layout.long_part.resize(n);
    layout.short_part.resize(n);
    for (int id = 0; id < n; ++id) {
      layout.long_part[id] = 1 + 3 * n + 2 * id;
      layout.short_part[id] = 2 + 3 * n + 2 * id;
      lp.names[layout.long_part[id]] = fmt::format("long[{}]", id);
      lp.names[layout.short_part[id]] = fmt::format("short[{}]", id);
    }
  }

  // Coefficients of shares(node) and of -bonds(node) + X0 in the trade
  // variables along the path.
  auto shares_row = [&](NodeId node) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(num_vars);
    for (NodeId m : tree.path_to(node)) {
      row(layout.buy[m]) = 1.0;
      row(layout.sell[m]) = -1.0;
    }
    return row;
  };
  auto spent_row = [&](NodeId node) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(num_vars);
    row(0) = -1.0;
    for (NodeId m : tree.path_to(node)) {
      const double s = tree.price(m);
      row(layout.buy[m]) = s;
      row(layout.sell[m]) = -(1.0 - lambda) * s;
      row(layout.consume[m]) = 1.0;
    }
    return row;  // = -bonds(node)
  };

  for (NodeId leaf : tree.leaves()) {
    layout.leaf_shares_row.push_back(lp.add_eq_row(shares_row(leaf), 0.0));
  }
  for (NodeId leaf : tree.leaves()) {
    layout.leaf_bonds_row.push_back(lp.add_ub_row(spent_row(leaf), -claim.payoff[leaf]));
  }
  if (capped) {
    for (NodeId id : tree.topological_order()) {
      Eigen::VectorXd split = -shares_row(id);
      split(layout.long_part[id]) = 1.0;
      split(layout.short_part[id]) = -1.0;
      lp.add_eq_row(split, 0.0);
      const double s = tree.price(id);
      Eigen::VectorXd value = spent_row(id);
      value(layout.long_part[id]) = -(1.0 - lambda) * s;
      value(layout.short_part[id]) = s;
      lp.add_ub_row(value, -cap.floor_at(s));
    }
  }
  return model;
}

DualModel build_dual(const ScenarioTree& tree, double lambda, const ClaimSpec& claim) {
  check_lambda(lambda);
  check_claim(tree, claim);
  const int n = static_cast<int>(tree.node_count());
  const int internal = n - static_cast<int>(tree.leaves().size());
  DualModel model;
  auto& lp = model.lp;
  auto& layout = model.layout;
  lp = lp::LinearProgram::WithVariables(2 * n, lp::Sense::kMaximize);
  layout.z0.resize(n);
  layout.spread.resize(n);
  layout.lambda = lambda;
  for (int id = 0; id < n; ++id) {
    layout.z0[id] = id;
    layout.spread[id] = n + id;
    lp.names[id] = fmt::format("Z0[{}]", id);
    lp.names[n + id] = fmt::format("U[{}]", id);
  }
  lp.lower(layout.z0[tree.root()]) = 1.0;
  lp.upper(layout.z0[tree.root()]) = 1.0;
  for (NodeId leaf : tree.leaves()) {
    lp.c(layout.z0[leaf]) = tree.path_probability(leaf) * claim.payoff[leaf];
  }

  lp.a_eq = Eigen::MatrixXd::Zero(2 * internal, 2 * n);
  lp.b_eq = Eigen::VectorXd::Zero(2 * internal);
  lp.a_ub = Eigen::MatrixXd::Zero(n, 2 * n);
  lp.b_ub = Eigen::VectorXd::Zero(n);
  int row = 0;
  for (NodeId id : tree.topological_order()) {
    if (tree.is_leaf(id)) continue;
    lp.a_eq(row, layout.z0[id]) = 1.0;
    lp.a_eq(row + 1, layout.z0[id]) = (1.0 - lambda) * tree.price(id);
    lp.a_eq(row + 1, layout.spread[id]) = 1.0;
    for (NodeId c : tree.children(id)) {
      const double p = tree.node(c).cond_prob;
      lp.a_eq(row, layout.z0[c]) = -p;
      lp.a_eq(row + 1, layout.z0[c]) = -p * (1.0 - lambda) * tree.price(c);
      lp.a_eq(row + 1, layout.spread[c]) = -p;
    }
    row += 2;
  }
  for (NodeId id = 0; id < n; ++id) {
    lp.a_ub(id, layout.spread[id]) = 1.0;
    lp.a_ub(id, layout.z0[id]) = -lambda * tree.price(id);
  }
  return model;
}

Strategy extract_strategy(const lp::LpSolution& sol, const PrimalLayout& layout,
                          const ScenarioTree& tree) {
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kCertificateFailure, "primal problem not solved to optimality");
  }
  Strategy s = Strategy::DoNothing(tree, {sol.x(layout.initial_capital), 0.0});
  for (NodeId id : tree.topological_order()) {
    const double scale = tree.price(id);
    const auto buy = NonNegative(sol.x(layout.buy[id]), scale);
    const auto sell = NonNegative(sol.x(layout.sell[id]), scale);
    const auto consume = NonNegative(sol.x(layout.consume[id]), scale);
    if (!buy || !sell || !consume) {
      throw Error(ErrorCode::kCertificateFailure,
                  fmt::format("negative trade read back at node {}", id));
    }
    s.trades[id] = {*buy, *sell, *consume};
  }
  return s;
}

ConsistentPriceSystem extract_cps(const lp::LpSolution& sol, const DualLayout& layout,
                                  const ScenarioTree& tree, double lambda) {
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kCertificateFailure, "dual problem not solved to optimality");
  }
  const auto n = tree.node_count();
  ConsistentPriceSystem cps{std::vector<double>(n), std::vector<double>(n)};
  for (NodeId id : tree.topological_order()) {
    const auto z0 = NonNegative(sol.x(layout.z0[id]), 1.0);
    const auto u = NonNegative(sol.x(layout.spread[id]), tree.price(id));
    const auto z1 = z0 && u ? std::optional<double>((1.0 - layout.lambda) * tree.price(id) * *z0 + *u)
                            : std::nullopt;
    if (!z0 || !z1) {
      throw Error(ErrorCode::kCertificateFailure,
                  fmt::format("negative density read back at node {}", id));
    }
    cps.z0[id] = *z0;
    cps.z1[id] = *z1;
  }
  const auto check = verify_cps(tree, lambda, cps);
  if (!check.ok) {
    throw Error(ErrorCode::kCertificateFailure,
                fmt::format("extracted price system fails verification (martingale {}, "
                            "spread {})",
                            check.martingale.value, check.spread.value));
  }
  return cps;
}

std::optional<ConsistentPriceSystem> find_strict_cps(const ScenarioTree& tree,
                                                     double lambda) {
  ClaimSpec zero{std::vector<double>(tree.node_count(), 0.0)};
  DualModel model = build_dual(tree, lambda, zero);
  auto& lp = model.lp;
  const int t = lp.num_vars();
  const auto leaves = tree.leaves();
  const int m_ub = static_cast<int>(lp.b_ub.size());
  lp.c = Eigen::VectorXd::Zero(t + 1);
  lp.c(t) = 1.0;
  lp.a_eq.conservativeResize(Eigen::NoChange, t + 1);
  lp.a_eq.col(t).setZero();
  lp.a_ub.conservativeResize(m_ub + static_cast<int>(leaves.size()), t + 1);
  lp.a_ub.col(t).setZero();
  lp.a_ub.bottomRows(leaves.size()).setZero();
  lp.b_ub.conservativeResize(m_ub + static_cast<int>(leaves.size()));
  lp.lower.conservativeResize(t + 1);
  lp.upper.conservativeResize(t + 1);
  lp.lower(t) = 0.0;
  lp.upper(t) = 1.0;
  lp.names.push_back("min_density");
  // Internal densities are averages of their children, so bounding the
  // leaves bounds every node.
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    const int row = m_ub + static_cast<int>(k);
    lp.a_ub(row, t) = 1.0;
    lp.a_ub(row, model.layout.z0[leaves[k]]) = -1.0;
    lp.b_ub(row) = 0.0;
  }
  const auto sol = lp::solve(lp);
  if (sol.status != lp::Status::kOptimal || !(sol.x(t) > 1e-12)) return std::nullopt;
  auto cps = extract_cps(sol, model.layout, tree, lambda);
  if (!cps.strict()) return std::nullopt;
  return cps;
}

ConsistentPriceSystem cps_from_primal_duals(const lp::LpSolution& sol,
                                            const PrimalLayout& layout,
                                            const ScenarioTree& tree) {
  if (!layout.long_part.empty()) {
    throw Error(ErrorCode::kPreconditionViolated,
                "primal multipliers map to price systems only without a cap");
  }
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kCertificateFailure, "primal problem not solved to optimality");
  }
  const auto n = tree.node_count();
  std::vector<double> w(n, 0.0), v(n, 0.0);
  const auto leaves = tree.leaves();
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    w[leaves[k]] = -sol.y_ub(layout.leaf_bonds_row[k]);
    v[leaves[k]] = sol.y_eq(layout.leaf_shares_row[k]);
  }
  const auto order = tree.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (const auto& p = tree.node(*it).parent) {
      w[*p] += w[*it];
      v[*p] += v[*it];
    }
  }
  ConsistentPriceSystem cps{std::vector<double>(n), std::vector<double>(n)};
  for (NodeId id : order) {
    const double p = tree.path_probability(id);
    cps.z0[id] = w[id] / p;
    cps.z1[id] = v[id] / p;
  }
  return cps;
}

SuperHedgeReport superhedge_price(const ScenarioTree& tree, double lambda,
                                  const ClaimSpec& claim, const AdmissibilityCap& cap) {
  SuperHedgeReport report;
  report.lambda = lambda;
  report.claim_kind = claim.lower_bound_kind;
  report.admissibility = cap;
  report.strategy = Strategy::DoNothing(tree);

  const DualModel dual = build_dual(tree, lambda, claim);
  const lp::LpSolution dsol = lp::solve(dual.lp);
  if (dsol.status == lp::Status::kInfeasible) {
    report.status = HedgeStatus::kDualInfeasible;
    report.certificates["cps_exists"] = false;
    return report;
  }
  if (dsol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kCertificateFailure, "price-system problem reported unbounded");
  }
  report.dual_value = dsol.objective;
  report.dual_certificate = lp::verify_certificate(dual.lp, dsol);
  report.cps = extract_cps(dsol, dual.layout, tree, lambda);
  report.dual_optimizer_strict = report.cps.strict();
  if (report.dual_optimizer_strict) {
    report.cps_strict = report.cps;
  } else if (auto strict = find_strict_cps(tree, lambda)) {
    report.cps_strict = mix_cps(*strict, report.cps, 1e-6);
  }

  const PrimalModel primal = build_primal(tree, lambda, claim, cap);
  const lp::LpSolution psol = lp::solve(primal.lp);
  if (psol.status == lp::Status::kInfeasible) {
    report.status = HedgeStatus::kPrimalInfeasible;
    report.certificates["primal_feasible"] = false;
    return report;
  }
  if (psol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kCertificateFailure,
                "hedging problem unbounded although a price system exists");
  }
  report.primal_value = psol.objective;
  report.primal_certificate = lp::verify_certificate(primal.lp, psol);
  report.gap = std::abs(report.primal_value - report.dual_value);
  report.strategy = extract_strategy(psol, primal.layout, tree);

  const auto& strategy = report.strategy;
  report.certificates["self_financing"] = is_self_financing(tree, lambda, strategy).ok;

  const auto path = evaluate(tree, lambda, strategy);
  bool terminal = true;
  for (NodeId leaf : tree.leaves()) {
    const double scale = 1.0 + std::abs(claim.payoff[leaf]);
    terminal = terminal &&
               std::abs(path.post_trade[leaf].shares) <= kSelfFinancingTolerance * scale &&
               path.post_trade[leaf].bonds >= claim.payoff[leaf] - kSelfFinancingTolerance * scale;
  }
  report.certificates["terminal_dominates_claim"] = terminal;

  report.admissibility_bound_used =
      cap.bound ? *cap.bound : minimal_admissibility_bound(tree, lambda, strategy, cap.kind);
  report.certificates["admissibility"] =
      check_admissibility(tree, lambda, strategy, {cap.kind, report.admissibility_bound_used})
          .ok;

  bool cps_ok = verify_cps(tree, lambda, report.cps).ok;
  if (report.cps_strict) cps_ok = cps_ok && verify_cps(tree, lambda, *report.cps_strict).ok;
  report.certificates["cps"] = cps_ok;

  if (report.cps_strict) {
    const auto& q = *report.cps_strict;
    report.certificates["supermartingale"] = supermartingale_check(tree, lambda, q, strategy).ok;
    report.certificates["weak_duality"] =
        expected_claim(tree, q, claim) <= report.primal_value + kZeroGapTolerance;
  } else {
    report.certificates["supermartingale"] = false;
  }
  report.certificates["complementary_slackness"] =
      report.primal_certificate.ok && report.dual_certificate.ok;
  if (!cap.bound) report.certificates["zero_gap"] = report.gap <= kZeroGapTolerance;
  return report;
}

VariationBound variation_bound_check(const ScenarioTree& tree, double lambda,
                                     double lambda_prime, const Strategy& strategy,
                                     const ConsistentPriceSystem& cps_prime, double bound) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kPreconditionViolated, what);
  };
  require(lambda_prime > 0.0 && lambda_prime < lambda && lambda < 1.0,
          "need 0 < lambda' < lambda < 1");
  require(bound >= 0.0, "need M >= 0");
  check_shape(tree, strategy);
  require(strategy.initial.bonds == 0.0 && strategy.initial.shares == 0.0,
          "strategy must start at (0, 0)");
  require(is_self_financing(tree, lambda, strategy).ok, "strategy not self-financing at lambda");
  const auto path = evaluate(tree, lambda, strategy);
  for (NodeId leaf : tree.leaves()) {
    require(std::abs(path.post_trade[leaf].shares) <= kSelfFinancingTolerance,
            "stock position not liquidated at the horizon");
  }
  require(check_admissibility(tree, lambda, strategy,
                              {AdmissibilityKind::kNumeraireFree, bound})
              .ok,
          "strategy not M-admissible in the numeraire-free sense");
  require(cps_prime.strict(), "price system at lambda' not strict");
  require(verify_cps(tree, lambda_prime, cps_prime).ok,
          "price system fails verification at lambda'");

  VariationBound out;
  double expected_price = 0.0;
  for (NodeId leaf : tree.leaves()) {
    const double q = tree.path_probability(leaf) * cps_prime.z0[leaf];
    out.lhs += q * (path.bonds_up[leaf] + path.bonds_down[leaf]);
    expected_price += q * tree.price(leaf);
  }
  out.rhs = bound * (2.0 / (lambda - lambda_prime) + 1.0) * (1.0 + expected_price);
  out.holds = out.lhs <= out.rhs + 1e-9;
  return out;
}

std::vector<std::pair<double, SuperHedgeReport>> price_curve(
    const ScenarioTree& tree, const ClaimSpec& claim, const std::vector<double>& lambdas) {
  if (!std::is_sorted(lambdas.begin(), lambdas.end())) {
    throw Error(ErrorCode::kPreconditionViolated, "lambda grid must be ascending");
  }
  std::vector<std::pair<double, SuperHedgeReport>> curve;
  curve.reserve(lambdas.size());
  for (double lambda : lambdas) {
    curve.emplace_back(lambda, superhedge_price(tree, lambda, claim, AdmissibilityCap::Unbounded()));
  }
  const SuperHedgeReport* prev = nullptr;
  for (const auto& [lambda, r] : curve) {
    if (r.status != HedgeStatus::kOk) continue;
    if (prev && r.primal_value < prev->primal_value - 1e-9 * (1.0 + std::abs(prev->primal_value))) {
      throw Error(ErrorCode::kCertificateFailure,
                  fmt::format("price decreases from {} to {} at lambda {}", prev->primal_value,
                              r.primal_value, lambda));
    }
    prev = &r;
  }
  return curve;
}

}  // namespace spreadhedge
