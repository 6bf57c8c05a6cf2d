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

#include "spreadhedge/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "spreadhedge/errors.hpp"

namespace spreadhedge {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw Error(ErrorCode::kBadFriction,
                fmt::format("transaction cost {} not in [0, 1)", lambda));
  }
}

TransactionCosts::TransactionCosts(double l) : lambda(l) { check_lambda(l); }

Strategy Strategy::DoNothing(const ScenarioTree& tree, Holdings initial) {
  return Strategy{initial, std::vector<Trade>(tree.node_count())};
}

void check_shape(const ScenarioTree& tree, const Strategy& strategy) {
  if (strategy.trades.size() != tree.node_count()) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("strategy covers {} nodes, tree has {}",
                            strategy.trades.size(), tree.node_count()));
  }
}

StrategyPath evaluate(const ScenarioTree& tree, double lambda, const Strategy& strategy) {
  check_shape(tree, strategy);
  const auto n = tree.node_count();
  StrategyPath path;
  path.post_trade.resize(n);
  path.bonds_up.assign(n, 0.0);
  path.bonds_down.assign(n, 0.0);
  path.shares_up.assign(n, 0.0);
  path.shares_down.assign(n, 0.0);
  for (NodeId id : tree.topological_order()) {
    const auto& parent = tree.node(id).parent;
    Holdings before = strategy.initial;
    double b_up = 0, b_down = 0, s_up = 0, s_down = 0;
    if (parent) {
      before = path.post_trade[*parent];
      b_up = path.bonds_up[*parent];
      b_down = path.bonds_down[*parent];
      s_up = path.shares_up[*parent];
      s_down = path.shares_down[*parent];
    }
    const Trade& t = strategy.trades[id];
    const double s = tree.price(id);
    const double bond_increment = -s * t.buy + (1.0 - lambda) * s * t.sell - t.consume;
    path.post_trade[id] = {before.bonds + bond_increment, before.shares + t.buy - t.sell};
    path.bonds_up[id] = b_up + std::max(bond_increment, 0.0);
    path.bonds_down[id] = b_down + std::max(-bond_increment, 0.0);
    path.shares_up[id] = s_up + t.buy;
    path.shares_down[id] = s_down + t.sell;
  }
  return path;
}

SelfFinancingReport is_self_financing(const ScenarioTree& tree, double lambda,
                                      const Strategy& strategy) {
  check_lambda(lambda);
  check_shape(tree, strategy);
  SelfFinancingReport report;
  for (NodeId id : tree.topological_order()) {
    const Trade& t = strategy.trades[id];
    auto flag = [&](double v, const char* field) {
      if (!(v >= -kSelfFinancingTolerance)) {
        report.ok = false;
        report.violations.push_back({id, v, field});
      }
    };
    flag(t.buy, "buy");
    flag(t.sell, "sell");
    flag(t.consume, "consume");
  }
  return report;
}

double liquidation_value(double lambda, Holdings h, double price) {
  return h.bonds + std::max(h.shares, 0.0) * (1.0 - lambda) * price -
         std::max(-h.shares, 0.0) * price;
}

double liquidation_value(const ScenarioTree& tree, double lambda,
                         const Strategy& strategy, NodeId node) {
  tree.node(node);
  const auto path = evaluate(tree, lambda, strategy);
  return liquidation_value(lambda, path.post_trade[node], tree.price(node));
}

double AdmissibilityCap::floor_at(double price) const {
  if (!bound) return -std::numeric_limits<double>::infinity();
  return kind == AdmissibilityKind::kNumeraireBased ? -*bound : -*bound * (1.0 + price);
}

AdmissibilityReport check_admissibility(const ScenarioTree& tree, double lambda,
                                        const Strategy& strategy,
                                        const AdmissibilityCap& cap) {
  if (cap.bound && !(*cap.bound >= 0.0)) {
    throw Error(ErrorCode::kPreconditionViolated, "admissibility bound must be >= 0");
  }
  const auto path = evaluate(tree, lambda, strategy);
  AdmissibilityReport report;
  if (!cap.bound) return report;
  for (NodeId id : tree.topological_order()) {
    const double s = tree.price(id);
    const double v = liquidation_value(lambda, path.post_trade[id], s);
    const double floor = cap.floor_at(s);
    if (v < floor - kSelfFinancingTolerance) {
      return {false, id, v, floor};
    }
  }
  return report;
}

double minimal_admissibility_bound(const ScenarioTree& tree, double lambda,
                                   const Strategy& strategy, AdmissibilityKind kind) {
  const auto path = evaluate(tree, lambda, strategy);
  double m = 0.0;
  for (NodeId id : tree.topological_order()) {
    const double s = tree.price(id);
    const double v = liquidation_value(lambda, path.post_trade[id], s);
    m = std::max(m, kind == AdmissibilityKind::kNumeraireBased ? -v : -v / (1.0 + s));
  }
  return m;
}

namespace {

Strategy OneSidedStrategy(const ScenarioTree& tree, const Antichain& stop,
                          const std::vector<double>& amount, bool buy) {
  if (!is_antichain(tree, stop.node_ids)) {
    throw Error(ErrorCode::kNotAnAntichain,
                "stopping set contains an ancestor/descendant pair");
  }
  if (amount.size() != tree.node_count()) {
    throw Error(ErrorCode::kShapeMismatch, "amount vector does not match the tree");
  }
  Strategy s = Strategy::DoNothing(tree);
  for (NodeId id : stop.node_ids) {
    const double q = amount[id];
    if (!(q >= 0.0)) {
      throw Error(ErrorCode::kPreconditionViolated,
                  fmt::format("trade size at node {} must be >= 0", id));
    }
    (buy ? s.trades[id].buy : s.trades[id].sell) = q;
  }
  return s;
}

}  // namespace

Strategy make_ask_strategy(const ScenarioTree& tree, const Antichain& stop,
                           const std::vector<double>& amount) {
  return OneSidedStrategy(tree, stop, amount, /*buy=*/true);
}

Strategy make_bid_strategy(const ScenarioTree& tree, double lambda, const Antichain& stop,
                           const std::vector<double>& amount) {
  check_lambda(lambda);
  return OneSidedStrategy(tree, stop, amount, /*buy=*/false);
}

Strategy reprice(const ScenarioTree& tree, const Strategy& strategy, double from_lambda,
                 double to_lambda) {
  check_lambda(from_lambda);
  check_lambda(to_lambda);
  check_shape(tree, strategy);
  Strategy out = strategy;
  for (NodeId id : tree.topological_order()) {
    out.trades[id].consume +=
        (from_lambda - to_lambda) * tree.price(id) * strategy.trades[id].sell;
  }
  return out;
}

Strategy lower_friction_transform(const ScenarioTree& tree, const Strategy& strategy,
                                  double lambda, double lambda_prime) {
  check_lambda(lambda);
  check_lambda(lambda_prime);
  if (lambda_prime > lambda) {
    throw Error(ErrorCode::kBadFriction,
                fmt::format("lambda' = {} exceeds lambda = {}", lambda_prime, lambda));
  }
  const double coef = (lambda - lambda_prime) / (1.0 - lambda);
  const auto path = evaluate(tree, lambda, strategy);

  // New bond leg, then back out the consumption that realizes it at lambda'.
  Strategy out = strategy;
  for (NodeId id : tree.topological_order()) {
    const auto& parent = tree.node(id).parent;
    const double before =
        parent ? path.post_trade[*parent].bonds + coef * path.bonds_up[*parent]
               : strategy.initial.bonds;
    const double after = path.post_trade[id].bonds + coef * path.bonds_up[id];
    const Trade& t = strategy.trades[id];
    const double s = tree.price(id);
    out.trades[id].consume = -(after - before) - s * t.buy + (1.0 - lambda_prime) * s * t.sell;
  }
  const auto check = is_self_financing(tree, lambda_prime, out);
  if (!check.ok) {
    const auto& v = check.violations.front();
    throw Error(ErrorCode::kCertificateFailure,
                fmt::format("transformed strategy not self-financing at node {} ({} {})",
                            v.node, v.field, v.residual));
  }
  return out;
}

Variation total_variation(const ScenarioTree& tree, double lambda,
                          const Strategy& strategy, NodeId node) {
  tree.node(node);
  const auto path = evaluate(tree, lambda, strategy);
  return {path.bonds_up[node] + path.bonds_down[node],
          path.shares_up[node] + path.shares_down[node]};
}

}  // namespace spreadhedge
