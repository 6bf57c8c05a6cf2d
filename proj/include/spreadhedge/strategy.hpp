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

// Trading strategies under proportional transaction costs.
//
// A strategy is stored as trades. At node n the agent buys buy(n) shares at
// the ask price(n), sells sell(n) shares at the bid (1 - lambda) price(n),
// and withdraws consume(n) bonds. Every trade at a node executes at that
// node's price with that node's information. Holdings are derived:
//
//   shares(n) = shares(parent) + buy(n) - sell(n)
//   bonds(n)  = bonds(parent) - price(n) buy(n)
//               + (1 - lambda) price(n) sell(n) - consume(n)
//
// with the root's "parent" being the pre-trade endowment `initial`. The
// self-financing inequality is then the sign condition consume(n) >= 0.
// Because the bond leg depends on lambda, every query takes lambda.

#ifndef SPREADHEDGE_STRATEGY_HPP_
#define SPREADHEDGE_STRATEGY_HPP_

#include <optional>
#include <string>
#include <vector>

#include "spreadhedge/scenario_tree.hpp"

namespace spreadhedge {

inline constexpr double kSelfFinancingTolerance = 1e-9;

// Throws Error(kBadFriction) unless 0 <= lambda < 1.
struct TransactionCosts {
  explicit TransactionCosts(double lambda);
  double lambda;
};

void check_lambda(double lambda);

struct Holdings {
  double bonds = 0.0;
  double shares = 0.0;
};

struct Trade {
  double buy = 0.0;
  double sell = 0.0;
  double consume = 0.0;
};

struct Strategy {
  Holdings initial;
  std::vector<Trade> trades;  // indexed by node id

  static Strategy DoNothing(const ScenarioTree& tree, Holdings initial = {});
};

// Post-trade holdings and the Jordan decomposition of both legs, accumulated
// along the root->node path (the pre-trade endowment is the starting point,
// so all four cumulative processes are null before the first trade).
struct StrategyPath {
  std::vector<Holdings> post_trade;
  std::vector<double> bonds_up;
  std::vector<double> bonds_down;
  std::vector<double> shares_up;
  std::vector<double> shares_down;
};

// Throws Error(kShapeMismatch) unless trades cover exactly the tree's nodes.
void check_shape(const ScenarioTree& tree, const Strategy& strategy);

StrategyPath evaluate(const ScenarioTree& tree, double lambda, const Strategy& strategy);

struct SelfFinancingViolation {
  NodeId node;
  double residual;  // negative: bonds created out of nothing
  std::string field;
};

struct SelfFinancingReport {
  bool ok = true;
  std::vector<SelfFinancingViolation> violations;
};

// Checks buy, sell, consume >= -kSelfFinancingTolerance at every node.
SelfFinancingReport is_self_financing(const ScenarioTree& tree, double lambda,
                                      const Strategy& strategy);

// V = bonds + shares^+ (1 - lambda) S - shares^- S.
double liquidation_value(double lambda, Holdings h, double price);
double liquidation_value(const ScenarioTree& tree, double lambda,
                         const Strategy& strategy, NodeId node);

enum class AdmissibilityKind { kNumeraireBased, kNumeraireFree };

struct AdmissibilityCap {
  AdmissibilityKind kind = AdmissibilityKind::kNumeraireBased;
  std::optional<double> bound;  // M; nullopt = unbounded

  static AdmissibilityCap Unbounded(AdmissibilityKind kind = AdmissibilityKind::kNumeraireBased) {
    return {kind, std::nullopt};
  }
  // -M or -M(1 + price), or -inf when unbounded.
  double floor_at(double price) const;
};

struct AdmissibilityReport {
  bool ok = true;
  std::optional<NodeId> witness;  // first violating node in topological order
  double value = 0.0;             // liquidation value at the witness
  double floor = 0.0;
};

// Checks every node, which covers every stopping time on a finite tree.
AdmissibilityReport check_admissibility(const ScenarioTree& tree, double lambda,
                                        const Strategy& strategy,
                                        const AdmissibilityCap& cap);

// Smallest M >= 0 for which the strategy is admissible in the given sense.
double minimal_admissibility_bound(const ScenarioTree& tree, double lambda,
                                   const Strategy& strategy, AdmissibilityKind kind);

// Buy f(n) shares at each stop node and hold to the horizon; starts at (0,0).
// `amount` is indexed by node id and read only on stop nodes.
// Throws Error(kNotAnAntichain) when `stop` contains an ancestor pair.
Strategy make_ask_strategy(const ScenarioTree& tree, const Antichain& stop,
                           const std::vector<double>& amount);
// Sell g(n) shares at each stop node and hold to the horizon.
Strategy make_bid_strategy(const ScenarioTree& tree, double lambda,
                           const Antichain& stop, const std::vector<double>& amount);

// Same holdings path, re-expressed at another friction level: buys and sells
// are kept and consumption absorbs the change in sale proceeds. When
// to_lambda <= from_lambda this can only increase consumption.
Strategy reprice(const ScenarioTree& tree, const Strategy& strategy, double from_lambda,
                 double to_lambda);

// Bond leg raised by (lambda - lambda') / (1 - lambda) times the cumulative
// bond inflow; stock leg unchanged. The result is self-financing at lambda'
// (checked; Error(kCertificateFailure) otherwise). Throws Error(kBadFriction)
// when lambda' > lambda.
Strategy lower_friction_transform(const ScenarioTree& tree, const Strategy& strategy,
                                  double lambda, double lambda_prime);

struct Variation {
  double bonds = 0.0;
  double shares = 0.0;
};

Variation total_variation(const ScenarioTree& tree, double lambda,
                          const Strategy& strategy, NodeId node);

}  // namespace spreadhedge

#endif  // SPREADHEDGE_STRATEGY_HPP_
