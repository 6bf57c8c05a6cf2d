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

// Super-replication pricing under proportional transaction costs.
//
// The primal problem is the cheapest initial bond endowment X0 from which a
// self-financing strategy ends with no stock and at least X_T bonds at every
// leaf. The dual problem maximizes E_Q[X_T] over consistent price systems.
// On a finite tree both are linear programs and strong LP duality is exactly
// the statement that there is no duality gap; every report carries the
// certificates that make this checkable.
//
// Primal LP layout (n nodes, leaves L):
//   columns  X0 (free), buy(n), sell(n), consume(n) >= 0
//            [+ long(n), short(n) >= 0 when an admissibility cap is set]
//   eq rows  sum of buy - sell along the path to each leaf = 0
//   ub rows  -X0 + sum of (S buy - (1-lambda) S sell + consume) along the
//            path to each leaf <= -X_T(leaf)
// The dual multipliers of the ub rows are P(leaf) Z0(leaf) and those of the
// eq rows P(leaf) Z1(leaf) up to sign, so the primal LP's own dual is the
// price-system LP in leaf coordinates.

#ifndef SPREADHEDGE_SUPERHEDGE_HPP_
#define SPREADHEDGE_SUPERHEDGE_HPP_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spreadhedge/cps.hpp"
#include "spreadhedge/lp.hpp"
#include "spreadhedge/scenario_tree.hpp"
#include "spreadhedge/strategy.hpp"

namespace spreadhedge {

inline constexpr double kZeroGapTolerance = 1e-7;

struct PrimalLayout {
  int initial_capital = 0;
  std::vector<int> buy, sell, consume;
  std::vector<int> long_part, short_part;  // empty without a cap
  std::vector<int> leaf_shares_row;   // eq row per leaf (tree.leaves() order)
  std::vector<int> leaf_bonds_row;    // ub row per leaf
};

struct PrimalModel {
  lp::LinearProgram lp;
  PrimalLayout layout;
};

// Columns Z0(n) and U(n) = Z1(n) - (1 - lambda) S(n) Z0(n), so the lower
// spread bound is U >= 0 and the upper one U <= lambda S Z0.
struct DualLayout {
  std::vector<int> z0, spread;
  double lambda = 0.0;
};

struct DualModel {
  lp::LinearProgram lp;
  DualLayout layout;
};

PrimalModel build_primal(const ScenarioTree& tree, double lambda, const ClaimSpec& claim,
                         const AdmissibilityCap& cap);

DualModel build_dual(const ScenarioTree& tree, double lambda, const ClaimSpec& claim);

// Reads the trades off an optimal primal solution (initial holdings (X0, 0)).
// Tiny negative round-off is clamped; anything beyond the self-financing
// tolerance raises Error(kCertificateFailure).
Strategy extract_strategy(const lp::LpSolution& sol, const PrimalLayout& layout,
                          const ScenarioTree& tree);

// Reads Z0, Z1 off an optimal dual solution and verifies them.
ConsistentPriceSystem extract_cps(const lp::LpSolution& sol, const DualLayout& layout,
                                  const ScenarioTree& tree, double lambda);

// A strictly positive consistent price system, found by maximizing the
// smallest Z0 entry; nullopt when none exists.
std::optional<ConsistentPriceSystem> find_strict_cps(const ScenarioTree& tree,
                                                     double lambda);

// Maps the primal LP's multipliers to (Z0, Z1) node-wise via
// Z0(n) = sum of leaf weights below n / P(n), likewise Z1.
ConsistentPriceSystem cps_from_primal_duals(const lp::LpSolution& sol,
                                            const PrimalLayout& layout,
                                            const ScenarioTree& tree);

enum class HedgeStatus {
  kOk,
  kDualInfeasible,   // no consistent price system: the tree admits arbitrage
  kPrimalInfeasible, // only possible with a cap that cannot be met
};

std::string_view HedgeStatusName(HedgeStatus status);

struct SuperHedgeReport {
  HedgeStatus status = HedgeStatus::kOk;
  double lambda = 0.0;
  LowerBoundKind claim_kind = LowerBoundKind::kConstant;
  AdmissibilityCap admissibility;
  double primal_value = 0.0;  // super-replication price X0
  double dual_value = 0.0;    // max over price systems of E_Q[X_T]
  double gap = 0.0;
  double admissibility_bound_used = 0.0;  // M checked against
  Strategy strategy;
  ConsistentPriceSystem cps;                   // the dual optimizer
  std::optional<ConsistentPriceSystem> cps_strict;  // strict representative
  bool dual_optimizer_strict = false;
  std::map<std::string, bool> certificates;
  lp::CertificateReport primal_certificate;
  lp::CertificateReport dual_certificate;

  bool all_certificates() const;
};

// Solves both problems and fills every certificate. With an unbounded cap
// the gap must be within kZeroGapTolerance; otherwise the "zero_gap"
// certificate is false. A bounded cap reports its gap without asserting.
SuperHedgeReport superhedge_price(const ScenarioTree& tree, double lambda,
                                  const ClaimSpec& claim, const AdmissibilityCap& cap);

struct VariationBound {
  bool holds = false;
  double lhs = 0.0;  // E_Q[total variation of the bond leg]
  double rhs = 0.0;  // M (2 / (lambda - lambda') + 1) (1 + E_Q[S_T])
};

// Throws Error(kPreconditionViolated) naming the failed hypothesis.
VariationBound variation_bound_check(const ScenarioTree& tree, double lambda,
                                     double lambda_prime, const Strategy& strategy,
                                     const ConsistentPriceSystem& cps_prime, double bound);

// Unbounded-cap prices for ascending lambdas; asserts the curve is
// nondecreasing (Error(kCertificateFailure) otherwise).
std::vector<std::pair<double, SuperHedgeReport>> price_curve(const ScenarioTree& tree,
                                                             const ClaimSpec& claim,
                                                             const std::vector<double>& lambdas);

}  // namespace spreadhedge

#endif  // SPREADHEDGE_SUPERHEDGE_HPP_
