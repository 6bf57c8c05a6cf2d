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

// Consistent price systems.
//
// A consistent price system is stored as a pair of nonnegative P-martingales
// (Z0, Z1) on the tree with Z0(root) = 1 and
//
//   (1 - lambda) S(n) Z0(n) <= Z1(n) <= S(n) Z0(n)    at every node.
//
// Z0 at a leaf is the density dQ/dP on that leaf's atom, and the shadow
// price Z1 / Z0 is a Q-martingale inside the bid-ask spread. Storing the pair
// keeps every constraint linear. Z0 may vanish on some nodes (Q only
// absolutely continuous); `strict()` reports whether Q ~ P.
//
// On a finite tree every local martingale is a true martingale, so a single
// type stands for both the local and the true notion.

#ifndef SPREADHEDGE_CPS_HPP_
#define SPREADHEDGE_CPS_HPP_

#include <optional>
#include <vector>

#include "spreadhedge/scenario_tree.hpp"
#include "spreadhedge/strategy.hpp"

namespace spreadhedge {

inline constexpr double kCpsTolerance = 1e-9;

struct ConsistentPriceSystem {
  std::vector<double> z0;  // indexed by node id
  std::vector<double> z1;

  bool strict() const;
};

struct CpsResidual {
  double value = 0.0;  // worst violation, >= 0
  std::optional<NodeId> node;
};

struct CpsVerification {
  bool ok = true;
  CpsResidual normalization;  // |Z0(root) - 1|
  CpsResidual sign;           // negative entries
  CpsResidual martingale;     // |Z(n) - sum_c p(c) Z(c)|, both components
  CpsResidual spread;         // distance outside the spread, over max(1, S)
};

// Throws Error(kShapeMismatch) if z0/z1 do not cover the tree.
CpsVerification verify_cps(const ScenarioTree& tree, double lambda,
                           const ConsistentPriceSystem& cps);

// Verification on the tree truncated at `stop`: nodes strictly below the
// antichain are ignored and stop nodes act as leaves. This is the check for
// a price system of the market stopped at the corresponding stopping time.
CpsVerification verify_stopped_cps(const ScenarioTree& tree, double lambda,
                                   const ConsistentPriceSystem& cps, const Antichain& stop);

// Z1/Z0, or the asset price where Z0 vanishes.
double shadow_price(const ScenarioTree& tree, const ConsistentPriceSystem& cps, NodeId node);

// E_Q[X_T] = sum over leaves of P(leaf) Z0(leaf) X_T(leaf).
double expected_claim(const ScenarioTree& tree, const ConsistentPriceSystem& cps,
                      const ClaimSpec& claim);

// E[bonds_T Z0_T + shares_T Z1_T] using post-trade holdings at the leaves.
// Nonpositive for every self-financing strategy started from (0, 0).
double polar_pairing(const ScenarioTree& tree, double lambda,
                     const ConsistentPriceSystem& cps, const Strategy& strategy);

struct SupermartingaleReport {
  bool ok = true;
  std::optional<NodeId> witness;
  double value = 0.0;            // V~(witness)
  double expected_next = 0.0;    // E_Q[V~(child) | witness]
  std::vector<double> shadow_value;  // V~ = bonds + shares * shadow price
};

// Node-wise check that V~(n) >= E_Q[V~(child) | n] with the Q-conditional
// probabilities p(c) Z0(c) / Z0(n). Throws Error(kNotStrict) when Z0
// vanishes anywhere.
SupermartingaleReport supermartingale_check(const ScenarioTree& tree, double lambda,
                                            const ConsistentPriceSystem& cps,
                                            const Strategy& strategy);

// Glues a price system of the stopped market (friction lambda_n, read only up
// to `stop`) to a strictly positive price system of the full market
// (friction lambda_prime). Up to the stop nodes the result is
// (Z0, (1 - lambda') Z1); strictly below a stop node a it continues as
//   Z0_global * Z0(a) / Z0_global(a),
//   (1 - lambda') Z1_global * Z1(a) / Z1_global(a).
// The result is verified at lambda before returning.
//
// Errors: kBadFrictionGap unless 0 < lambda' < (lambda - lambda_n) / 2;
// kUnverifiedInput if either input fails its own verification or the global
// system is not strict; kCertificateFailure if the output fails at lambda.
ConsistentPriceSystem concatenate_cps(const ScenarioTree& tree, double lambda,
                                      double lambda_n, double lambda_prime,
                                      const Antichain& stop,
                                      const ConsistentPriceSystem& local,
                                      const ConsistentPriceSystem& global);

// Freezes `x` at the antichain and checks the martingale identity at every
// node strictly before the stopping time. Requires x >= 0 everywhere and
// x <= cap before the stopping time (Error(kPreconditionViolated) otherwise).
bool stopped_martingale_check(const ScenarioTree& tree, const std::vector<double>& x,
                              const Antichain& stop, double cap);

// mu * a + (1 - mu) * b component-wise, mu in [0, 1].
// Throws Error(kMismatchedTrees) on size mismatch.
ConsistentPriceSystem mix_cps(const ConsistentPriceSystem& a,
                              const ConsistentPriceSystem& b, double mu);

}  // namespace spreadhedge

#endif  // SPREADHEDGE_CPS_HPP_
