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

// Shared instances and random generators for the test binaries.

#ifndef SPREADHEDGE_TESTS_FIXTURES_HPP_
#define SPREADHEDGE_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "spreadhedge/cps.hpp"
#include "spreadhedge/lp.hpp"
#include "spreadhedge/random.hpp"
#include "spreadhedge/scenario_tree.hpp"
#include "spreadhedge/strategy.hpp"
#include "spreadhedge/superhedge.hpp"

namespace spreadhedge::testing {

// S0 = 100, leaves 120 and 80, p = 1/2.
inline ScenarioTree B1Tree() {
  return ScenarioTree(1, {{0, std::nullopt, 0, 1.0, 100.0},
                          {1, 0, 1, 0.5, 120.0},
                          {2, 0, 1, 0.5, 80.0}});
}

// Deterministic path 100 -> 120.
inline ScenarioTree RisingPath() {
  return ScenarioTree(1, {{0, std::nullopt, 0, 1.0, 100.0}, {1, 0, 1, 1.0, 120.0}});
}

// Uniform tree: every node has `branching` equiprobable children with
// price steps spread evenly in [0.8, 1.2].
inline ScenarioTree UniformTree(int depth, int branching) {
  std::vector<Node> nodes{{0, std::nullopt, 0, 1.0, 100.0}};
  std::size_t begin = 0;
  for (int t = 0; t < depth; ++t) {
    const std::size_t end = nodes.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (int c = 0; c < branching; ++c) {
        const double step = 0.8 + 0.4 * c / (branching - 1);
        nodes.push_back({static_cast<NodeId>(nodes.size()), nodes[i].id, t + 1,
                         1.0 / branching, nodes[i].price * step});
      }
    }
    begin = end;
  }
  return ScenarioTree(depth, std::move(nodes));
}

inline ClaimSpec CallClaim(const ScenarioTree& tree, double strike) {
  ClaimSpec claim;
  claim.payoff.assign(tree.node_count(), 0.0);
  for (NodeId leaf : tree.leaves()) claim.payoff[leaf] = std::max(tree.price(leaf) - strike, 0.0);
  return claim;
}

// Seeded tree of the zero-gap suite: depth 1..5, branching 2..3.
inline ScenarioTree SuiteTree(std::uint64_t seed) {
  const int depth = 1 + static_cast<int>(seed % 5);
  const int branching = 2 + static_cast<int>((seed / 5) % 2);
  return generate_random_tree(seed, depth, branching);
}

// Bounded payoffs: calls, puts, digitals or uniform noise in [-50, 150].
inline ClaimSpec RandomClaim(const ScenarioTree& tree, Rng& rng) {
  ClaimSpec claim;
  claim.payoff.assign(tree.node_count(), 0.0);
  claim.lower_bound_kind = rng.bernoulli(0.5) ? LowerBoundKind::kConstant
                                              : LowerBoundKind::kStockBond;
  const int kind = rng.uniform_int(0, 3);
  const double strike = rng.uniform(60.0, 140.0);
  for (NodeId leaf : tree.leaves()) {
    const double s = tree.price(leaf);
    switch (kind) {
      case 0: claim.payoff[leaf] = std::max(s - strike, 0.0); break;
      case 1: claim.payoff[leaf] = std::max(strike - s, 0.0); break;
      case 2: claim.payoff[leaf] = s > strike ? 50.0 : -10.0; break;
      default: claim.payoff[leaf] = rng.uniform(-50.0, 150.0); break;
    }
  }
  return claim;
}

// Random trades with consumption; with `liquidate` every leaf closes its
// stock position.
inline Strategy RandomSelfFinancing(const ScenarioTree& tree, Rng& rng, bool liquidate) {
  Strategy s = Strategy::DoNothing(tree);
  std::vector<double> shares(tree.node_count(), 0.0);
  for (NodeId id : tree.topological_order()) {
    const auto& node = tree.node(id);
    const double before = node.parent ? shares[*node.parent] : 0.0;
    Trade& t = s.trades[id];
    if (liquidate && tree.is_leaf(id)) {
      if (before > 0.0) t.sell = before; else t.buy = -before;
    } else {
      if (rng.bernoulli(0.6)) t.buy = rng.uniform(0.0, 2.0);
      if (rng.bernoulli(0.6)) t.sell = rng.uniform(0.0, 2.0);
    }
    if (rng.bernoulli(0.3)) t.consume = rng.uniform(0.0, 5.0);
    shares[id] = before + t.buy - t.sell;
  }
  return s;
}

// Random hitting set: each node on a descent is kept with probability 0.4.
inline Antichain RandomAntichain(const ScenarioTree& tree, Rng& rng) {
  std::vector<NodeId> picked;
  std::vector<NodeId> stack{tree.root()};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    if (rng.bernoulli(0.4) || tree.is_leaf(id)) {
      if (!tree.is_leaf(id) || rng.bernoulli(0.7)) picked.push_back(id);
      continue;
    }
    for (NodeId c : tree.children(id)) stack.push_back(c);
  }
  if (picked.empty()) picked.push_back(tree.leaves().front());
  return make_antichain(tree, picked);
}

// A dual optimizer for a random claim mixed into the max-min-density
// system, so the result is strict but not always the same point.
inline ConsistentPriceSystem RandomStrictCps(const ScenarioTree& tree, double lambda,
                                             Rng& rng) {
  const auto strict = find_strict_cps(tree, lambda);
  const ClaimSpec claim = RandomClaim(tree, rng);
  const DualModel dual = build_dual(tree, lambda, claim);
  const lp::LpSolution sol = lp::solve(dual.lp);
  const ConsistentPriceSystem vertex = extract_cps(sol, dual.layout, tree, lambda);
  return mix_cps(*strict, vertex, rng.uniform(0.05, 1.0));
}

}  // namespace spreadhedge::testing

#endif  // SPREADHEDGE_TESTS_FIXTURES_HPP_
