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

// Finite scenario trees: the discrete-time market with one bond (price 1,
// frictionless) and one risky asset whose price is known at every node.
//
// Conventions:
//  * node ids are dense 0..node_count-1 and need not be in time order;
//  * children are always listed in ascending id order, which fixes every
//    iteration order (and hence LP column order) in the library;
//  * all leaves sit at time depth(). The terminal-date regularity
//    conditions of the continuous-time model are vacuous here.

#ifndef SPREADHEDGE_SCENARIO_TREE_HPP_
#define SPREADHEDGE_SCENARIO_TREE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace spreadhedge {

using NodeId = std::int32_t;

struct Node {
  NodeId id = 0;
  std::optional<NodeId> parent;
  int time = 0;
  double cond_prob = 1.0;  // P(node | parent); 1 for the root
  double price = 1.0;      // bonds per share
};

class ScenarioTree {
 public:
  static constexpr double kProbabilitySumTolerance = 1e-12;

  // Validates and indexes `nodes`. Throws Error(kValidationError) naming the
  // offending node on any violated invariant.
  ScenarioTree(int depth, std::vector<Node> nodes);

  int depth() const { return depth_; }
  std::size_t node_count() const { return nodes_.size(); }
  NodeId root() const { return root_; }

  // Throws Error(kUnknownNode).
  const Node& node(NodeId id) const;
  double price(NodeId id) const { return node(id).price; }
  bool contains(NodeId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < nodes_.size();
  }
  bool is_leaf(NodeId id) const { return children(id).empty(); }

  std::span<const NodeId> children(NodeId id) const;
  std::span<const NodeId> leaves() const { return leaves_; }
  // Nodes ordered by (time, id); every parent precedes its children.
  std::span<const NodeId> topological_order() const { return order_; }
  std::span<const Node> nodes() const { return nodes_; }

  // Product of conditional probabilities along the root->node path.
  double path_probability(NodeId id) const;

  // Root first, `id` last.
  std::vector<NodeId> path_to(NodeId id) const;

  // True iff `ancestor` lies strictly above `descendant`.
  bool is_strict_ancestor(NodeId ancestor, NodeId descendant) const;

 private:
  void Validate();

  int depth_;
  std::vector<Node> nodes_;  // indexed by id
  NodeId root_ = 0;
  std::vector<std::vector<NodeId>> children_;
  std::vector<NodeId> leaves_;
  std::vector<NodeId> order_;
  std::vector<double> path_prob_;
};

// A set of pairwise incomparable nodes: the hitting set of a stopping time.
// Paths that avoid every element correspond to the time never being hit.
struct Antichain {
  std::vector<NodeId> node_ids;  // sorted, unique
};

// Throws Error(kUnknownNode) for ids outside the tree.
bool is_antichain(const ScenarioTree& tree, std::span<const NodeId> nodes);

// Sorts and deduplicates; throws Error(kNotAnAntichain) if ancestry holds
// within the set.
Antichain make_antichain(const ScenarioTree& tree, std::vector<NodeId> nodes);

// For each node: the element of `stop` at or above it, if any.
std::vector<std::optional<NodeId>> stopping_node(const ScenarioTree& tree,
                                                 const Antichain& stop);

enum class LowerBoundKind { kConstant, kStockBond };

// A European claim paying `payoff[leaf]` bonds at the horizon. Entries for
// internal nodes are ignored and kept at zero.
struct ClaimSpec {
  std::vector<double> payoff;  // indexed by node id
  LowerBoundKind lower_bound_kind = LowerBoundKind::kConstant;
};

// Throws Error(kShapeMismatch) unless the payoff vector matches the tree.
void check_claim(const ScenarioTree& tree, const ClaimSpec& claim);

// Smallest M >= 0 with X_T >= -M (constant) or X_T >= -M(1 + S_T)
// (stock_bond), depending on the claim's declared kind.
double claim_lower_bound(const ScenarioTree& tree, const ClaimSpec& claim);

// max |X_T| over leaves.
double claim_sup_norm(const ScenarioTree& tree, const ClaimSpec& claim);

struct PriceModel {
  double initial_price = 100.0;
  double min_step = 0.5;  // clamped to [0.5, 2.0]
  double max_step = 2.0;  // clamped to [0.5, 2.0]
  // When set, every node with two or more children gets one child with a
  // price at or above its own and one strictly below, so the frictionless
  // market already admits an equivalent martingale measure.
  bool arbitrage_free = true;
};

// Deterministic in `seed`. depth is clamped to [1, 16] and max_branching to
// [2, 16]; each internal node draws its branching uniformly from
// [2, max_branching]. Ids are assigned in breadth-first order.
ScenarioTree generate_random_tree(std::uint64_t seed, int depth,
                                  int max_branching,
                                  const PriceModel& model = {});

}  // namespace spreadhedge

#endif  // SPREADHEDGE_SCENARIO_TREE_HPP_
