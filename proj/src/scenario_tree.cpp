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

#include "spreadhedge/scenario_tree.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/core.h>

#include "spreadhedge/errors.hpp"
#include "spreadhedge/random.hpp"

namespace spreadhedge {
namespace {

[[noreturn]] void Invalid(NodeId id, const std::string& what) {
  throw Error(ErrorCode::kValidationError, fmt::format("node {}: {}", id, what));
}

}  // namespace

ScenarioTree::ScenarioTree(int depth, std::vector<Node> nodes)
    : depth_(depth) {
  if (depth_ < 1) {
    throw Error(ErrorCode::kValidationError,
                fmt::format("depth must be >= 1, got {}", depth_));
  }
  if (nodes.empty()) {
    throw Error(ErrorCode::kValidationError, "tree has no nodes");
  }
  const auto n = nodes.size();
  nodes_.resize(n);
  std::vector<bool> seen(n, false);
  for (auto& node : nodes) {
    if (node.id < 0 || static_cast<std::size_t>(node.id) >= n) {
      Invalid(node.id, fmt::format("id outside dense range 0..{}", n - 1));
    }
    if (seen[node.id]) Invalid(node.id, "duplicate id");
    seen[node.id] = true;
    nodes_[node.id] = node;
  }
  Validate();
}

void ScenarioTree::Validate() {
  const auto n = nodes_.size();
  children_.assign(n, {});
  std::optional<NodeId> root;
  for (const auto& node : nodes_) {
    if (!(node.price > 0.0) || !std::isfinite(node.price)) {
      Invalid(node.id, fmt::format("price must be positive, got {}", node.price));
    }
    if (!node.parent) {
      if (root) Invalid(node.id, fmt::format("second root (first is {})", *root));
      root = node.id;
      if (node.time != 0) Invalid(node.id, "root must sit at time 0");
      if (std::abs(node.cond_prob - 1.0) > kProbabilitySumTolerance) {
        Invalid(node.id, "root probability must be 1");
      }
      continue;
    }
    const NodeId parent = *node.parent;
    if (!contains(parent)) Invalid(node.id, fmt::format("unknown parent {}", parent));
    if (node.time != nodes_[parent].time + 1) {
      Invalid(node.id, fmt::format("time {} but parent {} is at time {}", node.time,
                                   parent, nodes_[parent].time));
    }
    if (node.time > depth_) {
      Invalid(node.id, fmt::format("time {} beyond depth {}", node.time, depth_));
    }
    if (!(node.cond_prob > 0.0) || node.cond_prob > 1.0 + kProbabilitySumTolerance) {
      Invalid(node.id, fmt::format("conditional probability {} not in (0,1]",
                                   node.cond_prob));
    }
    children_[parent].push_back(node.id);
  }
  if (!root) throw Error(ErrorCode::kValidationError, "tree has no root");
  root_ = *root;

  // Times strictly increase along parent links, so every node is reachable
  // from the root and there are no cycles.
  for (const auto& node : nodes_) {
    auto& kids = children_[node.id];
    std::sort(kids.begin(), kids.end());
    if (kids.empty()) {
      if (node.time != depth_) {
        Invalid(node.id, fmt::format("leaf at time {} but depth is {}", node.time, depth_));
      }
      continue;
    }
    double sum = 0.0;
    for (NodeId c : kids) sum += nodes_[c].cond_prob;
    if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
      Invalid(node.id, fmt::format("children probabilities sum to {}", sum));
    }
  }

  order_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) order_[i] = static_cast<NodeId>(i);
  std::stable_sort(order_.begin(), order_.end(), [this](NodeId a, NodeId b) {
    return nodes_[a].time < nodes_[b].time;
  });
  leaves_.clear();
  for (NodeId id : order_) {
    if (children_[id].empty()) leaves_.push_back(id);
  }
  std::sort(leaves_.begin(), leaves_.end());

  path_prob_.assign(nodes_.size(), 1.0);
  for (NodeId id : order_) {
    if (const auto& p = nodes_[id].parent) {
      path_prob_[id] = path_prob_[*p] * nodes_[id].cond_prob;
    }
  }
}

const Node& ScenarioTree::node(NodeId id) const {
  if (!contains(id)) {
    throw Error(ErrorCode::kUnknownNode, fmt::format("no node with id {}", id));
  }
  return nodes_[id];
}

std::span<const NodeId> ScenarioTree::children(NodeId id) const {
  node(id);
  return children_[id];
}

double ScenarioTree::path_probability(NodeId id) const {
  node(id);
  return path_prob_[id];
}

std::vector<NodeId> ScenarioTree::path_to(NodeId id) const {
  std::vector<NodeId> path;
  std::optional<NodeId> cur = node(id).id;
  while (cur) {
    path.push_back(*cur);
    cur = nodes_[*cur].parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool ScenarioTree::is_strict_ancestor(NodeId ancestor, NodeId descendant) const {
  const int t = node(ancestor).time;
  std::optional<NodeId> cur = node(descendant).parent;
  while (cur && nodes_[*cur].time >= t) {
    if (*cur == ancestor) return true;
    cur = nodes_[*cur].parent;
  }
  return false;
}

bool is_antichain(const ScenarioTree& tree, std::span<const NodeId> nodes) {
  for (NodeId id : nodes) tree.node(id);
  for (NodeId a : nodes) {
    for (NodeId b : nodes) {
      if (a != b && tree.is_strict_ancestor(a, b)) return false;
    }
  }
  return true;
}

Antichain make_antichain(const ScenarioTree& tree, std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  if (!is_antichain(tree, nodes)) {
    throw Error(ErrorCode::kNotAnAntichain,
                "stopping set contains an ancestor/descendant pair");
  }
  return Antichain{std::move(nodes)};
}

std::vector<std::optional<NodeId>> stopping_node(const ScenarioTree& tree,
                                                 const Antichain& stop) {
  std::vector<std::optional<NodeId>> hit(tree.node_count());
  std::vector<bool> in_stop(tree.node_count(), false);
  for (NodeId id : stop.node_ids) in_stop[tree.node(id).id] = true;
  for (NodeId id : tree.topological_order()) {
    if (in_stop[id]) {
      hit[id] = id;
    } else if (const auto& p = tree.node(id).parent) {
      hit[id] = hit[*p];
    }
  }
  return hit;
}

void check_claim(const ScenarioTree& tree, const ClaimSpec& claim) {
  if (claim.payoff.size() != tree.node_count()) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("claim has {} entries, tree has {} nodes",
                            claim.payoff.size(), tree.node_count()));
  }
  for (NodeId leaf : tree.leaves()) {
    if (!std::isfinite(claim.payoff[leaf])) {
      throw Error(ErrorCode::kShapeMismatch,
                  fmt::format("payoff at leaf {} is not finite", leaf));
    }
  }
}

double claim_lower_bound(const ScenarioTree& tree, const ClaimSpec& claim) {
  check_claim(tree, claim);
  double m = 0.0;
  for (NodeId leaf : tree.leaves()) {
    const double x = claim.payoff[leaf];
    const double need = claim.lower_bound_kind == LowerBoundKind::kConstant
                            ? -x
                            : -x / (1.0 + tree.price(leaf));
    m = std::max(m, need);
  }
  return m;
}

double claim_sup_norm(const ScenarioTree& tree, const ClaimSpec& claim) {
  check_claim(tree, claim);
  double m = 0.0;
  for (NodeId leaf : tree.leaves()) m = std::max(m, std::abs(claim.payoff[leaf]));
  return m;
}

ScenarioTree generate_random_tree(std::uint64_t seed, int depth, int max_branching,
                                  const PriceModel& model) {
  depth = std::clamp(depth, 1, 16);
  max_branching = std::clamp(max_branching, 2, 16);
  double lo = std::clamp(model.min_step, 0.5, 2.0);
  double hi = std::clamp(model.max_step, 0.5, 2.0);
  if (lo > hi) std::swap(lo, hi);
  if (model.arbitrage_free) {
    // Need room on both sides of 1.
    lo = std::min(lo, 0.9);
    hi = std::max(hi, 1.1);
  }
  const double s0 = model.initial_price > 0.0 ? model.initial_price : 100.0;

  Rng rng(seed);
  std::vector<Node> nodes;
  nodes.push_back(Node{0, std::nullopt, 0, 1.0, s0});
  std::size_t frontier_begin = 0;
  for (int t = 0; t < depth; ++t) {
    const std::size_t frontier_end = nodes.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      const Node parent = nodes[i];
      const int k = rng.uniform_int(2, max_branching);
      std::vector<double> weights(k);
      double total = 0.0;
      for (auto& w : weights) {
        w = rng.uniform(0.2, 1.0);
        total += w;
      }
      double assigned = 0.0;
      for (int c = 0; c < k; ++c) {
        double step;
        if (model.arbitrage_free && c == 0) {
          step = rng.uniform(1.0, hi);
        } else if (model.arbitrage_free && c == 1) {
          step = rng.uniform(lo, 1.0);
          if (step >= 1.0) step = lo;
        } else {
          step = rng.uniform(lo, hi);
        }
        double prob = weights[c] / total;
        if (c == k - 1) prob = 1.0 - assigned;
        assigned += prob;
        nodes.push_back(Node{static_cast<NodeId>(nodes.size()), parent.id, t + 1, prob,
                             parent.price * step});
      }
    }
    frontier_begin = frontier_end;
  }
  return ScenarioTree(depth, std::move(nodes));
}

}  // namespace spreadhedge
