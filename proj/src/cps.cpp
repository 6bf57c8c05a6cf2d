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

#include "spreadhedge/cps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

#include "spreadhedge/errors.hpp"

namespace spreadhedge {
namespace {

void CheckShape(const ScenarioTree& tree, const ConsistentPriceSystem& cps) {
  if (cps.z0.size() != tree.node_count() || cps.z1.size() != tree.node_count()) {
    throw Error(ErrorCode::kShapeMismatch,
                fmt::format("price system covers ({}, {}) nodes, tree has {}",
                            cps.z0.size(), cps.z1.size(), tree.node_count()));
  }
}

void Record(CpsResidual& r, double v, NodeId id) {
  if (v > r.value || (std::isnan(v) && !std::isnan(r.value))) {
    r.value = v;
    r.node = id;
  }
}

// `active[n]` marks the nodes that belong to the (possibly truncated) tree;
// `leaf[n]` marks the nodes treated as leaves.
CpsVerification Verify(const ScenarioTree& tree, double lambda,
                       const ConsistentPriceSystem& cps, const std::vector<bool>& active,
                       const std::vector<bool>& leaf) {
  check_lambda(lambda);
  CheckShape(tree, cps);
  CpsVerification v;
  const NodeId root = tree.root();
  Record(v.normalization, std::abs(cps.z0[root] - 1.0), root);
  for (NodeId id : tree.topological_order()) {
    if (!active[id]) continue;
    const double z0 = cps.z0[id];
    const double z1 = cps.z1[id];
    if (!std::isfinite(z0) || !std::isfinite(z1)) {
      Record(v.sign, std::numeric_limits<double>::infinity(), id);
      continue;
    }
    Record(v.sign, std::max({0.0, -z0, -z1}), id);
    const double s = tree.price(id);
    const double scale = std::max(1.0, s);
    const double below = (1.0 - lambda) * s * z0 - z1;
    const double above = z1 - s * z0;
    Record(v.spread, std::max({0.0, below, above}) / scale, id);
    if (leaf[id]) continue;
    double e0 = 0.0, e1 = 0.0;
    for (NodeId c : tree.children(id)) {
      e0 += tree.node(c).cond_prob * cps.z0[c];
      e1 += tree.node(c).cond_prob * cps.z1[c];
    }
    Record(v.martingale, std::abs(z0 - e0), id);
    Record(v.martingale, std::abs(z1 - e1) / scale, id);
  }
  auto fine = [](const CpsResidual& r) { return r.value <= kCpsTolerance; };
  v.ok = fine(v.normalization) && fine(v.sign) && fine(v.martingale) && fine(v.spread);
  return v;
}

}  // namespace

bool ConsistentPriceSystem::strict() const {
  return std::all_of(z0.begin(), z0.end(), [](double z) { return z > 0.0; });
}

CpsVerification verify_cps(const ScenarioTree& tree, double lambda,
                           const ConsistentPriceSystem& cps) {
  std::vector<bool> active(tree.node_count(), true);
  std::vector<bool> leaf(tree.node_count(), false);
  for (NodeId l : tree.leaves()) leaf[l] = true;
  return Verify(tree, lambda, cps, active, leaf);
}

CpsVerification verify_stopped_cps(const ScenarioTree& tree, double lambda,
                                   const ConsistentPriceSystem& cps,
                                   const Antichain& stop) {
  const auto hit = stopping_node(tree, stop);
  std::vector<bool> active(tree.node_count(), false);
  std::vector<bool> leaf(tree.node_count(), false);
  for (NodeId id : tree.topological_order()) {
    active[id] = !hit[id] || *hit[id] == id;
    leaf[id] = tree.is_leaf(id) || (hit[id] && *hit[id] == id);
  }
  return Verify(tree, lambda, cps, active, leaf);
}

double shadow_price(const ScenarioTree& tree, const ConsistentPriceSystem& cps,
                    NodeId node) {
  tree.node(node);
  CheckShape(tree, cps);
  return cps.z0[node] > 0.0 ? cps.z1[node] / cps.z0[node] : tree.price(node);
}

double expected_claim(const ScenarioTree& tree, const ConsistentPriceSystem& cps,
                      const ClaimSpec& claim) {
  CheckShape(tree, cps);
  check_claim(tree, claim);
  double sum = 0.0;
  for (NodeId l : tree.leaves()) {
    sum += tree.path_probability(l) * cps.z0[l] * claim.payoff[l];
  }
  return sum;
}

double polar_pairing(const ScenarioTree& tree, double lambda,
                     const ConsistentPriceSystem& cps, const Strategy& strategy) {
  CheckShape(tree, cps);
  const auto path = evaluate(tree, lambda, strategy);
  double sum = 0.0;
  for (NodeId l : tree.leaves()) {
    const auto& h = path.post_trade[l];
    sum += tree.path_probability(l) * (h.bonds * cps.z0[l] + h.shares * cps.z1[l]);
  }
  return sum;
}

SupermartingaleReport supermartingale_check(const ScenarioTree& tree, double lambda,
                                            const ConsistentPriceSystem& cps,
                                            const Strategy& strategy) {
  CheckShape(tree, cps);
  if (!cps.strict()) {
    throw Error(ErrorCode::kNotStrict, "Z0 vanishes somewhere; Q is not equivalent to P");
  }
  const auto path = evaluate(tree, lambda, strategy);
  SupermartingaleReport report;
  report.shadow_value.resize(tree.node_count());
  for (NodeId id : tree.topological_order()) {
    const auto& h = path.post_trade[id];
    report.shadow_value[id] = h.bonds + h.shares * cps.z1[id] / cps.z0[id];
  }
  // Compared in density form, Z0 V~ = bonds Z0 + shares Z1, so small
  // densities do not amplify round-off through Z1 / Z0.
  const auto weighted = [&](NodeId id) {
    const auto& h = path.post_trade[id];
    return h.bonds * cps.z0[id] + h.shares * cps.z1[id];
  };
  const auto magnitude = [&](NodeId id) {
    const auto& h = path.post_trade[id];
    return std::abs(h.bonds) * cps.z0[id] + std::abs(h.shares) * cps.z1[id];
  };
  for (NodeId id : tree.topological_order()) {
    if (tree.is_leaf(id)) continue;
    double next = 0.0;
    double scale = std::max(1.0, magnitude(id));
    for (NodeId c : tree.children(id)) {
      const double p = tree.node(c).cond_prob;
      next += p * weighted(c);
      scale = std::max(scale, p * magnitude(c));
    }
    const double here = weighted(id);
    if (here < next - kCpsTolerance * scale) {
      report.ok = false;
      report.witness = id;
      report.value = report.shadow_value[id];
      report.expected_next = next / cps.z0[id];
      break;
    }
  }
  return report;
}

ConsistentPriceSystem concatenate_cps(const ScenarioTree& tree, double lambda,
                                      double lambda_n, double lambda_prime,
                                      const Antichain& stop,
                                      const ConsistentPriceSystem& local,
                                      const ConsistentPriceSystem& global) {
  check_lambda(lambda);
  check_lambda(lambda_n);
  if (!(lambda_prime > 0.0 && lambda_prime < (lambda - lambda_n) / 2.0)) {
    throw Error(ErrorCode::kBadFrictionGap,
                fmt::format("need 0 < lambda' < (lambda - lambda_n)/2 = {}, got {}",
                            (lambda - lambda_n) / 2.0, lambda_prime));
  }
  if (!is_antichain(tree, stop.node_ids)) {
    throw Error(ErrorCode::kNotAnAntichain, "stopping set is not an antichain");
  }
  if (!verify_stopped_cps(tree, lambda_n, local, stop).ok) {
    throw Error(ErrorCode::kUnverifiedInput,
                "local price system fails verification on the stopped tree");
  }
  if (!verify_cps(tree, lambda_prime, global).ok) {
    throw Error(ErrorCode::kUnverifiedInput,
                "global price system fails verification at lambda'");
  }
  if (!global.strict()) {
    throw Error(ErrorCode::kUnverifiedInput, "global price system is not strict");
  }

  const auto hit = stopping_node(tree, stop);
  const auto n = tree.node_count();
  ConsistentPriceSystem out{std::vector<double>(n), std::vector<double>(n)};
  const double shrink = 1.0 - lambda_prime;
  for (NodeId id : tree.topological_order()) {
    if (!hit[id] || *hit[id] == id) {
      out.z0[id] = local.z0[id];
      out.z1[id] = shrink * local.z1[id];
    } else {
      const NodeId a = *hit[id];
      out.z0[id] = global.z0[id] * local.z0[a] / global.z0[a];
      out.z1[id] = shrink * global.z1[id] * local.z1[a] / global.z1[a];
    }
  }
  const auto check = verify_cps(tree, lambda, out);
  if (!check.ok) {
    throw Error(ErrorCode::kCertificateFailure,
                fmt::format("concatenated system fails verification (spread {}, "
                            "martingale {})",
                            check.spread.value, check.martingale.value));
  }
  return out;
}

bool stopped_martingale_check(const ScenarioTree& tree, const std::vector<double>& x,
                              const Antichain& stop, double cap) {
  if (x.size() != tree.node_count()) {
    throw Error(ErrorCode::kShapeMismatch, "process does not cover the tree");
  }
  if (!is_antichain(tree, stop.node_ids)) {
    throw Error(ErrorCode::kNotAnAntichain, "stopping set is not an antichain");
  }
  const auto hit = stopping_node(tree, stop);
  for (NodeId id : tree.topological_order()) {
    if (!(x[id] >= 0.0)) {
      throw Error(ErrorCode::kPreconditionViolated,
                  fmt::format("process negative at node {}", id));
    }
    if (!hit[id] && x[id] > cap) {
      throw Error(ErrorCode::kPreconditionViolated,
                  fmt::format("process {} exceeds bound {} before the stop at node {}",
                              x[id], cap, id));
    }
  }
  for (NodeId id : tree.topological_order()) {
    if (hit[id] || tree.is_leaf(id)) continue;  // frozen, or nothing to check
    double next = 0.0;
    for (NodeId c : tree.children(id)) next += tree.node(c).cond_prob * x[c];
    if (std::abs(x[id] - next) > 1e-10 * std::max(1.0, std::abs(x[id]))) return false;
  }
  return true;
}

ConsistentPriceSystem mix_cps(const ConsistentPriceSystem& a,
                              const ConsistentPriceSystem& b, double mu) {
  if (a.z0.size() != b.z0.size() || a.z1.size() != b.z1.size() ||
      a.z0.size() != a.z1.size()) {
    throw Error(ErrorCode::kMismatchedTrees, "price systems live on different trees");
  }
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw Error(ErrorCode::kPreconditionViolated,
                fmt::format("mixing weight {} not in [0, 1]", mu));
  }
  ConsistentPriceSystem out = a;
  for (std::size_t i = 0; i < a.z0.size(); ++i) {
    out.z0[i] = mu * a.z0[i] + (1.0 - mu) * b.z0[i];
    out.z1[i] = mu * a.z1[i] + (1.0 - mu) * b.z1[i];
  }
  return out;
}

}  // namespace spreadhedge
