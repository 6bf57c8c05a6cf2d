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

#include "spreadhedge/json_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/core.h>

#include "spreadhedge/errors.hpp"
#include "spreadhedge/payoff_expr.hpp"

namespace spreadhedge {

using nlohmann::json;

namespace {

json Parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

// Runs `body`, turning nlohmann type/lookup errors into parse errors.
template <typename F>
auto Guard(const char* what, F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, fmt::format("{}: {}", what, e.what()));
  }
}

const json& Field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorCode::kParseError, fmt::format("missing field '{}'", key));
  }
  return obj.at(key);
}

double Number(const json& v, const char* what) {
  if (!v.is_number()) {
    throw Error(ErrorCode::kParseError, fmt::format("'{}' must be a number", what));
  }
  return v.get<double>();
}

NodeId ParseNodeKey(const std::string& key, const ScenarioTree& tree) {
  NodeId id = -1;
  const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), id);
  if (ec != std::errc() || ptr != key.data() + key.size()) {
    throw Error(ErrorCode::kParseError, fmt::format("'{}' is not a node id", key));
  }
  if (!tree.contains(id)) {
    throw Error(ErrorCode::kValidationError, fmt::format("node {} not in tree", id));
  }
  return id;
}

std::vector<double> NodeMap(const json& obj, const ScenarioTree& tree, const char* what) {
  if (!obj.is_object()) {
    throw Error(ErrorCode::kParseError, fmt::format("'{}' must be an object", what));
  }
  std::vector<double> out(tree.node_count(), std::numeric_limits<double>::quiet_NaN());
  for (const auto& [key, value] : obj.items()) {
    out[ParseNodeKey(key, tree)] = Number(value, what);
  }
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ScenarioTree load_tree(std::string_view text) {
  const json doc = Parse(text);
  return Guard("tree", [&] {
    const json& depth = Field(doc, "depth");
    const json& nodes = Field(doc, "nodes");
    if (!depth.is_number_integer() || !nodes.is_array()) {
      throw Error(ErrorCode::kParseError, "'depth' must be an integer and 'nodes' an array");
    }
    std::vector<Node> out;
    out.reserve(nodes.size());
    for (const json& n : nodes) {
      Node node;
      const json& id = Field(n, "id");
      const json& time = Field(n, "time");
      if (!id.is_number_integer() || !time.is_number_integer()) {
        throw Error(ErrorCode::kParseError, "'id' and 'time' must be integers");
      }
      node.id = id.get<NodeId>();
      node.time = time.get<int>();
      const json& parent = Field(n, "parent");
      if (parent.is_null()) {
        node.parent = std::nullopt;
      } else if (parent.is_number_integer()) {
        node.parent = parent.get<NodeId>();
      } else {
        throw Error(ErrorCode::kParseError, "'parent' must be an integer or null");
      }
      node.cond_prob = Number(Field(n, "prob"), "prob");
      node.price = Number(Field(n, "price"), "price");
      out.push_back(node);
    }
    return ScenarioTree(depth.get<int>(), std::move(out));
  });
}

json tree_to_json(const ScenarioTree& tree) {
  json nodes = json::array();
  for (const Node& n : tree.nodes()) {
    json j;
    j["id"] = n.id;
    j["parent"] = n.parent ? json(*n.parent) : json(nullptr);
    j["time"] = n.time;
    j["prob"] = n.cond_prob;
    j["price"] = n.price;
    nodes.push_back(std::move(j));
  }
  return json{{"depth", tree.depth()}, {"nodes", std::move(nodes)}};
}

std::string dump_tree(const ScenarioTree& tree) { return tree_to_json(tree).dump(); }

std::string normalize_tree_json(std::string_view text) {
  json doc = Parse(text);
  return Guard("tree", [&] {
    json& nodes = doc.at("nodes");
    for (json& n : nodes) {
      n["prob"] = n.at("prob").get<double>();
      n["price"] = n.at("price").get<double>();
    }
    std::vector<json> sorted(nodes.begin(), nodes.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const json& a, const json& b) {
      return a.at("id").get<long long>() < b.at("id").get<long long>();
    });
    doc["nodes"] = sorted;
    return doc.dump();
  });
}

ClaimSpec load_claim(std::string_view text, const ScenarioTree& tree) {
  const json doc = Parse(text);
  return Guard("claim", [&] {
    ClaimSpec claim;
    claim.payoff.assign(tree.node_count(), 0.0);
    if (doc.contains("bound")) {
      const std::string bound = doc.at("bound").get<std::string>();
      if (bound == "constant") {
        claim.lower_bound_kind = LowerBoundKind::kConstant;
      } else if (bound == "stock_bond") {
        claim.lower_bound_kind = LowerBoundKind::kStockBond;
      } else {
        throw Error(ErrorCode::kParseError, fmt::format("unknown bound kind '{}'", bound));
      }
    }
    if (doc.contains("payoff")) {
      const auto expr = PayoffExpression::Parse(doc.at("payoff").get<std::string>());
      for (NodeId leaf : tree.leaves()) claim.payoff[leaf] = expr.Evaluate(tree.price(leaf));
      return claim;
    }
    const auto values = NodeMap(Field(doc, "payoffs"), tree, "payoffs");
    for (NodeId id = 0; id < static_cast<NodeId>(tree.node_count()); ++id) {
      const bool given = !std::isnan(values[id]);
      if (tree.is_leaf(id) && !given) {
        throw Error(ErrorCode::kValidationError, fmt::format("no payoff for leaf {}", id));
      }
      if (!tree.is_leaf(id) && given) {
        throw Error(ErrorCode::kValidationError,
                    fmt::format("payoff given for internal node {}", id));
      }
      if (given) claim.payoff[id] = values[id];
    }
    check_claim(tree, claim);
    return claim;
  });
}

json claim_to_json(const ScenarioTree& tree, const ClaimSpec& claim) {
  check_claim(tree, claim);
  json payoffs = json::object();
  for (NodeId leaf : tree.leaves()) payoffs[std::to_string(leaf)] = claim.payoff[leaf];
  return json{{"payoffs", payoffs},
              {"bound", claim.lower_bound_kind == LowerBoundKind::kConstant ? "constant"
                                                                             : "stock_bond"}};
}

Strategy load_strategy(std::string_view text, const ScenarioTree& tree) {
  const json doc = Parse(text);
  return Guard("strategy", [&] {
    Strategy s = Strategy::DoNothing(tree);
    if (doc.contains("initial")) {
      const json& init = doc.at("initial");
      if (!init.is_array() || init.size() != 2) {
        throw Error(ErrorCode::kParseError, "'initial' must be [bonds, shares]");
      }
      s.initial = {Number(init[0], "initial"), Number(init[1], "initial")};
    }
    if (doc.contains("trades")) {
      const json& trades = doc.at("trades");
      if (!trades.is_object()) throw Error(ErrorCode::kParseError, "'trades' must be an object");
      for (const auto& [key, t] : trades.items()) {
        Trade& trade = s.trades[ParseNodeKey(key, tree)];
        if (t.contains("buy")) trade.buy = Number(t.at("buy"), "buy");
        if (t.contains("sell")) trade.sell = Number(t.at("sell"), "sell");
        if (t.contains("consume")) trade.consume = Number(t.at("consume"), "consume");
      }
    }
    return s;
  });
}

json strategy_to_json(const ScenarioTree& tree, const Strategy& strategy) {
  check_shape(tree, strategy);
  json trades = json::object();
  for (NodeId id = 0; id < static_cast<NodeId>(tree.node_count()); ++id) {
    const Trade& t = strategy.trades[id];
    if (t.buy == 0.0 && t.sell == 0.0 && t.consume == 0.0) continue;
    trades[std::to_string(id)] = {{"buy", t.buy}, {"sell", t.sell}, {"consume", t.consume}};
  }
  return json{{"initial", {strategy.initial.bonds, strategy.initial.shares}},
              {"trades", trades}};
}

ConsistentPriceSystem load_cps(std::string_view text, const ScenarioTree& tree) {
  const json doc = Parse(text);
  return Guard("cps", [&] {
    return ConsistentPriceSystem{NodeMap(Field(doc, "z0"), tree, "z0"),
                                 NodeMap(Field(doc, "z1"), tree, "z1")};
  });
}

json cps_to_json(const ConsistentPriceSystem& cps) {
  json z0 = json::object(), z1 = json::object();
  for (std::size_t i = 0; i < cps.z0.size(); ++i) {
    z0[std::to_string(i)] = cps.z0[i];
    z1[std::to_string(i)] = cps.z1[i];
  }
  return json{{"z0", z0}, {"z1", z1}};
}

}  // namespace spreadhedge
