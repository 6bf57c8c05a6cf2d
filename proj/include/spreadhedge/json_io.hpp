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

// JSON file formats (UTF-8):
//
//   tree:     {"depth": int, "nodes": [{"id", "parent" (int|null), "time",
//              "prob", "price"}]}
//   claim:    {"payoffs": {"<leaf id>": number}, "bound": "constant"|"stock_bond"}
//             or {"payoff": "<expression in S>", "bound": ...}
//   strategy: {"initial": [bonds, shares],
//              "trades": {"<node id>": {"buy", "sell", "consume"}}}
//   cps:      {"z0": {"<node id>": number}, "z1": {...}}
//
// Malformed documents raise Error(kParseError); documents that parse but
// violate a model invariant raise Error(kValidationError).

#ifndef SPREADHEDGE_JSON_IO_HPP_
#define SPREADHEDGE_JSON_IO_HPP_

#include <string>
#include <string_view>

#include <json.hpp>

#include "spreadhedge/cps.hpp"
#include "spreadhedge/scenario_tree.hpp"
#include "spreadhedge/strategy.hpp"

namespace spreadhedge {

std::string read_file(const std::string& path);

ScenarioTree load_tree(std::string_view text);
nlohmann::json tree_to_json(const ScenarioTree& tree);
// Compact dump with sorted keys and nodes sorted by id.
std::string dump_tree(const ScenarioTree& tree);
// The canonical form of a tree document, computed on the raw JSON without
// building a tree: nodes sorted by id, prob/price as floating point,
// compact output with sorted keys.
std::string normalize_tree_json(std::string_view text);

ClaimSpec load_claim(std::string_view text, const ScenarioTree& tree);
nlohmann::json claim_to_json(const ScenarioTree& tree, const ClaimSpec& claim);

Strategy load_strategy(std::string_view text, const ScenarioTree& tree);
nlohmann::json strategy_to_json(const ScenarioTree& tree, const Strategy& strategy);

// Nodes missing from the document are filled with NaN, which fails
// verification unless the node is ignored (e.g. below a stopping set).
ConsistentPriceSystem load_cps(std::string_view text, const ScenarioTree& tree);
nlohmann::json cps_to_json(const ConsistentPriceSystem& cps);

}  // namespace spreadhedge

#endif  // SPREADHEDGE_JSON_IO_HPP_
