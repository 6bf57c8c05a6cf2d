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

#ifndef SPREADHEDGE_CLI_HPP_
#define SPREADHEDGE_CLI_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "spreadhedge/report.hpp"
#include "spreadhedge/strategy.hpp"

namespace spreadhedge::cli {

enum class Command {
  kPrice,
  kDual,
  kVerifyCps,
  kCheckStrategy,
  kVariationBound,
  kConcatCps,
  kGenTree,
  kReport,
};

struct RunConfig {
  Command command = Command::kPrice;
  std::string tree_path;
  std::string claim_path;
  std::string strategy_path;
  std::string cps_path;
  std::string global_cps_path;
  std::vector<NodeId> stop;
  double lambda = 0.0;
  double lambda_prime = 0.0;
  double lambda_n = 0.0;
  std::vector<double> lambdas;
  AdmissibilityCap cap;
  std::uint64_t seed = 1;
  int depth = 3;
  int branching = 2;
  std::string output;  // empty: stdout
  ReportFormat format = ReportFormat::kText;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitDomain = 2;

// Throws Error(kUsageError) on bad flags. Applies SPREADHEDGE_SEED.
RunConfig parse_args(int argc, const char* const* argv);

// Exit 0 on success, 2 on a domain finding (the output names one reason),
// 1 on input errors (message on `err`).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_args + run, with --help handling.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spreadhedge::cli

#endif  // SPREADHEDGE_CLI_HPP_
