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

// Dense two-phase revised simplex with duality certificates.
//
// Problems are stated as
//
//   min/max  c'x   s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  lower <= x <= upper
//
// with infinite bounds allowed. Internally the problem is shifted and split
// into standard form (x >= 0, equality rows); the returned solution and
// multipliers refer to the external model.
//
// Sign conventions for the multipliers, for either sense:
//   reduced_costs = c - A_eq' y_eq - A_ub' y_ub
//   min: y_ub <= 0, reduced cost >= 0 at a lower bound, <= 0 at an upper one
//   max: y_ub >= 0, reduced cost <= 0 at a lower bound, >= 0 at an upper one
// and the dual objective is b_eq'y_eq + b_ub'y_ub + the bound terms.

#ifndef SPREADHEDGE_LP_HPP_
#define SPREADHEDGE_LP_HPP_

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spreadhedge::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr double kOptimalityTolerance = 1e-9;
inline constexpr double kComplementarityTolerance = 1e-8;
inline constexpr double kDualityGapTolerance = 1e-8;
inline constexpr double kPivotTolerance = 1e-12;

enum class Sense { kMinimize, kMaximize };
enum class Status { kOptimal, kInfeasible, kUnbounded };

std::string_view StatusName(Status status);

struct LinearProgram {
  Sense sense = Sense::kMinimize;
  Eigen::VectorXd c;
  Eigen::MatrixXd a_eq;
  Eigen::VectorXd b_eq;
  Eigen::MatrixXd a_ub;
  Eigen::VectorXd b_ub;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::vector<std::string> names;

  // An empty problem over `num_vars` variables, all in [0, +inf).
  static LinearProgram WithVariables(int num_vars, Sense sense = Sense::kMinimize);
  int num_vars() const { return static_cast<int>(c.size()); }

  // Append a row; returns its index within the eq/ub block.
  int add_eq_row(const Eigen::VectorXd& row, double rhs);
  int add_ub_row(const Eigen::VectorXd& row, double rhs);

  // Throws Error(kShapeMismatch) or Error(kValidationError).
  void validate() const;
};

struct LpSolution {
  Status status = Status::kInfeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
  Eigen::VectorXd y_eq;
  Eigen::VectorXd y_ub;
  Eigen::VectorXd reduced_costs;
  int iterations = 0;
};

// Deterministic: entering columns by most negative reduced cost with ties to
// the lowest index, switching to Bland's rule during runs of degenerate
// pivots; leaving rows by minimum ratio with ties to the lowest variable
// index. Throws Error(kNumericalBreakdown) if no acceptable pivot exists or
// the iteration limit is hit.
LpSolution solve(const LinearProgram& lp);

struct CertificateReport {
  bool ok = false;
  double primal_residual = 0.0;          // scaled by 1 + |rhs|
  double dual_residual = 0.0;            // scaled by 1 + |c_j|
  double complementarity_residual = 0.0;
  double duality_gap = 0.0;              // |primal - dual| / (1 + |primal|)
  double dual_objective = 0.0;
  std::string failed;                    // names of failing residuals
};

// Recomputes all four residuals from (lp, sol) alone.
CertificateReport verify_certificate(const LinearProgram& lp, const LpSolution& sol);

struct Vertex {
  Eigen::VectorXd x;
  double objective = 0.0;
};

// All basic feasible solutions, deduplicated. Throws Error(kTooLarge) above
// kMaxBruteForceVars variables.
inline constexpr int kMaxBruteForceVars = 8;
std::vector<Vertex> enumerate_vertices(const LinearProgram& lp);

// The optimal vertices (objective within 1e-9 of the best). Empty when the
// problem is infeasible. Assumes the optimum is attained at a vertex.
std::vector<Vertex> brute_force_vertices(const LinearProgram& lp);

// Plain-text standard-form dump for cross-checking with external solvers.
void dump(const LinearProgram& lp, std::ostream& out);

}  // namespace spreadhedge::lp

#endif  // SPREADHEDGE_LP_HPP_
