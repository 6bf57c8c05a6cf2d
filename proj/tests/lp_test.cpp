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

#include "spreadhedge/lp.hpp"

#include <sstream>

#include <gtest/gtest.h>

#include "spreadhedge/errors.hpp"
#include "spreadhedge/random.hpp"

namespace spreadhedge::lp {
namespace {

Eigen::VectorXd Row(std::initializer_list<double> v) {
  Eigen::VectorXd r(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) r(i++) = x;
  return r;
}

LinearProgram FreeVariables(int n, Sense sense) {
  auto lp = LinearProgram::WithVariables(n, sense);
  lp.lower.setConstant(-kInf);
  return lp;
}

// min B + 100 D  s.t.  B + 108 D >= 20,  B + 72 D >= 0.
LinearProgram BinomialHedge() {
  auto lp = FreeVariables(2, Sense::kMinimize);
  lp.c = Row({1.0, 100.0});
  lp.names = {"B", "D"};
  lp.add_ub_row(Row({-1.0, -108.0}), -20.0);
  lp.add_ub_row(Row({-1.0, -72.0}), 0.0);
  return lp;
}

TEST(Solve, SingleBound) {
  auto lp = FreeVariables(1, Sense::kMinimize);
  lp.c = Row({1.0});
  lp.add_ub_row(Row({-1.0}), -3.0);
  const auto sol = solve(lp);
  ASSERT_EQ(sol.status, Status::kOptimal);
  EXPECT_NEAR(sol.x(0), 3.0, 1e-12);
  EXPECT_NEAR(sol.objective, 3.0, 1e-12);
  EXPECT_TRUE(verify_certificate(lp, sol).ok);
}

TEST(Solve, BinomialHedge) {
  const auto lp = BinomialHedge();
  const auto sol = solve(lp);
  ASSERT_EQ(sol.status, Status::kOptimal);
  EXPECT_NEAR(sol.x(0), -40.0, 1e-9);
  EXPECT_NEAR(sol.x(1), 5.0 / 9.0, 1e-12);
  EXPECT_NEAR(sol.objective, 140.0 / 9.0, 1e-9);
  // Multipliers are the risk-neutral weights scaled to a price: q = 7/9.
  EXPECT_NEAR(-sol.y_ub(0), 7.0 / 9.0, 1e-12);
  EXPECT_NEAR(-sol.y_ub(1), 2.0 / 9.0, 1e-12);
  EXPECT_TRUE(verify_certificate(lp, sol).ok);
}

TEST(Solve, Unbounded) {
  auto lp = LinearProgram::WithVariables(1, Sense::kMaximize);
  lp.c = Row({1.0});
  EXPECT_EQ(solve(lp).status, Status::kUnbounded);
}

TEST(Solve, Infeasible) {
  auto lp = LinearProgram::WithVariables(2, Sense::kMinimize);
  lp.c = Row({1.0, 1.0});
  lp.add_ub_row(Row({1.0, 1.0}), -1.0);
  EXPECT_EQ(solve(lp).status, Status::kInfeasible);
}

TEST(Solve, BoundsOnly) {
  auto lp = LinearProgram::WithVariables(3, Sense::kMaximize);
  lp.c = Row({1.0, -2.0, 0.5});
  lp.lower = Row({-1.0, -3.0, 2.0});
  lp.upper = Row({4.0, 5.0, 2.0});
  const auto sol = solve(lp);
  ASSERT_EQ(sol.status, Status::kOptimal);
  EXPECT_NEAR(sol.x(0), 4.0, 1e-12);
  EXPECT_NEAR(sol.x(1), -3.0, 1e-12);
  EXPECT_NEAR(sol.x(2), 2.0, 1e-12);
  EXPECT_NEAR(sol.objective, 11.0, 1e-12);
  EXPECT_TRUE(verify_certificate(lp, sol).ok);
}

TEST(Solve, UpperBoundedOnly) {
  auto lp = LinearProgram::WithVariables(1, Sense::kMaximize);
  lp.c = Row({2.0});
  lp.lower = Row({-kInf});
  lp.upper = Row({3.0});
  const auto sol = solve(lp);
  ASSERT_EQ(sol.status, Status::kOptimal);
  EXPECT_NEAR(sol.objective, 6.0, 1e-12);
}

TEST(Certificate, PerturbedSolutionFails) {
  const auto lp = BinomialHedge();
  auto sol = solve(lp);
  sol.x(0) -= 1e-3;
  const auto report = verify_certificate(lp, sol);
  EXPECT_FALSE(report.ok);
  EXPECT_NE(report.failed.find("primal_feasibility"), std::string::npos) << report.failed;
  EXPECT_GT(report.primal_residual, 1e-5);
}

TEST(Certificate, WrongDualFails) {
  const auto lp = BinomialHedge();
  auto sol = solve(lp);
  sol.y_ub(0) = 0.0;
  EXPECT_FALSE(verify_certificate(lp, sol).ok);
}

TEST(Certificate, RedundantEqualityRows) {
  auto lp = LinearProgram::WithVariables(3, Sense::kMinimize);
  lp.c = Row({1.0, 2.0, 3.0});
  lp.add_eq_row(Row({1.0, 1.0, 1.0}), 1.0);
  lp.add_eq_row(Row({1.0, 1.0, 1.0}), 1.0);
  lp.add_eq_row(Row({2.0, 2.0, 2.0}), 2.0);
  const auto sol = solve(lp);
  ASSERT_EQ(sol.status, Status::kOptimal);
  EXPECT_NEAR(sol.objective, 1.0, 1e-12);
  EXPECT_TRUE(verify_certificate(lp, sol).ok);
}

TEST(Certificate, NonOptimalStatusFails) {
  auto lp = LinearProgram::WithVariables(1, Sense::kMaximize);
  lp.c = Row({1.0});
  EXPECT_FALSE(verify_certificate(lp, solve(lp)).ok);
}

TEST(BruteForce, BinomialHedge) {
  const auto best = brute_force_vertices(BinomialHedge());
  ASSERT_EQ(best.size(), 1u);
  EXPECT_NEAR(best[0].x(0), -40.0, 1e-9);
  EXPECT_NEAR(best[0].x(1), 5.0 / 9.0, 1e-12);
  EXPECT_NEAR(best[0].objective, 140.0 / 9.0, 1e-9);
}

TEST(BruteForce, InfeasibleIsEmpty) {
  auto lp = LinearProgram::WithVariables(2, Sense::kMinimize);
  lp.add_ub_row(Row({1.0, 1.0}), -1.0);
  EXPECT_TRUE(brute_force_vertices(lp).empty());
  EXPECT_TRUE(enumerate_vertices(lp).empty());
}

TEST(BruteForce, DegenerateVertexDeduplicated) {
  // (1, 1) is tight on x <= 1, y <= 1 and x + y <= 2.
  auto lp = LinearProgram::WithVariables(2, Sense::kMaximize);
  lp.c = Row({1.0, 1.0});
  lp.add_ub_row(Row({1.0, 0.0}), 1.0);
  lp.add_ub_row(Row({0.0, 1.0}), 1.0);
  lp.add_ub_row(Row({1.0, 1.0}), 2.0);
  EXPECT_EQ(enumerate_vertices(lp).size(), 4u);
  const auto best = brute_force_vertices(lp);
  ASSERT_EQ(best.size(), 1u);
  EXPECT_NEAR(best[0].objective, 2.0, 1e-12);
}

TEST(BruteForce, TooLarge) {
  auto lp = LinearProgram::WithVariables(kMaxBruteForceVars + 1, Sense::kMinimize);
  try {
    enumerate_vertices(lp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
}

TEST(Validate, ShapeAndBounds) {
  auto lp = LinearProgram::WithVariables(2, Sense::kMinimize);
  EXPECT_THROW(lp.add_ub_row(Row({1.0}), 0.0), Error);
  lp.lower(0) = 3.0;
  lp.upper(0) = 1.0;
  EXPECT_THROW(solve(lp), Error);
  auto nan = LinearProgram::WithVariables(1, Sense::kMinimize);
  nan.c(0) = std::nan("");
  EXPECT_THROW(solve(nan), Error);
}

TEST(Dump, ListsNamesAndRows) {
  std::ostringstream out;
  dump(BinomialHedge(), out);
  const std::string text = out.str();
  EXPECT_NE(text.find("B"), std::string::npos);
  EXPECT_NE(text.find("D"), std::string::npos);
  EXPECT_NE(text.find("108"), std::string::npos);
}

// Random bounded programs against the vertex oracle, with independent
// certificate checks.
TEST(Properties, MatchesBruteForce) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Rng rng(seed);
    const int n = rng.uniform_int(1, 6);
    auto lp = LinearProgram::WithVariables(n, rng.bernoulli(0.5) ? Sense::kMinimize : Sense::kMaximize);
    Eigen::VectorXd x0(n);
    for (int j = 0; j < n; ++j) {
      lp.c(j) = rng.uniform(-5.0, 5.0);
      lp.lower(j) = rng.uniform(-5.0, 0.0);
      lp.upper(j) = rng.uniform(0.5, 5.0);
      x0(j) = rng.uniform(lp.lower(j), lp.upper(j));
    }
    for (int r = rng.uniform_int(0, n - 1); r > 0; --r) {
      Eigen::VectorXd row(n);
      for (int j = 0; j < n; ++j) row(j) = rng.uniform_int(-3, 3);
      lp.add_eq_row(row, row.dot(x0));
    }
    for (int r = rng.uniform_int(0, 5); r > 0; --r) {
      Eigen::VectorXd row(n);
      for (int j = 0; j < n; ++j) row(j) = rng.uniform_int(-3, 3);
      // Integer rows and zero slack produce degenerate vertices.
      lp.add_ub_row(row, row.dot(x0) + (rng.bernoulli(0.5) ? 0.0 : rng.uniform(0.0, 2.0)));
    }
    const auto sol = solve(lp);
    const auto oracle = brute_force_vertices(lp);
    ASSERT_FALSE(oracle.empty()) << "seed " << seed;
    ASSERT_EQ(sol.status, Status::kOptimal) << "seed " << seed;
    EXPECT_NEAR(sol.objective, oracle.front().objective, 1e-9) << "seed " << seed;
    const auto cert = verify_certificate(lp, sol);
    EXPECT_TRUE(cert.ok) << "seed " << seed << " " << cert.failed;
  }
}

}  // namespace
}  // namespace spreadhedge::lp
