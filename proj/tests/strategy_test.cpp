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

#include "spreadhedge/strategy.hpp"

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "spreadhedge/errors.hpp"

namespace spreadhedge {
namespace {

using testing::B1Tree;

// The optimal B1 hedge of the call struck at 100 under lambda = 0.1.
Strategy C1Hedge(const ScenarioTree& tree, Holdings initial) {
  Strategy s = Strategy::DoNothing(tree, initial);
  s.trades[0].buy = 5.0 / 9.0;
  s.trades[1].sell = 5.0 / 9.0;
  s.trades[2].sell = 5.0 / 9.0;
  return s;
}

TEST(SelfFinancing, DoNothing) {
  const auto tree = B1Tree();
  EXPECT_TRUE(is_self_financing(tree, 0.1, Strategy::DoNothing(tree)).ok);
}

TEST(SelfFinancing, UnderfundedPurchase) {
  const auto tree = B1Tree();
  Strategy s = Strategy::DoNothing(tree);
  s.trades[0].buy = 1.0;
  s.trades[0].consume = -1.0;  // 99 bonds paid for a share costing 100
  const auto report = is_self_financing(tree, 0.1, s);
  EXPECT_FALSE(report.ok);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].node, 0);
  EXPECT_DOUBLE_EQ(report.violations[0].residual, -1.0);
}

TEST(SelfFinancing, C1Hedge) {
  const auto tree = B1Tree();
  const auto s = C1Hedge(tree, {140.0 / 9.0, 0.0});
  EXPECT_TRUE(is_self_financing(tree, 0.1, s).ok);
  const auto path = evaluate(tree, 0.1, s);
  EXPECT_NEAR(path.post_trade[0].bonds, -40.0, 1e-12);
  EXPECT_NEAR(path.post_trade[1].bonds, 20.0, 1e-12);
  EXPECT_NEAR(path.post_trade[2].bonds, 0.0, 1e-12);
  EXPECT_NEAR(path.post_trade[1].shares, 0.0, 1e-15);
}

TEST(SelfFinancing, BadLambda) {
  const auto tree = B1Tree();
  EXPECT_THROW(is_self_financing(tree, 1.0, Strategy::DoNothing(tree)), Error);
  EXPECT_THROW(is_self_financing(tree, -0.1, Strategy::DoNothing(tree)), Error);
}

TEST(SelfFinancing, ShapeMismatch) {
  const auto tree = B1Tree();
  Strategy s = Strategy::DoNothing(tree);
  s.trades.pop_back();
  try {
    is_self_financing(tree, 0.1, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kShapeMismatch);
  }
}

TEST(LiquidationValue, Examples) {
  EXPECT_DOUBLE_EQ(liquidation_value(0.1, {10.0, 2.0}, 100.0), 190.0);
  EXPECT_DOUBLE_EQ(liquidation_value(0.1, {10.0, -1.0}, 100.0), -90.0);
  EXPECT_DOUBLE_EQ(liquidation_value(0.7, {10.0, -1.0}, 100.0), -90.0);
  const auto tree = B1Tree();
  const auto idle = Strategy::DoNothing(tree);
  for (NodeId id = 0; id < 3; ++id) EXPECT_DOUBLE_EQ(liquidation_value(tree, 0.1, idle, id), 0.0);
}

TEST(Admissibility, DoNothingAlwaysAdmissible) {
  const auto tree = B1Tree();
  const auto idle = Strategy::DoNothing(tree);
  for (double m : {0.0, 1.0, 40.0}) {
    EXPECT_TRUE(check_admissibility(tree, 0.1, idle, {AdmissibilityKind::kNumeraireBased, m}).ok);
    EXPECT_TRUE(check_admissibility(tree, 0.1, idle, {AdmissibilityKind::kNumeraireFree, m}).ok);
  }
}

TEST(Admissibility, C1HedgeThreshold) {
  const auto tree = B1Tree();
  // From (0, 0): post-trade values -50/9 at the root, 40/9 up, -140/9 down.
  const auto s = C1Hedge(tree, {0.0, 0.0});
  const double m = 140.0 / 9.0;
  EXPECT_NEAR(minimal_admissibility_bound(tree, 0.1, s, AdmissibilityKind::kNumeraireBased), m,
              1e-12);
  EXPECT_TRUE(check_admissibility(tree, 0.1, s, {AdmissibilityKind::kNumeraireBased, m}).ok);
  const auto fail = check_admissibility(tree, 0.1, s, {AdmissibilityKind::kNumeraireBased, 15.5});
  EXPECT_FALSE(fail.ok);
  EXPECT_EQ(fail.witness, std::optional<NodeId>(2));
  EXPECT_NEAR(fail.value, -m, 1e-12);
  // Funded with the price itself the hedge never goes below zero.
  const auto funded = C1Hedge(tree, {140.0 / 9.0, 0.0});
  EXPECT_NEAR(minimal_admissibility_bound(tree, 0.1, funded, AdmissibilityKind::kNumeraireBased),
              0.0, 1e-12);
}

TEST(Admissibility, NumeraireBasedImpliesNumeraireFree) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed);
    const auto tree = generate_random_tree(seed, 3, 3);
    const auto s = testing::RandomSelfFinancing(tree, rng, rng.bernoulli(0.5));
    const double m = rng.uniform(0.0, 200.0);
    if (check_admissibility(tree, 0.2, s, {AdmissibilityKind::kNumeraireBased, m}).ok) {
      EXPECT_TRUE(check_admissibility(tree, 0.2, s, {AdmissibilityKind::kNumeraireFree, m}).ok);
    }
  }
}

TEST(AskStrategy, Examples) {
  const auto tree = B1Tree();
  const auto root = make_ask_strategy(tree, make_antichain(tree, {0}), {1.0, 0.0, 0.0});
  const auto path = evaluate(tree, 0.1, root);
  for (NodeId leaf : {1, 2}) {
    EXPECT_DOUBLE_EQ(path.post_trade[leaf].bonds, -100.0);
    EXPECT_DOUBLE_EQ(path.post_trade[leaf].shares, 1.0);
  }
  const auto none = make_ask_strategy(tree, Antichain{}, {1.0, 1.0, 1.0});
  for (const Trade& t : none.trades) {
    EXPECT_EQ(t.buy, 0.0);
    EXPECT_EQ(t.sell, 0.0);
  }
  const auto up = make_ask_strategy(tree, make_antichain(tree, {1}), {0.0, 2.0, 0.0});
  const auto up_path = evaluate(tree, 0.1, up);
  EXPECT_DOUBLE_EQ(up_path.post_trade[1].bonds, -240.0);
  EXPECT_DOUBLE_EQ(up_path.post_trade[1].shares, 2.0);
  EXPECT_DOUBLE_EQ(up_path.post_trade[2].bonds, 0.0);
  EXPECT_DOUBLE_EQ(up_path.post_trade[2].shares, 0.0);
}

TEST(BidStrategy, Examples) {
  const auto tree = B1Tree();
  const auto stop = make_antichain(tree, {0});
  const auto path = evaluate(tree, 0.1, make_bid_strategy(tree, 0.1, stop, {1.0, 0.0, 0.0}));
  const auto frictionless = evaluate(tree, 0.0, make_bid_strategy(tree, 0.0, stop, {1.0, 0.0, 0.0}));
  for (NodeId leaf : {1, 2}) {
    EXPECT_DOUBLE_EQ(path.post_trade[leaf].bonds, 90.0);
    EXPECT_DOUBLE_EQ(path.post_trade[leaf].shares, -1.0);
    EXPECT_DOUBLE_EQ(frictionless.post_trade[leaf].bonds, 100.0);
  }
  const auto none = make_bid_strategy(tree, 0.1, Antichain{}, {1.0, 1.0, 1.0});
  EXPECT_TRUE(is_self_financing(tree, 0.1, none).ok);
  for (const Trade& t : none.trades) EXPECT_EQ(t.sell, 0.0);
}

TEST(LowerFriction, IdentityAtSameLambda) {
  const auto tree = generate_random_tree(5, 3, 3);
  Rng rng(5);
  const auto s = testing::RandomSelfFinancing(tree, rng, false);
  const auto t = lower_friction_transform(tree, s, 0.2, 0.2);
  const auto a = evaluate(tree, 0.2, s);
  const auto b = evaluate(tree, 0.2, t);
  for (std::size_t i = 0; i < tree.node_count(); ++i) {
    EXPECT_NEAR(a.post_trade[i].bonds, b.post_trade[i].bonds, 1e-12);
    EXPECT_NEAR(a.post_trade[i].shares, b.post_trade[i].shares, 1e-12);
  }
}

TEST(LowerFriction, NoSalesUnchanged) {
  const auto tree = B1Tree();
  const auto s = make_ask_strategy(tree, make_antichain(tree, {0}), {1.0, 0.0, 0.0});
  const auto t = lower_friction_transform(tree, s, 0.1, 0.05);
  const auto a = evaluate(tree, 0.1, s);
  const auto b = evaluate(tree, 0.05, t);
  for (NodeId id = 0; id < 3; ++id) {
    EXPECT_NEAR(a.post_trade[id].bonds, b.post_trade[id].bonds, 1e-12);
    EXPECT_NEAR(a.post_trade[id].shares, b.post_trade[id].shares, 1e-12);
  }
}

TEST(LowerFriction, BidInflowReachesLowerBid) {
  const auto tree = B1Tree();
  const auto s = make_bid_strategy(tree, 0.1, make_antichain(tree, {0}), {1.0, 0.0, 0.0});
  const auto t = lower_friction_transform(tree, s, 0.1, 0.05);
  const auto path = evaluate(tree, 0.05, t);
  EXPECT_TRUE(is_self_financing(tree, 0.05, t).ok);
  for (NodeId leaf : {1, 2}) EXPECT_NEAR(path.post_trade[leaf].bonds, 95.0, 1e-12);
}

TEST(LowerFriction, RandomStrategiesStaySelfFinancing) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Rng rng(seed);
    const auto tree = generate_random_tree(seed, 3, 3);
    const double lambda = rng.uniform(0.05, 0.5);
    const double lambda_prime = lambda * rng.uniform(0.0, 1.0);
    const auto s = testing::RandomSelfFinancing(tree, rng, rng.bernoulli(0.5));
    const auto t = lower_friction_transform(tree, s, lambda, lambda_prime);
    EXPECT_TRUE(is_self_financing(tree, lambda_prime, t).ok);
    const auto a = evaluate(tree, lambda, s);
    const auto b = evaluate(tree, lambda_prime, t);
    for (std::size_t i = 0; i < tree.node_count(); ++i) {
      EXPECT_NEAR(a.post_trade[i].shares, b.post_trade[i].shares, 1e-12);
      EXPECT_GE(b.post_trade[i].bonds, a.post_trade[i].bonds - 1e-9);
    }
  }
}

TEST(TotalVariation, Examples) {
  const auto tree = B1Tree();
  const auto idle = total_variation(tree, 0.1, Strategy::DoNothing(tree), 1);
  EXPECT_EQ(idle.bonds, 0.0);
  EXPECT_EQ(idle.shares, 0.0);
  const auto ask = make_ask_strategy(tree, make_antichain(tree, {0}), {1.0, 0.0, 0.0});
  const auto v = total_variation(tree, 0.1, ask, 1);
  EXPECT_DOUBLE_EQ(v.bonds, 100.0);
  EXPECT_DOUBLE_EQ(v.shares, 1.0);
  const auto hedge = total_variation(tree, 0.1, C1Hedge(tree, {140.0 / 9.0, 0.0}), 1);
  EXPECT_NEAR(hedge.bonds, 500.0 / 9.0 + 60.0, 1e-12);
  EXPECT_NEAR(hedge.shares, 10.0 / 9.0, 1e-12);
}

TEST(Reprice, MovesSaleProceedsIntoConsumption) {
  const auto tree = B1Tree();
  const auto s = C1Hedge(tree, {140.0 / 9.0, 0.0});
  const auto r = reprice(tree, s, 0.1, 0.05);
  const auto a = evaluate(tree, 0.1, s);
  const auto b = evaluate(tree, 0.05, r);
  for (NodeId id = 0; id < 3; ++id) {
    EXPECT_NEAR(a.post_trade[id].bonds, b.post_trade[id].bonds, 1e-12);
  }
  EXPECT_TRUE(is_self_financing(tree, 0.05, r).ok);
}

}  // namespace
}  // namespace spreadhedge
