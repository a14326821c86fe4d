//------------------------------------------------------------------------------
//
//   Copyright 2026 The robimp Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "test_util.hpp"

namespace robimp {
namespace {

using test::Q;

TEST(Ladder, GeometricWeights)
{
  auto const sc = binary_scenario();
  auto const p  = build_ladder(sc, 4, Q("0.05"), {});
  ASSERT_EQ(p.num_circumstances(), 5u);
  EXPECT_EQ(p.pi(0), Q("0.05"));
  EXPECT_EQ(p.pi(1), Q("0.0475"));
  EXPECT_EQ(p.pi(4), pow(Q("0.95"), 4));
  EXPECT_EQ(sum(p.pi()), 1);
  EXPECT_EQ(p.tail_mass(), pow(Q("0.95"), 4));
}

TEST(Ladder, RenormalizedTail)
{
  auto const sc  = binary_scenario();
  Rational   eta = Q("1/10");
  auto const p   = build_ladder(sc, 3, eta, {}, TailConvention::kRenormalize);
  Rational   z   = 1 - pow(1 - eta, 4);
  for (std::size_t t = 0; t < 4; ++t)
  {
    EXPECT_EQ(p.pi(t), eta * pow(1 - eta, static_cast<unsigned>(t)) / z);
  }
  EXPECT_EQ(sum(p.pi()), 1);
}

TEST(Ladder, DeepTailIsSmall)
{
  auto const p = build_ladder(binary_scenario(), 100, Q("0.01"), {});
  EXPECT_LT(p.tail_mass(), Q("0.37"));
}

TEST(Ladder, Partitions)
{
  auto const parts = ladder_partitions(4);
  EXPECT_EQ(parts[0], (std::vector<std::vector<std::size_t>>{{0}, {1, 2}, {3, 4}}));
  EXPECT_EQ(parts[1], (std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}, {4}}));
}

TEST(Ladder, RejectsBadParameters)
{
  auto const sc = binary_scenario();
  EXPECT_ERROR_CODE(build_ladder(sc, 1, Q("0.1"), {}), ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(build_ladder(sc, 4, Q("0"), {}), ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(build_ladder(sc, 4, Q("1"), {}), ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(build_general_ladder(sc, {Q("1/2"), Q("1/4"), Q("1/8")}, {}), ErrorCode::kInvalidArgument);
}

TEST(Ladder, EtaOfBiasedTypes)
{
  auto const sc = binary_scenario();
  auto const p  = build_ladder(sc, 6, Q("0.05"), {outcome_bias(sc, 0, 0, 0, Q("10")), outcome_bias(sc, 0, 1, 0, Q("10"))});
  EXPECT_EQ(eta_of(p), p.pi(0) + p.pi(1) + p.pi(2));
  EXPECT_FALSE(p.normal_at(0, 0));
  EXPECT_FALSE(p.normal_at(0, 1));
  EXPECT_TRUE(p.normal_at(0, 3));
  EXPECT_TRUE(p.normal_at(1, 0));
  EXPECT_EQ(p.num_payoff_tables(0), 2u);
  EXPECT_EQ(p.payoff(0, 0).u[1][0], 10);
}

TEST(Ladder, EtaOfSingleBias)
{
  auto const sc = binary_scenario();
  auto const p  = build_ladder(sc, 6, Q("0.05"), {outcome_bias(sc, 0, 0, 0, Q("10"))});
  EXPECT_EQ(eta_of(p), Q("0.05"));
  EXPECT_EQ(eta_of(Perturbation::trivial(sc)), 0);
}

TEST(Ladder, Posterior)
{
  auto const sc = binary_scenario();
  Rational   eta = Q("1/5");
  auto const p   = build_ladder(sc, 4, eta, {});
  // Agent 2 type {0,1}: posterior on agent 1 types {0} and {1,2}.
  auto const post = posterior({1, 0}, p);
  ASSERT_EQ(post.size(), 3u);
  EXPECT_EQ(post[0], 1 / (2 - eta));
  EXPECT_EQ(post[1], (1 - eta) / (2 - eta));
  EXPECT_EQ(post[2], 0);
  EXPECT_EQ(sum(post), 1);
}

TEST(Ladder, CostBound)
{
  auto const sc = binary_scenario();
  auto       b  = outcome_bias(sc, 1, 2, 1, Q("1"), Q("5"));
  auto const p  = build_ladder(sc, 4, Q("0.1"), {b});
  EXPECT_TRUE(is_c_bounded(p, Q("5")));
  EXPECT_FALSE(is_c_bounded(p, Q("4")));
  EXPECT_EQ(p.max_cost(), 5);
}

TEST(Perturbation, CreateValidatesPartitions)
{
  auto const sc = binary_scenario();
  std::array<std::vector<std::vector<std::size_t>>, kAgents> overlap{
      std::vector<std::vector<std::size_t>>{{0, 1}, {1}}, std::vector<std::vector<std::size_t>>{{0, 1}}};
  EXPECT_ERROR_CODE(Perturbation::create(sc, {Q("1/2"), Q("1/2")}, overlap, {}), ErrorCode::kInvalidArgument);
  std::array<std::vector<std::vector<std::size_t>>, kAgents> gap{
      std::vector<std::vector<std::size_t>>{{0}}, std::vector<std::vector<std::size_t>>{{0, 1}}};
  EXPECT_ERROR_CODE(Perturbation::create(sc, {Q("1/2"), Q("1/2")}, gap, {}), ErrorCode::kInvalidArgument);
}

TEST(Perturbation, SpecBuildsWithOverride)
{
  PerturbationSpec spec;
  spec.depth = 10;
  spec.eta   = Q("1/10");
  auto const p = spec.build(binary_scenario(), Q("1/4"));
  EXPECT_EQ(p.pi(0), Q("1/4"));
  spec.kind = PerturbationSpec::Kind::kCustom;
  spec.pi   = {Q("1/2"), Q("1/4"), Q("1/4")};
  EXPECT_EQ(spec.build(binary_scenario()).num_circumstances(), 3u);
}

}  // namespace
}  // namespace robimp
