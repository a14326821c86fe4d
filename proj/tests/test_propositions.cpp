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

std::vector<Lottery> identity_scf(std::size_t n)
{
  std::vector<Lottery> out;
  for (std::size_t i = 0; i < n; ++i)
  {
    out.push_back(pure_lottery(n, i));
  }
  return out;
}

PayoffMatrix diagonal(std::size_t n)
{
  PayoffMatrix u(n, std::vector<Rational>(n, Q("0")));
  for (std::size_t i = 0; i < n; ++i)
  {
    u[i][i] = 1;
  }
  return u;
}

TEST(Separation, BinaryStatusQuo)
{
  auto const     sc = binary_scenario(Q("1/2"));
  RewardSchedule s;
  s.ascending = {Q("1"), Q("8")};
  auto const m  = build_status_quo(sc, Q("1/2"), s);
  auto const sf = separating_functional(sc.scf(), m);
  EXPECT_EQ(sf.state, 0u);
  EXPECT_EQ(sf.v, (std::vector<Rational>{Q("0"), Q("1")}));
  EXPECT_EQ(sf.margin, 1);
  EXPECT_EQ(sf.bound, 8);
  EXPECT_EQ(sf.scale, 33);
  EXPECT_GT(sf.margin * sf.scale, 4 * sf.bound);
}

TEST(Separation, MixedOutcomes)
{
  // f(theta^1) is a vertex; the other two lotteries span an edge.
  std::vector<Lottery> scf{pure_lottery(3, 0), {Q("0"), Q("1/2"), Q("1/2")}, pure_lottery(3, 2)};
  auto const           sc = ladder_scenario({Q("1/2"), Q("3/10"), Q("1/5")});
  auto const           m  = build_status_quo(sc, Q("1"));
  auto const           sf = separating_functional(scf, m);
  Rational const       at = expected_value(sf.v, scf[sf.state]);
  EXPECT_EQ(at, 0);
  for (std::size_t s = 0; s < scf.size(); ++s)
  {
    if (scf[s] != scf[sf.state])
    {
      EXPECT_GE(expected_value(sf.v, scf[s]) - at, sf.margin);
    }
  }
  EXPECT_GT(sf.margin, 0);
  EXPECT_GT(sf.margin * sf.scale, 4 * sf.bound);
}

TEST(Separation, ConstantScfIsRejected)
{
  auto const m = build_status_quo(binary_scenario(), Q("1"));
  EXPECT_ERROR_CODE(separating_functional({pure_lottery(2, 0), pure_lottery(2, 0)}, m), ErrorCode::kPrecondition);
}

TEST(CyclicalMonotonicity, DiagonalHolds)
{
  auto const u   = diagonal(3);
  auto const scf = identity_scf(3);
  EXPECT_TRUE(cyclical_monotonicity_by_permutations(u, scf).holds);
  EXPECT_TRUE(cyclical_monotonicity_by_cycles(u, scf).holds);
  EXPECT_TRUE(check_strict_cyclical_monotonicity(u, scf).holds);
}

TEST(CyclicalMonotonicity, AntiDiagonalFails)
{
  PayoffMatrix u{{Q("0"), Q("1")}, {Q("1"), Q("0")}};
  auto const   scf = identity_scf(2);
  auto const   p   = cyclical_monotonicity_by_permutations(u, scf);
  EXPECT_FALSE(p.holds);
  EXPECT_FALSE(p.witness.empty());
  EXPECT_FALSE(cyclical_monotonicity_by_cycles(u, scf).holds);
  EXPECT_ERROR_CODE(synthesize_transfers(u, scf), ErrorCode::kPrecondition);
}

TEST(CyclicalMonotonicity, ZeroGainCycleViolatesStrictness)
{
  // State-independent payoffs: every cycle sum is zero.
  PayoffMatrix u{{Q("1"), Q("2")}, {Q("1"), Q("2")}};
  auto const   scf = identity_scf(2);
  EXPECT_FALSE(cyclical_monotonicity_by_permutations(u, scf).holds);
  auto const by_cycles = cyclical_monotonicity_by_cycles(u, scf);
  EXPECT_FALSE(by_cycles.holds);
  EXPECT_EQ(by_cycles.witness.size(), 2u);
  EXPECT_FALSE(check_strict_cyclical_monotonicity(u, scf).holds);
}

TEST(CyclicalMonotonicity, ZeroGainCycleWithinClassIsAllowed)
{
  // States 1 and 2 share an outcome, so swapping them changes nothing.
  std::vector<Lottery> scf{pure_lottery(2, 0), pure_lottery(2, 0), pure_lottery(2, 1)};
  PayoffMatrix         u{{Q("1"), Q("0")}, {Q("1"), Q("0")}, {Q("0"), Q("1")}};
  EXPECT_TRUE(cyclical_monotonicity_by_permutations(u, scf).holds);
  EXPECT_TRUE(cyclical_monotonicity_by_cycles(u, scf).holds);
}

TEST(CyclicalMonotonicity, MethodsAgreeOnRandomInstances)
{
  SplitMix64 rng(99);
  for (int trial = 0; trial < 100; ++trial)
  {
    std::size_t const n = static_cast<std::size_t>(rng.uniform(2, 4));
    PayoffMatrix      u(n, std::vector<Rational>(n));
    for (auto &row : u)
    {
      for (auto &x : row)
      {
        x = Rational(rng.uniform(-3, 3));
      }
    }
    auto const scf = identity_scf(n);
    EXPECT_EQ(cyclical_monotonicity_by_permutations(u, scf).holds,
              cyclical_monotonicity_by_cycles(u, scf).holds);
  }
}

TEST(Transfers, ZeroWorksForDiagonal)
{
  auto const u   = diagonal(3);
  auto const scf = identity_scf(3);
  auto const chk = check_transfers(u, scf, {Q("0"), Q("0"), Q("0")});
  EXPECT_TRUE(chk.strictly_implementable);
  EXPECT_TRUE(chk.equal_on_classes);
  EXPECT_EQ(chk.min_margin, 1);
}

TEST(Transfers, SynthesizedPassBothConditions)
{
  PayoffMatrix u{{Q("1"), Q("3"), Q("0")}, {Q("0"), Q("3"), Q("1")}, {Q("0"), Q("0"), Q("1")}};
  auto const   scf = identity_scf(3);
  ASSERT_TRUE(check_strict_cyclical_monotonicity(u, scf).holds);
  auto const t = synthesize_transfers(u, scf);
  // Direct oracle over all ordered pairs.
  for (std::size_t a = 0; a < 3; ++a)
  {
    for (std::size_t b = 0; b < 3; ++b)
    {
      if (a != b)
      {
        EXPECT_GT(u[a][a] + t[a], u[a][b] + t[b]);
      }
    }
  }
  EXPECT_TRUE(check_transfers(u, scf, t).strictly_implementable);
}

TEST(Transfers, EqualOnPreimageClasses)
{
  std::vector<Lottery> scf{pure_lottery(2, 0), pure_lottery(2, 0), pure_lottery(2, 1)};
  PayoffMatrix         u{{Q("2"), Q("0")}, {Q("2"), Q("0")}, {Q("0"), Q("1")}};
  auto const           t = synthesize_transfers(u, scf);
  EXPECT_EQ(t[0], t[1]);
  auto const chk = check_transfers(u, scf, t);
  EXPECT_TRUE(chk.equal_on_classes);
  EXPECT_TRUE(chk.strictly_implementable);
}

TEST(OneRespondent, FullImplementationForDiagonal)
{
  std::size_t const n   = 3;
  auto              sc  = ladder_scenario({Q("1/2"), Q("3/10"), Q("1/5")}, Q("1/100"));
  sc                    = sc.with_utilities(diagonal(n), PayoffMatrix(n, std::vector<Rational>(n, Q("0"))));
  auto const        m   = one_respondent_mechanism(sc, 0, {Q("0"), Q("0"), Q("0")});
  EXPECT_EQ(m.num_messages(0), 3u);
  EXPECT_EQ(m.num_messages(1), 1u);
  Game const g(sc, m, Perturbation::trivial(sc));
  auto const eq = pure_equilibria(g, strategy_sets(g, StrategyVariant::kFull));
  ASSERT_FALSE(eq.empty());
  for (auto const &p : eq)
  {
    for (std::size_t s = 0; s < n; ++s)
    {
      EXPECT_EQ(g.outcome_distribution(p, s), sc.scf()[s]);
    }
  }
}

TEST(PayoffRange, SpansBothAgents)
{
  auto sc = binary_scenario();
  sc      = sc.with_utilities({{Q("0"), Q("2")}, {Q("1"), Q("0")}}, {{Q("-1"), Q("0")}, {Q("0"), Q("0")}});
  EXPECT_GE(payoff_range(sc), 2);
}

}  // namespace
}  // namespace robimp
