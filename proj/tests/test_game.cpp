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

TEST(Strategies, StatusQuoSetBinary)
{
  auto const sc   = binary_scenario();
  auto const m    = build_status_quo(sc, Q("1"));
  auto const sig  = perfectly_revealing(sc.states().prior);
  auto const set  = restricted_strategy_set(StrategyVariant::kStatusQuo, m, sig, 0);
  EXPECT_EQ(set.enumerate(), (std::vector<PureStrategy>{{1, 1}, {1, 2}}));
}

TEST(Strategies, SignedSetBinary)
{
  auto const sc  = binary_scenario();
  auto const m   = build_augmented_status_quo(sc);
  auto const sig = perfectly_revealing(sc.states().prior);
  auto const set = restricted_strategy_set(StrategyVariant::kSigned, m, sig, 0);
  EXPECT_EQ(set.enumerate(), (std::vector<PureStrategy>{{-2, -2}, {-2, 1}, {-2, 2}, {1, -2}, {1, 1}, {1, 2}}));
}

TEST(Strategies, SignedSetThreeStatesMatchesEnumeration)
{
  auto const sc  = ladder_scenario({Q("1/2"), Q("3/10"), Q("1/5")});
  auto const m   = build_augmented_status_quo(sc);
  auto const sig = perfectly_revealing(sc.states().prior);
  auto const set = restricted_strategy_set(StrategyVariant::kSigned, m, sig, 0);
  // Brute force over all 5^3 strategies with the membership rule m^j in {-3,-2,1,j}.
  std::size_t count = 0;
  auto const  msgs  = m.messages(0);
  for (int a : msgs)
  {
    for (int b : msgs)
    {
      for (int c : msgs)
      {
        PureStrategy s{a, b, c};
        bool         member = true;
        for (int j = 1; j <= 3; ++j)
        {
          int const v = s[static_cast<std::size_t>(j - 1)];
          member      = member && (v <= 1 || v == j);
        }
        EXPECT_EQ(set.contains(s), member);
        count += member ? 1 : 0;
      }
    }
  }
  EXPECT_EQ(set.size(), count);
  EXPECT_EQ(set.enumerate().size(), count);
  EXPECT_EQ(count, 48u);
}

TEST(Strategies, Replacement)
{
  auto const sc  = binary_scenario();
  auto const sig = perfectly_revealing(sc.states().prior);
  EXPECT_EQ(canonical_replacement({2, 2}, StrategyVariant::kStatusQuo, sig, 0), (PureStrategy{1, 2}));
  EXPECT_EQ(canonical_replacement({2, 1}, StrategyVariant::kStatusQuo, sig, 0), (PureStrategy{1, 1}));
  EXPECT_ERROR_CODE(canonical_replacement({1, 2}, StrategyVariant::kStatusQuo, sig, 0), ErrorCode::kInvalidArgument);

  auto const sc3  = ladder_scenario({Q("1/2"), Q("3/10"), Q("1/5")});
  auto const sig3 = perfectly_revealing(sc3.states().prior);
  EXPECT_EQ(canonical_replacement({2, 2, 3}, StrategyVariant::kSigned, sig3, 0), (PureStrategy{-2, 2, 3}));
  EXPECT_EQ(canonical_replacement({2, 2, 2}, StrategyVariant::kSigned, sig3, 0), (PureStrategy{-2, -2, -2}));
  EXPECT_EQ(canonical_replacement({3, 1, 2}, StrategyVariant::kSigned, sig3, 0), (PureStrategy{-3, 1, -2}));
}

TEST(Signals, PerfectlyRevealingHasSizeZero)
{
  std::vector<Rational> q{Q("0.7"), Q("0.3")};
  EXPECT_EQ(size_of_signal_structure(perfectly_revealing(q), q), 0);
}

TEST(Signals, FlipNoiseSize)
{
  Rational const        f = Q("0.01");
  std::vector<Rational> q{Q("0.7"), Q("0.3")};
  // Each agent's signal flips independently. Conditional disagreement given
  // own signal j, and the misreading probability f.
  auto disagreement = [&](std::size_t j) -> Rational {
    Rational mass(0);
    Rational agree(0);
    for (std::size_t s = 0; s < 2; ++s)
    {
      Rational const p = s == j ? 1 - f : f;
      mass += q[s] * p;
      agree += q[s] * p * p;
    }
    return 1 - agree / mass;
  };
  Rational expected = std::max({disagreement(0), disagreement(1), f});
  EXPECT_EQ(size_of_signal_structure(symmetric_noise(q, f), q), expected);
  EXPECT_GT(expected, f);
}

TEST(Signals, RejectsBadMarginal)
{
  std::vector<Rational> q{Q("0.7"), Q("0.3")};
  auto                  sig = perfectly_revealing(q);
  sig.joint[0].p          = Q("0.6");
  sig.joint[1].p          = Q("0.4");
  EXPECT_ERROR_CODE(size_of_signal_structure(sig, q), ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(symmetric_noise(q, Q("1")), ErrorCode::kInvalidArgument);
}

TEST(Game, TruthfulAccountingStatusQuo)
{
  auto const sc = binary_scenario();
  auto const m  = build_status_quo(sc, Q("1"));
  Game const g(sc, m, Perturbation::trivial(sc));
  auto const truth = truthful_profile(g);
  EXPECT_EQ(g.expected_payoff(0, 0, {1, 2}, truth), Q("0.7") * 3 + Q("0.3") * 11 - 1);
  EXPECT_EQ(g.truthful_mass(truth), 1);

  // Opponent truthful with probability one half, otherwise always 1.
  MixedStrategy half{{{1, 2}, Q("1/2")}, {{1, 1}, Q("1/2")}};
  Profile       mixed = uniform_profile(g.perturbation(), pure({1, 2}), half);
  EXPECT_EQ(g.expected_payoff(0, 0, {1, 2}, mixed), Q("0.7") * 3 + Q("0.3") * Q("1/2") * 11 - 1);
  EXPECT_EQ(g.truthful_mass(mixed), Q("1/2"));
  EXPECT_EQ(g.outcome_distribution(mixed, 1), (Lottery{Q("1/2"), Q("1/2")}));
}

TEST(Game, ConstantDeviationAccountingAugmented)
{
  auto const sc = binary_scenario();
  auto const m  = build_augmented_status_quo(sc);
  auto const &s = *m.schedule();
  Game const g(sc, m, Perturbation::trivial(sc));
  auto const truth = truthful_profile(g);
  EXPECT_EQ(g.expected_payoff(0, 0, {2, 2}, truth), Q("0.3") * s.reward(2));
  EXPECT_EQ(g.expected_payoff(0, 0, {-2, -2}, truth), Q("0.7") * s.reward(0));
}

TEST(Game, ZeroMechanismPaysOnlyUtility)
{
  StateSpace   states{{"a", "b"}, {Q("2/3"), Q("1/3")}};
  OutcomeSpace outcomes{{"y", "z"}};
  PayoffMatrix u{{Q("4"), Q("0")}, {Q("1"), Q("0")}};
  auto const   sc = Scenario::create(states, outcomes, {pure_lottery(2, 0), pure_lottery(2, 1)},
                                     {AgentPayoff{u, Q("1/2")}, AgentPayoff{u, Q("1/2")}});
  std::vector<Lottery> g(4, pure_lottery(2, 0));
  std::vector<Rational> zero(4, Q("0"));
  Mechanism            m(MechanismKind::kTable, {std::vector<int>{1, 2}, std::vector<int>{1, 2}}, g, {zero, zero});
  Game const           game(sc, m, Perturbation::trivial(sc));
  auto const           p = uniform_profile(game.perturbation(), pure({1, 1}), pure({1, 1}));
  Rational const       eu = Q("2/3") * 4 + Q("1/3") * 1;
  EXPECT_EQ(game.expected_payoff(0, 0, {1, 2}, p), eu - Q("1/2"));
  EXPECT_EQ(game.expected_payoff(0, 0, {2, 2}, p), eu);
}

TEST(Game, TremblesStayWithinTwiceTau)
{
  auto const  sc  = binary_scenario();
  auto const  m   = build_status_quo(sc, Q("1"));
  Rational    tau = Q("1/10");
  TrembleSpec tremble;
  tremble.tau = tau;
  Game const g(sc, m, Perturbation::trivial(sc), perfectly_revealing(sc.states().prior), tremble);
  auto const truth = truthful_profile(g);
  for (std::size_t s = 0; s < 2; ++s)
  {
    // Exhaustive sum over realized message pairs.
    Lottery expected(2, Q("0"));
    int const intended = static_cast<int>(s) + 1;
    for (int r1 : {1, 2})
    {
      for (int r2 : {1, 2})
      {
        Rational const p1 = (r1 == intended ? 1 - tau : Q("0")) + tau / 2;
        Rational const p2 = (r2 == intended ? 1 - tau : Q("0")) + tau / 2;
        auto const    &y  = m.outcome(r1, r2);
        for (std::size_t k = 0; k < 2; ++k)
        {
          expected[k] += p1 * p2 * y[k];
        }
      }
    }
    auto const got = g.outcome_distribution(truth, s);
    EXPECT_EQ(got, expected);
    EXPECT_LE(tv_distance(got, sc.scf()[s]), 2 * tau);
  }
}

TEST(Game, PointMassNoise)
{
  auto const m = build_status_quo(binary_scenario(), Q("1"));
  EXPECT_EQ(point_mass_noise(m, 0, 2), (std::vector<Rational>{Q("0"), Q("1")}));
}

TEST(Game, RejectsOutcomeMismatch)
{
  auto const sc = binary_scenario();
  auto const m  = build_status_quo(ladder_scenario({Q("1/2"), Q("3/10"), Q("1/5")}), Q("1"));
  EXPECT_ERROR_CODE(Game(sc, m, Perturbation::trivial(sc)), ErrorCode::kDimensionMismatch);
}

}  // namespace
}  // namespace robimp
