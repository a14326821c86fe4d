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

// A state-independent bimatrix game embedded as a two-state mechanism with
// a single outcome, where transfers carry the payoffs.
Game bimatrix(RationalMatrix const &A, RationalMatrix const &B)
{
  StateSpace   states{{"a", "b"}, {Q("1/2"), Q("1/2")}};
  OutcomeSpace outcomes{{"y"}};
  PayoffMatrix u(2, std::vector<Rational>(1, Q("0")));
  Lottery      one{Q("1")};
  auto const   sc = Scenario::create(states, outcomes, {one, one}, {AgentPayoff{u, Q("1")}, AgentPayoff{u, Q("1")}});
  std::array<std::vector<Rational>, kAgents> t;
  for (std::size_t i = 0; i < 2; ++i)
  {
    for (std::size_t j = 0; j < 2; ++j)
    {
      t[0].push_back(A[i][j]);
      t[1].push_back(B[i][j]);
    }
  }
  Mechanism m(MechanismKind::kTable, {std::vector<int>{1, 2}, std::vector<int>{1, 2}},
              std::vector<Lottery>(4, one), t);
  return Game(sc, m, Perturbation::trivial(sc));
}

TEST(Gamma, StatusQuoBinaryMatchesHandComputation)
{
  auto const sc = binary_scenario();
  auto const m  = build_status_quo(sc, Q("1"));
  auto const &R = m.schedule()->ascending;
  auto const cert = gamma_dominance_threshold(m, sc, StrategyVariant::kStatusQuo, Q("1"));
  // Only deviation is (1,1): truth gains q2 R^2 - c against truth and
  // loses q2 R^1 + c against an opponent who always reports 1.
  Rational const at_truth = Q("0.3") * R[1] - 1;
  Rational const worst    = -Q("0.3") * R[0] - 1;
  EXPECT_EQ(cert.gamma, -worst / (at_truth - worst));
  EXPECT_EQ(cert.gamma, Q("19/42"));
  EXPECT_TRUE(cert.below_half());
  EXPECT_GT(cert.slack(Q("1/2")), 0);
  EXPECT_EQ(cert.slack(cert.gamma), 0);
}

TEST(Gamma, BelowHalfForAllBuilders)
{
  auto const sc3 = ladder_scenario({Q("1/2"), Q("3/10"), Q("1/5")});
  EXPECT_TRUE(gamma_dominance_threshold(build_status_quo(sc3, Q("1")), sc3, StrategyVariant::kStatusQuo, Q("1"))
                  .below_half());
  EXPECT_TRUE(gamma_dominance_threshold(build_augmented_status_quo(sc3), sc3, StrategyVariant::kSigned, Q("1"))
                  .below_half());
  EXPECT_TRUE(gamma_dominance_threshold(build_modified_status_quo(sc3), sc3, StrategyVariant::kSigned, Q("1"))
                  .below_half());
}

TEST(Gamma, RequiresUnperturbedGame)
{
  auto const sc = binary_scenario();
  Game const g(sc, build_status_quo(sc, Q("1")), build_ladder(sc, 4, Q("1/10"), {}));
  EXPECT_ERROR_CODE(gamma_dominance_threshold(g, strategy_sets(g, StrategyVariant::kStatusQuo)),
                    ErrorCode::kPrecondition);
}

TEST(Equilibrium, TruthfulStatusQuoHasZeroResidual)
{
  auto const sc = binary_scenario();
  Game const g(sc, build_status_quo(sc, Q("1")), Perturbation::trivial(sc));
  auto const rep = verify_equilibrium(g, truthful_profile(g), strategy_sets(g, StrategyVariant::kFull));
  EXPECT_TRUE(rep.equilibrium());
  EXPECT_EQ(rep.max_tv, 0);
  EXPECT_EQ(rep.truthful_mass, 1);
}

TEST(Equilibrium, ResidualOfKnownDeviation)
{
  // Row 2 beats row 1 by exactly 1 whatever the column.
  auto const g   = bimatrix({{Q("0"), Q("0")}, {Q("1"), Q("1")}}, {{Q("0"), Q("0")}, {Q("0"), Q("0")}});
  auto const p   = uniform_profile(g.perturbation(), pure({1, 1}), pure({1, 1}));
  auto const rep = verify_equilibrium(g, p, strategy_sets(g, StrategyVariant::kFull));
  EXPECT_EQ(rep.max_residual, 1);
  EXPECT_FALSE(rep.equilibrium());
  EXPECT_TRUE(rep.equilibrium(Q("1")));
}

TEST(Equilibrium, CyclingGameIsFlagged)
{
  // Matching pennies: agent 1 wants to match, agent 2 to mismatch.
  auto const g    = bimatrix({{Q("1"), Q("0")}, {Q("0"), Q("1")}}, {{Q("0"), Q("1")}, {Q("1"), Q("0")}});
  auto const sets = strategy_sets(g, StrategyVariant::kFull);
  auto const r    = iterate_best_response(g, uniform_profile(g.perturbation(), pure({1, 1}), pure({1, 1})), sets);
  EXPECT_FALSE(r.converged);
  EXPECT_TRUE(r.cycled);
  EXPECT_TRUE(pure_equilibria(g, sets).empty());
}

TEST(Equilibrium, BestResponseIterationConverges)
{
  auto const g    = bimatrix({{Q("3"), Q("1")}, {Q("2"), Q("0")}}, {{Q("0"), Q("2")}, {Q("1"), Q("0")}});
  auto const sets = strategy_sets(g, StrategyVariant::kFull);
  auto const r    = iterate_best_response(g, uniform_profile(g.perturbation(), pure({2, 2}), pure({1, 1})), sets);
  ASSERT_TRUE(r.converged);
  EXPECT_FALSE(r.fallback);
  EXPECT_EQ(r.profile[0][0], pure({1, 1}));
  EXPECT_EQ(r.profile[1][0], pure({2, 2}));
}

TEST(Dominance, SolvableBimatrix)
{
  auto const g   = bimatrix({{Q("3"), Q("1")}, {Q("2"), Q("0")}}, {{Q("0"), Q("2")}, {Q("1"), Q("0")}});
  auto const res = iterated_dominance(g, strategy_sets(g, StrategyVariant::kFull));
  EXPECT_EQ(res.surviving[0][0], (std::vector<PureStrategy>{{1, 1}}));
  EXPECT_EQ(res.surviving[1][0], (std::vector<PureStrategy>{{2, 2}}));
}

TEST(Dominance, MixtureDominance)
{
  // Row 3 is dominated only by the even mixture of rows 1 and 2.
  StateSpace   states{{"a", "b"}, {Q("1/2"), Q("1/2")}};
  OutcomeSpace outcomes{{"y"}};
  PayoffMatrix u(2, std::vector<Rational>(1, Q("0")));
  Lottery      one{Q("1")};
  auto const   sc = Scenario::create(states, outcomes, {one, one}, {AgentPayoff{u, Q("100")}, AgentPayoff{u, Q("100")}});
  RationalMatrix A{{Q("4"), Q("0")}, {Q("0"), Q("4")}, {Q("1"), Q("1")}};
  std::array<std::vector<Rational>, kAgents> t;
  for (std::size_t i = 0; i < 3; ++i)
  {
    for (std::size_t j = 0; j < 2; ++j)
    {
      t[0].push_back(A[i][j]);
      t[1].push_back(Q("0"));
    }
  }
  Mechanism  m(MechanismKind::kTable, {std::vector<int>{1, 2, 3}, std::vector<int>{1, 2}},
               std::vector<Lottery>(6, one), t);
  Game const g(sc, m, Perturbation::trivial(sc));
  StrategySets sets{StrategySet({{1, 2, 3}, {1, 2, 3}}), StrategySet({{1, 2}, {1, 2}})};
  // Restrict to constant strategies by making learning prohibitively costly.
  auto const with    = iterated_dominance(g, sets);
  auto const without = iterated_dominance(g, sets, DominanceOptions{false, 16});
  auto has = [](std::vector<PureStrategy> const &v, PureStrategy const &s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  EXPECT_FALSE(has(with.surviving[0][0], {3, 3}));
  EXPECT_TRUE(has(without.surviving[0][0], {3, 3}));
}

TEST(Nash, MatchingPennies)
{
  auto const ne = support_enumeration_nash({{Q("1"), Q("-1")}, {Q("-1"), Q("1")}},
                                           {{Q("-1"), Q("1")}, {Q("1"), Q("-1")}});
  EXPECT_EQ(ne.row, (std::vector<Rational>{Q("1/2"), Q("1/2")}));
  EXPECT_EQ(ne.col, (std::vector<Rational>{Q("1/2"), Q("1/2")}));
  EXPECT_EQ(ne.row_value, 0);
}

TEST(Nash, AsymmetricMixed)
{
  // Battle of the sexes: mixed equilibrium (2/3, 1/3) and (1/3, 2/3).
  RationalMatrix A{{Q("2"), Q("0")}, {Q("0"), Q("1")}};
  RationalMatrix B{{Q("1"), Q("0")}, {Q("0"), Q("2")}};
  auto const     ne = support_enumeration_nash(A, B);
  // Any returned profile must be an equilibrium; check best-response conditions.
  for (std::size_t i = 0; i < 2; ++i)
  {
    Rational v = ne.col[0] * A[i][0] + ne.col[1] * A[i][1];
    EXPECT_LE(v, ne.row_value);
    Rational w = ne.row[0] * B[0][i] + ne.row[1] * B[1][i];
    EXPECT_LE(w, ne.col_value);
  }
}

TEST(Linear, UniqueAndSingular)
{
  auto const x = solve_linear_unique({{Q("2"), Q("1"), Q("5")}, {Q("1"), Q("-1"), Q("1")}});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(*x, (std::vector<Rational>{Q("2"), Q("1")}));
  EXPECT_FALSE(solve_linear_unique({{Q("1"), Q("1"), Q("1")}, {Q("2"), Q("2"), Q("2")}}).has_value());
}

TEST(Grid, SimplexGridCounts)
{
  // Compositions of 4 into 3 parts: C(6,2) = 15.
  auto const g = simplex_grid(3, Q("1/4"));
  EXPECT_EQ(g.size(), 15u);
  for (auto const &p : g)
  {
    EXPECT_EQ(sum(p), 1);
  }
}

}  // namespace
}  // namespace robimp
