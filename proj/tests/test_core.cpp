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

TEST(Rational, ParsesFractionsAndDecimals)
{
  EXPECT_EQ(Q("7/10"), Rational(7, 10));
  EXPECT_EQ(Q("0.3"), Rational(3, 10));
  EXPECT_EQ(Q("-2"), Rational(-2));
  EXPECT_EQ(Q(" 4/8 "), Rational(1, 2));
  EXPECT_EQ(to_string(Q("6/4")), "3/2");
}

TEST(Rational, RejectsMalformed)
{
  EXPECT_ERROR_CODE(parse_rational("1/0"), ErrorCode::kParse);
  EXPECT_ERROR_CODE(parse_rational("abc"), ErrorCode::kParse);
  EXPECT_ERROR_CODE(parse_rational(""), ErrorCode::kParse);
}

TEST(Rational, SplitMixIsDeterministic)
{
  SplitMix64 a(42);
  SplitMix64 b(42);
  for (int i = 0; i < 100; ++i)
  {
    EXPECT_EQ(a.next(), b.next());
  }
  SplitMix64 c(7);
  for (int i = 0; i < 1000; ++i)
  {
    auto v = c.uniform(3, 5);
    EXPECT_GE(v, 3);
    EXPECT_LE(v, 5);
  }
}

TEST(TotalVariation, Cases)
{
  Lottery const p{Q("1/2"), Q("1/2")};
  EXPECT_EQ(tv_distance(p, p), 0);
  EXPECT_EQ(tv_distance(pure_lottery(2, 0), pure_lottery(2, 1)), 1);
  EXPECT_EQ(tv_distance({Q("0.7"), Q("0.3")}, p), Q("1/5"));
}

TEST(Genericity, Cases)
{
  std::vector<Rational> q1{Q("0.7"), Q("0.3")};
  auto const            g1 = is_generic(q1);
  EXPECT_TRUE(g1.generic);
  EXPECT_EQ(g1.argmax, 0u);
  std::vector<Rational> q2{Q("0.4"), Q("0.4"), Q("0.2")};
  EXPECT_FALSE(is_generic(q2).generic);
}

TEST(NonConstant, Cases)
{
  std::vector<Lottery> constant{pure_lottery(2, 0), pure_lottery(2, 0)};
  EXPECT_FALSE(is_nonconstant(constant));
  std::vector<Lottery> same_mix{{Q("1/2"), Q("1/2")}, {Q("1/2"), Q("1/2")}};
  EXPECT_FALSE(is_nonconstant(same_mix));
  std::vector<Lottery> varied{pure_lottery(2, 0), pure_lottery(2, 1)};
  EXPECT_TRUE(is_nonconstant(varied));
}

TEST(Scenario, ReindexesStatesByPrior)
{
  StateSpace   states{{"low", "high"}, {Q("1/4"), Q("3/4")}};
  OutcomeSpace outcomes{{"a", "b"}};
  PayoffMatrix u{{Q("1"), Q("2")}, {Q("3"), Q("4")}};
  auto const   sc = Scenario::create(states, outcomes, {pure_lottery(2, 0), pure_lottery(2, 1)},
                                     {AgentPayoff{u, Q("1")}, AgentPayoff{u, Q("2")}});
  EXPECT_EQ(sc.states().labels[0], "high");
  EXPECT_EQ(sc.prior(0), Q("3/4"));
  EXPECT_EQ(sc.scf()[0], pure_lottery(2, 1));
  EXPECT_EQ(sc.payoff(0).u[0], (std::vector<Rational>{Q("3"), Q("4")}));
  EXPECT_EQ(sc.input_index(0), 1u);
  EXPECT_EQ(sc.max_cost(), 2);
  EXPECT_TRUE(sc.generic());
}

TEST(Scenario, TiesKeepInputOrderAndAreFlagged)
{
  StateSpace   states{{"a", "b", "c"}, {Q("1/5"), Q("2/5"), Q("2/5")}};
  OutcomeSpace outcomes{{"y"}};
  PayoffMatrix u(3, std::vector<Rational>(1, Q("0")));
  Lottery      one{Q("1")};
  auto const   sc = Scenario::create(states, outcomes, {one, one, one}, {AgentPayoff{u, Q("1")}, AgentPayoff{u, Q("1")}});
  EXPECT_EQ(sc.states().labels, (std::vector<std::string>{"b", "c", "a"}));
  EXPECT_FALSE(sc.generic());
}

TEST(Scenario, RejectsInvalidInput)
{
  OutcomeSpace outcomes{{"a", "b"}};
  PayoffMatrix u(2, std::vector<Rational>(2, Q("0")));
  auto         make = [&](StateSpace s, std::vector<Lottery> scf, Rational c) {
    return Scenario::create(std::move(s), outcomes, std::move(scf), {AgentPayoff{u, c}, AgentPayoff{u, c}});
  };
  StateSpace good{{"x", "y"}, {Q("1/2"), Q("1/2")}};
  EXPECT_ERROR_CODE(make({{"x", "y"}, {Q("1/2"), Q("1/3")}}, {pure_lottery(2, 0), pure_lottery(2, 1)}, Q("1")),
                    ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(make({{"x", "y"}, {Q("1"), Q("0")}}, {pure_lottery(2, 0), pure_lottery(2, 1)}, Q("1")),
                    ErrorCode::kInvalidArgument);
  EXPECT_THROW(make(good, {{Q("1/2"), Q("1/3")}, pure_lottery(2, 1)}, Q("1")), Error);
  EXPECT_THROW(make(good, {pure_lottery(2, 0), pure_lottery(2, 1)}, Q("-1")), Error);
}

TEST(Scenario, WithCostsAndUtilities)
{
  auto const sc = binary_scenario();
  auto const c  = sc.with_costs(Q("2"), Q("3"));
  EXPECT_EQ(c.payoff(0).cost, 2);
  EXPECT_EQ(c.payoff(1).cost, 3);
  PayoffMatrix u{{Q("1"), Q("0")}, {Q("0"), Q("1")}};
  auto const   w = sc.with_utilities(u, u);
  EXPECT_EQ(w.payoff(1).u, u);
  EXPECT_EQ(expected_value(u[0], Lottery{Q("1/4"), Q("3/4")}), Q("1/4"));
}

}  // namespace
}  // namespace robimp
