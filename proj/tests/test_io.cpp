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

#include "robimp/io.hpp"

#include "test_util.hpp"

namespace robimp {
namespace {

using test::Q;

constexpr char const *kThreeState = R"(
states:
  - {label: low, prior: 1/5}
  - {label: high, prior: 1/2}
  - {label: mid, prior: 3/10}
outcomes: [a, b, c]
scf:
  low: [0, 0, 1]
  high: [1, 0, 0]
  mid: [0, 1, 0]
agents:
  - cost: 1/2
    u:
      low: [0, 0, 1]
      high: [1, 0, 0]
      mid: [0, 1, 0]
  - cost: 1
)";

TEST(ScenarioFile, ParsesAndReindexes)
{
  auto const f = parse_scenario(kThreeState);
  auto const &sc = f.scenario;
  EXPECT_EQ(sc.states().labels, (std::vector<std::string>{"high", "mid", "low"}));
  EXPECT_EQ(sc.prior(0), Q("1/2"));
  EXPECT_EQ(sc.scf()[2], pure_lottery(3, 2));
  EXPECT_EQ(sc.payoff(0).u[0][0], 1);
  EXPECT_EQ(sc.payoff(0).cost, Q("1/2"));
  EXPECT_EQ(sc.payoff(1).cost, 1);
  EXPECT_FALSE(f.perturbation.has_value());
  EXPECT_TRUE(f.eta_grid.empty());
}

TEST(ScenarioFile, ShippedScenariosLoad)
{
  for (auto const *name : {"binary.yaml", "binary_acquittal_bias.yaml", "maskin_ladder.yaml", "three_state.yaml",
                           "one_respondent.yaml"})
  {
    EXPECT_NO_THROW(load_scenario(test::scenario_dir() + "/" + name)) << name;
  }
}

TEST(ScenarioFile, PerturbationBlock)
{
  auto const f = load_scenario(test::scenario_dir() + "/binary_acquittal_bias.yaml");
  ASSERT_TRUE(f.perturbation.has_value());
  EXPECT_EQ(f.perturbation->depth, 100u);
  EXPECT_EQ(f.perturbation->eta, Q("1/100"));
  ASSERT_EQ(f.perturbation->biases.size(), 1u);
  EXPECT_EQ(f.perturbation->biases[0].agent, 0u);
  EXPECT_EQ(f.eta_grid.size(), 4u);
  EXPECT_EQ(f.seed, 1u);
  auto const p = f.perturbation->build(f.scenario);
  EXPECT_EQ(p.payoff(0, 0).u[1][0], 10);
  EXPECT_EQ(eta_of(p), Q("1/100"));
}

TEST(ScenarioFile, ErrorsCarryLineNumbers)
{
  try
  {
    parse_scenario(read_file(test::scenario_dir() + "/../tests/data/bad_prior.yaml"));
    ADD_FAILURE() << "no error";
  }
  catch (Error const &e)
  {
    EXPECT_NE(std::string(e.what()).find("line"), std::string::npos) << e.what();
  }
  constexpr char const *bad_row = R"(states:
  - {label: a, prior: 1/2}
  - {label: b, prior: 1/2}
outcomes: [y]
scf:
  a: [1]
  b: [1, 0]
agents: [{cost: 1}, {cost: 1}]
)";
  try
  {
    parse_scenario(bad_row);
    ADD_FAILURE() << "no error";
  }
  catch (Error const &e)
  {
    EXPECT_NE(std::string(e.what()).find("line 7"), std::string::npos) << e.what();
  }
  EXPECT_ERROR_CODE(parse_scenario("states: [oops"), ErrorCode::kParse);
  EXPECT_ERROR_CODE(parse_scenario("outcomes: [a]\n"), ErrorCode::kParse);
  EXPECT_ERROR_CODE(load_scenario("/nonexistent/file.yaml"), ErrorCode::kIo);
}

TEST(MechanismTable, RoundTrip)
{
  auto const sc   = ladder_scenario({Q("1/2"), Q("3/10"), Q("1/5")});
  auto const m    = build_modified_status_quo(sc);
  auto const text = write_mechanism_table(m, sc);
  EXPECT_EQ(text.rfind("# kind msqr", 0), 0u);
  auto const back = parse_mechanism_table(text, sc.num_outcomes());
  EXPECT_EQ(back.kind(), MechanismKind::kModified);
  EXPECT_EQ(back.messages(0), m.messages(0));
  for (int a : m.messages(0))
  {
    for (int b : m.messages(1))
    {
      EXPECT_EQ(back.outcome(a, b), m.outcome(a, b));
      EXPECT_EQ(back.transfer(0, a, b), m.transfer(0, a, b));
      EXPECT_EQ(back.transfer(1, a, b), m.transfer(1, a, b));
    }
  }
}

TEST(MechanismTable, HandWritten)
{
  constexpr char const *text = R"(# a one-respondent table
m1 m2 acquit convict t1 t2
1 1 1 0 0 0
2 1 0 1 1/2 0
)";
  auto const m = parse_mechanism_table(text, 2);
  EXPECT_EQ(m.kind(), MechanismKind::kTable);
  EXPECT_EQ(m.num_messages(0), 2u);
  EXPECT_EQ(m.num_messages(1), 1u);
  EXPECT_EQ(m.transfer(0, 2, 1), Q("1/2"));
  EXPECT_ERROR_CODE(parse_mechanism_table("m1 m2 a t1 t2\n1 1 1 0\n", 1), ErrorCode::kParse);
}

}  // namespace
}  // namespace robimp
