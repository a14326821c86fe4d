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

class AllExperiments : public ::testing::TestWithParam<std::string>
{};

TEST_P(AllExperiments, PassWithDefaults)
{
  auto const r = run_experiment(GetParam(), {});
  EXPECT_EQ(r.name, GetParam());
  EXPECT_FALSE(r.certificates.empty());
  for (auto const &c : r.certificates)
  {
    EXPECT_TRUE(c.pass) << c.claim << ": " << c.witness.dump();
  }
  EXPECT_TRUE(r.pass());
  auto const j = r.to_json();
  EXPECT_EQ(j["name"], GetParam());
  EXPECT_EQ(j["pass"], true);
}

INSTANTIATE_TEST_SUITE_P(Registry, AllExperiments, ::testing::ValuesIn(experiment_names()),
                         [](auto const &info) {
                           std::string s = info.param;
                           std::replace(s.begin(), s.end(), '-', '_');
                           return s;
                         });

TEST(Experiments, UnknownNameIsRejected)
{
  EXPECT_ERROR_CODE(run_experiment("nope", {}), ErrorCode::kInvalidArgument);
}

TEST(Experiments, ResultSerialization)
{
  ExperimentResult r;
  r.name = "demo";
  r.certify("first", true, {{"x", "1/2"}});
  r.certify("second", false);
  r.csv_columns = {"a", "b"};
  r.csv_rows    = {{"1", "2/3"}, {"x", "4"}};
  EXPECT_FALSE(r.pass());
  EXPECT_TRUE(r.certificate("first").pass);
  EXPECT_THROW(r.certificate("third"), Error);
  auto const csv = r.to_csv();
  EXPECT_EQ(csv.substr(0, 4), "a,b\n");
  EXPECT_NE(csv.find("1,2/3\n"), std::string::npos);
  EXPECT_NE(csv.find("x,4\n"), std::string::npos);
}

TEST(Experiments, Prop3DefaultTransfers)
{
  auto const r = run_prop3({});
  ASSERT_TRUE(r.pass());
  ASSERT_EQ(r.csv_columns, (std::vector<std::string>{"state", "transfer", "truthful_payoff"}));
  std::vector<std::string> t;
  for (auto const &row : r.csv_rows)
  {
    t.push_back(row.at(1));
  }
  EXPECT_EQ(t, (std::vector<std::string>{"13/6", "0", "11/6"}));
}

TEST(Experiments, DeterministicForFixedSeed)
{
  ExperimentOptions opt;
  opt.seed = 5;
  auto const a = run_prop3(opt).to_json().dump();
  auto const b = run_prop3(opt).to_json().dump();
  EXPECT_EQ(a, b);
}

TEST(Experiments, ReplacementCheckOnStatusQuo)
{
  auto const sc  = ladder_scenario({Q("1/2"), Q("3/10"), Q("1/5")});
  auto const m   = build_status_quo(sc, Q("1"));
  auto const chk = check_replacement(m, sc, StrategyVariant::kStatusQuo, Q("1"));
  EXPECT_GT(chk.checked, 0u);
  EXPECT_EQ(chk.violations, 0u);
  EXPECT_GT(chk.strict_checked, 0u);
  EXPECT_EQ(chk.strict_violations, 0u);
}

TEST(Experiments, ReplacementCheckOnAugmented)
{
  auto const sc  = ladder_scenario({Q("1/2"), Q("3/10"), Q("1/5")});
  auto const m   = build_augmented_status_quo(sc);
  auto const chk = check_replacement(m, sc, StrategyVariant::kSigned, Q("1"));
  EXPECT_GT(chk.checked, 0u);
  EXPECT_EQ(chk.violations, 0u);
  EXPECT_EQ(chk.strict_violations, 0u);
}

TEST(Experiments, ScenarioOverride)
{
  ExperimentOptions opt;
  opt.scenario = binary_scenario(Q("1"), Q("3/5"));
  auto const r = run_theorem1(opt);
  EXPECT_TRUE(r.pass());
}

}  // namespace
}  // namespace robimp
