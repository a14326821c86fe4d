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

#include <robimp/robimp.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <memory>
#include <string>

namespace {

using Json = nlohmann::json;

std::string scenario_path(char const *name)
{
  char const *dir = std::getenv("ROBIMP_SCENARIO_DIR");
  return std::string(dir ? dir : "scenarios") + "/" + name;
}

Json take_json(char *text)
{
  Json j = Json::parse(text);
  robimp_string_free(text);
  return j;
}

struct ScenarioDeleter
{
  void operator()(robimp_scenario *s) const
  {
    robimp_scenario_free(s);
  }
};
struct MechanismDeleter
{
  void operator()(robimp_mechanism *m) const
  {
    robimp_mechanism_free(m);
  }
};
struct ResultDeleter
{
  void operator()(robimp_result *r) const
  {
    robimp_result_free(r);
  }
};
using ScenarioPtr  = std::unique_ptr<robimp_scenario, ScenarioDeleter>;
using MechanismPtr = std::unique_ptr<robimp_mechanism, MechanismDeleter>;
using ResultPtr    = std::unique_ptr<robimp_result, ResultDeleter>;

ScenarioPtr load(char const *name)
{
  robimp_scenario *s = nullptr;
  EXPECT_EQ(robimp_scenario_load(scenario_path(name).c_str(), &s), ROBIMP_OK) << robimp_last_error();
  return ScenarioPtr(s);
}

MechanismPtr build(robimp_scenario const *s, char const *kind, char const *params = nullptr)
{
  robimp_mechanism *m = nullptr;
  EXPECT_EQ(robimp_mechanism_build(s, kind, params, &m), ROBIMP_OK) << robimp_last_error();
  return MechanismPtr(m);
}

TEST(CApi, VersionAndStatusNames)
{
  EXPECT_STREQ(robimp_version(), "0.1.0");
  EXPECT_STREQ(robimp_status_name(ROBIMP_OK), "ok");
  EXPECT_STRNE(robimp_status_name(ROBIMP_E_INFEASIBLE), robimp_status_name(ROBIMP_E_NON_GENERIC));
}

TEST(CApi, ScenarioRoundTrip)
{
  auto  s    = load("three_state.yaml");
  char *text = nullptr;
  ASSERT_EQ(robimp_scenario_json(s.get(), &text), ROBIMP_OK);
  auto const j = take_json(text);
  EXPECT_EQ(j["prior"][0], "1/2");
  EXPECT_TRUE(j["generic"].get<bool>());
}

TEST(CApi, NullArgumentsAreRejected)
{
  robimp_scenario *s = nullptr;
  EXPECT_EQ(robimp_scenario_load(nullptr, &s), ROBIMP_E_INVALID_ARGUMENT);
  EXPECT_NE(std::string(robimp_last_error()), "");
  EXPECT_EQ(robimp_scenario_parse("states: [", nullptr), ROBIMP_E_INVALID_ARGUMENT);
  robimp_scenario_free(nullptr);
  robimp_mechanism_free(nullptr);
  robimp_result_free(nullptr);
}

TEST(CApi, ErrorCodesPropagate)
{
  robimp_scenario *s = nullptr;
  EXPECT_EQ(robimp_scenario_load("/nonexistent.yaml", &s), ROBIMP_E_IO);
  EXPECT_EQ(robimp_scenario_parse("states: [", &s), ROBIMP_E_PARSE);
  EXPECT_EQ(s, nullptr);

  char const *tie = "states:\n  - {label: a, prior: 1/2}\n  - {label: b, prior: 1/2}\n"
                    "outcomes: [y, z]\nscf:\n  a: [1, 0]\n  b: [0, 1]\nagents: [{cost: 1}, {cost: 1}]\n";
  ASSERT_EQ(robimp_scenario_parse(tie, &s), ROBIMP_OK) << robimp_last_error();
  ScenarioPtr       owned(s);
  robimp_mechanism *m = nullptr;
  EXPECT_EQ(robimp_mechanism_build(s, "asqr", nullptr, &m), ROBIMP_E_NON_GENERIC);
  EXPECT_EQ(robimp_mechanism_build(s, "vcg", nullptr, &m), ROBIMP_E_INVALID_ARGUMENT);
  EXPECT_EQ(robimp_mechanism_build(s, "maskin", R"({"reward": "0"})", &m), ROBIMP_E_INVALID_ARGUMENT);
  EXPECT_EQ(robimp_mechanism_build(s, "sqr", R"({"cost_bound": "1/2"})", &m), ROBIMP_E_PRECONDITION);
  EXPECT_EQ(robimp_mechanism_build(s, "sqr", "{not json", &m), ROBIMP_E_PARSE);
  EXPECT_EQ(m, nullptr);
}

TEST(CApi, MechanismCheckAndGamma)
{
  auto  s    = load("binary.yaml");
  auto  m    = build(s.get(), "sqr");
  char *text = nullptr;
  ASSERT_EQ(robimp_mechanism_check(m.get(), s.get(), &text), ROBIMP_OK) << robimp_last_error();
  auto const check = take_json(text);
  EXPECT_TRUE(check["pass"].get<bool>());
  EXPECT_EQ(check["gamma"], "19/42");

  ASSERT_EQ(robimp_dominance_gamma(s.get(), m.get(), R"({"cost": "1"})", &text), ROBIMP_OK);
  auto const gamma = take_json(text);
  EXPECT_EQ(gamma["gamma"], "19/42");
  EXPECT_EQ(gamma["variant"], "status-quo");
}

TEST(CApi, TableRoundTrip)
{
  auto  s    = load("three_state.yaml");
  auto  m    = build(s.get(), "msqr");
  char *text = nullptr;
  ASSERT_EQ(robimp_mechanism_table(m.get(), s.get(), &text), ROBIMP_OK);
  std::string const table(text);
  robimp_string_free(text);
  robimp_mechanism *back = nullptr;
  ASSERT_EQ(robimp_mechanism_parse_table(s.get(), table.c_str(), &back), ROBIMP_OK) << robimp_last_error();
  MechanismPtr owned(back);
  ASSERT_EQ(robimp_mechanism_table(back, s.get(), &text), ROBIMP_OK);
  EXPECT_EQ(table, std::string(text));
  robimp_string_free(text);
}

TEST(CApi, EquilibriumCheckTruthful)
{
  auto  s    = load("binary.yaml");
  auto  m    = build(s.get(), "sqr");
  char *text = nullptr;
  ASSERT_EQ(robimp_equilibrium_check(s.get(), m.get(), R"({"variant": "full", "profile": "truthful"})", &text),
            ROBIMP_OK)
      << robimp_last_error();
  auto const j = take_json(text);
  EXPECT_TRUE(j["equilibrium"].get<bool>());
  EXPECT_EQ(j["truthful_mass"], "1");
}

TEST(CApi, EliminationOnMaskinLadder)
{
  auto  s    = load("binary_acquittal_bias.yaml");
  auto  m    = build(s.get(), "maskin", R"({"reward": "1"})");
  char *text = nullptr;
  ASSERT_EQ(robimp_equilibrium_br_iterate(s.get(), m.get(), R"({"eta": "1/10"})", &text), ROBIMP_OK)
      << robimp_last_error();
  auto const j = take_json(text);
  EXPECT_TRUE(j.contains("converged"));
  EXPECT_TRUE(j["report"].contains("max_tv"));
}

TEST(CApi, ExperimentsAreListedAndDeterministic)
{
  ASSERT_EQ(robimp_experiment_count(), 7u);
  EXPECT_EQ(robimp_experiment_name(99), nullptr);
  bool found = false;
  for (size_t i = 0; i < robimp_experiment_count(); ++i)
  {
    found = found || std::string(robimp_experiment_name(i)) == "prop3";
  }
  ASSERT_TRUE(found);

  std::string outputs[2];
  for (auto &o : outputs)
  {
    robimp_result *r = nullptr;
    ASSERT_EQ(robimp_experiment_run("prop3", nullptr, R"({"seed": 3})", &r), ROBIMP_OK) << robimp_last_error();
    ResultPtr owned(r);
    EXPECT_EQ(robimp_result_passed(r), 1);
    char *text = nullptr;
    ASSERT_EQ(robimp_result_json(r, &text), ROBIMP_OK);
    o = text;
    robimp_string_free(text);
    ASSERT_EQ(robimp_result_csv(r, &text), ROBIMP_OK);
    EXPECT_EQ(std::string(text).rfind("state,transfer", 0), 0u);
    robimp_string_free(text);
  }
  EXPECT_EQ(outputs[0], outputs[1]);

  robimp_result *r = nullptr;
  EXPECT_EQ(robimp_experiment_run("nope", nullptr, nullptr, &r), ROBIMP_E_INVALID_ARGUMENT);
}

}  // namespace
