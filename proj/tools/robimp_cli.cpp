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

#include "robimp/robimp.h"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace {

using Json = nlohmann::ordered_json;

struct Failure
{
  robimp_status status;
  std::string   message;
};

void check(robimp_status status)
{
  if (status != ROBIMP_OK)
  {
    throw Failure{status, robimp_last_error()};
  }
}

std::string take(char *text)
{
  std::string out(text);
  robimp_string_free(text);
  return out;
}

using ScenarioPtr  = std::unique_ptr<robimp_scenario, decltype(&robimp_scenario_free)>;
using MechanismPtr = std::unique_ptr<robimp_mechanism, decltype(&robimp_mechanism_free)>;
using ResultPtr    = std::unique_ptr<robimp_result, decltype(&robimp_result_free)>;

ScenarioPtr load(std::string const &path)
{
  robimp_scenario *s = nullptr;
  check(robimp_scenario_load(path.c_str(), &s));
  return {s, robimp_scenario_free};
}

std::string slurp(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw Failure{ROBIMP_E_IO, "cannot open '" + path + "'"};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(std::filesystem::path const &path, std::string const &text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw Failure{ROBIMP_E_IO, "cannot write '" + path.string() + "'"};
  }
  out << text;
}

/// Mechanism selection shared by the game subcommands.
struct MechanismArgs
{
  std::string kind;
  std::string table;
  std::string cost_bound;
  std::string reward;

  void add(CLI::App *app)
  {
    auto *k = app->add_option("--kind", kind, "maskin, sqr, asqr or msqr")
                  ->check(CLI::IsMember({"maskin", "sqr", "asqr", "msqr"}));
    auto *t = app->add_option("--table", table, "mechanism table file")->check(CLI::ExistingFile);
    k->excludes(t);
    app->add_option("--cost-bound", cost_bound, "cost bound for the sqr schedule");
    app->add_option("--reward", reward, "matching reward of the maskin rule");
  }

  MechanismPtr build(robimp_scenario const *scenario) const
  {
    robimp_mechanism *m = nullptr;
    if (!table.empty())
    {
      check(robimp_mechanism_parse_table(scenario, slurp(table).c_str(), &m));
    }
    else
    {
      if (kind.empty())
      {
        throw Failure{ROBIMP_E_INVALID_ARGUMENT, "one of --kind or --table is required"};
      }
      Json params = Json::object();
      if (!cost_bound.empty())
      {
        params["cost_bound"] = cost_bound;
      }
      if (!reward.empty())
      {
        params["reward"] = reward;
      }
      check(robimp_mechanism_build(scenario, kind.c_str(), params.dump().c_str(), &m));
    }
    return {m, robimp_mechanism_free};
  }
};

/// Game options shared by the equilibrium and dominance subcommands.
struct GameArgs
{
  std::string scenario;
  MechanismArgs mechanism;
  std::string variant;
  std::string eta;
  std::string profile;
  bool        unperturbed{false};

  void add(CLI::App *app, bool with_profile)
  {
    app->add_option("--scenario", scenario, "scenario file")->required()->check(CLI::ExistingFile);
    mechanism.add(app);
    app->add_option("--variant", variant, "strategy set: full, status-quo or signed")
        ->check(CLI::IsMember({"full", "status-quo", "signed"}));
    app->add_option("--eta", eta, "override the perturbation's eta");
    app->add_flag("--unperturbed", unperturbed, "ignore the scenario's perturbation block");
    if (with_profile)
    {
      app->add_option("--profile", profile, "'truthful' or agent messages as '1,2;1,2'");
    }
  }

  Json options() const
  {
    Json o = Json::object();
    if (!variant.empty())
    {
      o["variant"] = variant;
    }
    if (!eta.empty())
    {
      o["eta"] = eta;
    }
    if (unperturbed)
    {
      o["perturbed"] = false;
    }
    if (!profile.empty() && profile != "truthful")
    {
      Json              agents = Json::array();
      std::stringstream in(profile);
      for (std::string part; std::getline(in, part, ';');)
      {
        Json              messages = Json::array();
        std::stringstream items(part);
        for (std::string m; std::getline(items, m, ',');)
        {
          messages.push_back(std::stoi(m));
        }
        agents.push_back(std::move(messages));
      }
      o["profile"] = std::move(agents);
    }
    return o;
  }
};

using GameCall = robimp_status (*)(robimp_scenario const *, robimp_mechanism const *, char const *, char **);

int run_game(GameArgs const &args, GameCall call, Json extra = Json::object())
{
  auto       scenario = load(args.scenario);
  auto       mech     = args.mechanism.build(scenario.get());
  Json       opts     = args.options();
  for (auto const &[k, v] : extra.items())
  {
    opts[k] = v;
  }
  char *out = nullptr;
  check(call(scenario.get(), mech.get(), opts.dump().c_str(), &out));
  std::cout << take(out) << "\n";
  return 0;
}

std::vector<std::string> split_list(std::string const &text)
{
  std::vector<std::string> out;
  std::stringstream        in(text);
  for (std::string item; std::getline(in, item, ',');)
  {
    if (!item.empty())
    {
      out.push_back(item);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Robust implementation workbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", robimp_version());

  // scenario
  auto       *scenario_cmd = app.add_subcommand("scenario", "scenario files")->require_subcommand(1);
  std::string show_path;
  auto       *show = scenario_cmd->add_subcommand("show", "validate and print a scenario");
  show->add_option("file", show_path)->required()->check(CLI::ExistingFile);

  // mechanism
  auto         *mechanism_cmd = app.add_subcommand("mechanism", "mechanism construction")->require_subcommand(1);
  std::string   build_scenario;
  std::string   build_out;
  MechanismArgs build_args;
  auto         *build = mechanism_cmd->add_subcommand("build", "build a mechanism and print its table");
  build->add_option("--scenario", build_scenario, "scenario file")->required()->check(CLI::ExistingFile);
  build_args.add(build);
  build->add_option("--out", build_out, "write the table to a file");
  std::string   check_scenario;
  MechanismArgs check_args;
  auto         *mcheck = mechanism_cmd->add_subcommand("check", "reward constraints and dominance threshold");
  mcheck->add_option("--scenario", check_scenario, "scenario file")->required()->check(CLI::ExistingFile);
  check_args.add(mcheck);

  // equilibrium
  auto    *eq_cmd = app.add_subcommand("equilibrium", "equilibrium verification")->require_subcommand(1);
  GameArgs eq_check_args;
  auto    *eq_check = eq_cmd->add_subcommand("check", "verify a profile");
  eq_check_args.add(eq_check, true);
  GameArgs br_args;
  auto    *br = eq_cmd->add_subcommand("br-iterate", "best-response iteration");
  br_args.add(br, true);

  // dominance
  auto       *dom_cmd = app.add_subcommand("dominance", "dominance analysis")->require_subcommand(1);
  GameArgs    gamma_args;
  std::string gamma_cost;
  auto       *gamma = dom_cmd->add_subcommand("gamma", "gamma-dominance threshold of truthful reporting");
  gamma_args.add(gamma, false);
  gamma->add_option("--cost", gamma_cost, "learning cost (default: largest scenario cost)");
  GameArgs elim_args;
  bool     no_mixtures = false;
  auto    *elim        = dom_cmd->add_subcommand("eliminate", "iterated strict dominance");
  elim_args.add(elim, false);
  elim->add_flag("--no-mixtures", no_mixtures, "only pure dominators");

  // experiment
  auto *exp_cmd = app.add_subcommand("experiment", "named reproductions")->require_subcommand(1);
  auto *list    = exp_cmd->add_subcommand("list", "list experiments");
  std::string exp_name;
  std::string exp_scenario;
  std::string exp_grid;
  std::string exp_out;
  std::uint64_t exp_seed  = 0;
  std::size_t   exp_depth = 0;
  auto *run = exp_cmd->add_subcommand("run", "run an experiment; exit 0 iff every certificate passes");
  run->add_option("name", exp_name)->required();
  run->add_option("--scenario", exp_scenario, "scenario file")->check(CLI::ExistingFile);
  run->add_option("--eta-grid", exp_grid, "comma separated eta values, e.g. 1/100,1/20");
  auto *seed_opt  = run->add_option("--seed", exp_seed, "random seed");
  auto *depth_opt = run->add_option("--depth", exp_depth, "ladder depth")->check(CLI::PositiveNumber);
  run->add_option("--out", exp_out, "directory for NAME.json and NAME.csv");

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (*show)
    {
      auto  sc  = load(show_path);
      char *out = nullptr;
      check(robimp_scenario_json(sc.get(), &out));
      std::cout << take(out) << "\n";
      return 0;
    }
    if (*build)
    {
      auto  sc   = load(build_scenario);
      auto  mech = build_args.build(sc.get());
      char *out  = nullptr;
      check(robimp_mechanism_table(mech.get(), sc.get(), &out));
      std::string const table = take(out);
      if (build_out.empty())
      {
        std::cout << table;
      }
      else
      {
        spit(build_out, table);
      }
      return 0;
    }
    if (*mcheck)
    {
      auto  sc   = load(check_scenario);
      auto  mech = check_args.build(sc.get());
      char *out  = nullptr;
      check(robimp_mechanism_check(mech.get(), sc.get(), &out));
      std::string const text = take(out);
      std::cout << text << "\n";
      return Json::parse(text).value("pass", false) ? 0 : 1;
    }
    if (*eq_check)
    {
      return run_game(eq_check_args, robimp_equilibrium_check);
    }
    if (*br)
    {
      return run_game(br_args, robimp_equilibrium_br_iterate);
    }
    if (*gamma)
    {
      Json extra = Json::object();
      if (!gamma_cost.empty())
      {
        extra["cost"] = gamma_cost;
      }
      return run_game(gamma_args, robimp_dominance_gamma, extra);
    }
    if (*elim)
    {
      return run_game(elim_args, robimp_dominance_eliminate, {{"pair_mixtures", !no_mixtures}});
    }
    if (*list)
    {
      for (std::size_t i = 0; i < robimp_experiment_count(); ++i)
      {
        std::cout << robimp_experiment_name(i) << "\n";
      }
      return 0;
    }
    if (*run)
    {
      ScenarioPtr sc{nullptr, robimp_scenario_free};
      if (!exp_scenario.empty())
      {
        sc = load(exp_scenario);
      }
      Json opts = Json::object();
      if (!exp_grid.empty())
      {
        opts["eta_grid"] = split_list(exp_grid);
      }
      if (*seed_opt)
      {
        opts["seed"] = exp_seed;
      }
      if (*depth_opt)
      {
        opts["depth"] = exp_depth;
      }
      robimp_result *raw = nullptr;
      check(robimp_experiment_run(exp_name.c_str(), sc.get(), opts.dump().c_str(), &raw));
      ResultPtr result{raw, robimp_result_free};
      char     *json = nullptr;
      check(robimp_result_json(result.get(), &json));
      std::string const text = take(json);
      if (exp_out.empty())
      {
        std::cout << text;
      }
      else
      {
        char *csv = nullptr;
        check(robimp_result_csv(result.get(), &csv));
        std::filesystem::create_directories(exp_out);
        spit(std::filesystem::path(exp_out) / (exp_name + ".json"), text);
        spit(std::filesystem::path(exp_out) / (exp_name + ".csv"), take(csv));
        Json const record = Json::parse(text);
        for (auto const &c : record["certificates"])
        {
          std::cout << (c["pass"].get<bool>() ? "PASS  " : "FAIL  ") << c["claim"].get<std::string>() << "\n";
        }
      }
      return robimp_result_passed(result.get()) ? 0 : 1;
    }
  }
  catch (Failure const &f)
  {
    std::cerr << "error (" << robimp_status_name(f.status) << "): " << f.message << "\n";
    return 2;
  }
  catch (std::exception const &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
