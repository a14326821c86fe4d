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

#include "robimp/error.hpp"
#include "robimp/io.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

struct robimp_scenario
{
  robimp::ScenarioFile file;
};

struct robimp_mechanism
{
  robimp::Mechanism mechanism;
};

struct robimp_result
{
  robimp::ExperimentResult result;
};

namespace {

using robimp::ErrorCode;
using robimp::Json;
using robimp::Rational;

thread_local std::string last_error;

robimp_status status_of(ErrorCode code)
{
  return static_cast<robimp_status>(static_cast<int>(code));
}

template <typename F>
robimp_status guarded(F &&body)
{
  try
  {
    body();
    last_error.clear();
    return ROBIMP_OK;
  }
  catch (robimp::Error const &e)
  {
    last_error = e.what();
    return status_of(e.code());
  }
  catch (Json::exception const &e)
  {
    last_error = std::string("malformed options: ") + e.what();
    return ROBIMP_E_PARSE;
  }
  catch (std::exception const &e)
  {
    last_error = e.what();
    return ROBIMP_E_INTERNAL;
  }
  catch (...)
  {
    last_error = "unknown failure";
    return ROBIMP_E_INTERNAL;
  }
}

char *copy_out(std::string const &text)
{
  char *out = static_cast<char *>(std::malloc(text.size() + 1));
  if (out == nullptr)
  {
    throw std::bad_alloc();
  }
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void need(void const *p, char const *what)
{
  robimp::require(p != nullptr, ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

Json options_of(char const *text)
{
  if (text == nullptr || *text == '\0')
  {
    return Json::object();
  }
  Json out = Json::parse(text);
  robimp::require(out.is_object(), ErrorCode::kParse, "options must be a JSON object");
  return out;
}

Rational rational_field(Json const &opts, char const *key)
{
  auto const &v = opts.at(key);
  if (v.is_number_integer())
  {
    return Rational(v.get<long>());
  }
  return robimp::parse_rational(v.get<std::string>());
}

robimp::StrategyVariant variant_of(Json const &opts, robimp::Mechanism const &mech)
{
  if (opts.contains("variant"))
  {
    auto const name = opts["variant"].get<std::string>();
    if (name == "full")
    {
      return robimp::StrategyVariant::kFull;
    }
    if (name == "status-quo")
    {
      return robimp::StrategyVariant::kStatusQuo;
    }
    if (name == "signed")
    {
      return robimp::StrategyVariant::kSigned;
    }
    robimp::fail(ErrorCode::kInvalidArgument, "unknown strategy variant '" + name + "'");
  }
  switch (mech.kind())
  {
  case robimp::MechanismKind::kStatusQuo:
    return robimp::StrategyVariant::kStatusQuo;
  case robimp::MechanismKind::kAugmented:
  case robimp::MechanismKind::kModified:
    return robimp::StrategyVariant::kSigned;
  default:
    return robimp::StrategyVariant::kFull;
  }
}

char const *variant_name(robimp::StrategyVariant v)
{
  switch (v)
  {
  case robimp::StrategyVariant::kFull:
    return "full";
  case robimp::StrategyVariant::kStatusQuo:
    return "status-quo";
  case robimp::StrategyVariant::kSigned:
    return "signed";
  }
  return "full";
}

robimp::Game game_of(robimp_scenario const *s, robimp_mechanism const *m, Json const &opts)
{
  auto const &file      = s->file;
  bool const  perturbed = opts.value("perturbed", file.perturbation.has_value());
  if (!perturbed)
  {
    return robimp::Game(file.scenario, m->mechanism, robimp::Perturbation::trivial(file.scenario));
  }
  robimp::require(file.perturbation.has_value(), ErrorCode::kInvalidArgument,
                  "scenario has no perturbation block");
  std::optional<Rational> eta;
  if (opts.contains("eta"))
  {
    eta = rational_field(opts, "eta");
  }
  return robimp::Game(file.scenario, m->mechanism, file.perturbation->build(file.scenario, eta));
}

robimp::Profile profile_of(robimp::Game const &game, Json const &opts)
{
  if (!opts.contains("profile") || opts["profile"] == "truthful")
  {
    return robimp::truthful_profile(game);
  }
  auto const &p = opts["profile"];
  robimp::require(p.is_array() && p.size() == robimp::kAgents, ErrorCode::kInvalidArgument,
                  "profile must be \"truthful\" or one message list per agent");
  std::array<robimp::MixedStrategy, robimp::kAgents> s;
  for (std::size_t a = 0; a < robimp::kAgents; ++a)
  {
    auto const strategy = p[a].get<robimp::PureStrategy>();
    robimp::require(strategy.size() == game.num_realizations(a), ErrorCode::kDimensionMismatch,
                    "profile entry has the wrong number of realizations");
    for (int label : strategy)
    {
      robimp::require(game.mechanism().has_message(a, label), ErrorCode::kInvalidArgument,
                      "profile uses unknown message " + std::to_string(label));
    }
    s[a] = robimp::pure(strategy);
  }
  return robimp::uniform_profile(game.perturbation(), s[0], s[1]);
}

Json report_json(robimp::EquilibriumReport const &r)
{
  Json residuals = Json::array();
  for (auto const &t : r.residuals)
  {
    if (t.residual > 0)
    {
      residuals.push_back({{"agent", t.agent + 1}, {"type", t.type}, {"residual", robimp::to_string(t.residual)}});
    }
  }
  return {{"equilibrium", r.equilibrium()},
          {"max_residual", robimp::to_string(r.max_residual)},
          {"types_checked", r.residuals.size()},
          {"profitable_deviations", residuals},
          {"truthful_mass", robimp::to_string(r.truthful_mass)},
          {"tv", robimp::to_json(r.tv)},
          {"max_tv", robimp::to_string(r.max_tv)}};
}

Json profile_json(robimp::Profile const &profile)
{
  Json out = Json::array();
  for (std::size_t a = 0; a < robimp::kAgents; ++a)
  {
    Json types = Json::array();
    for (auto const &mixed : profile[a])
    {
      Json entries = Json::array();
      for (auto const &[s, w] : mixed)
      {
        entries.push_back({{"strategy", s}, {"weight", robimp::to_string(w)}});
      }
      types.push_back(std::move(entries));
    }
    out.push_back(std::move(types));
  }
  return out;
}

Json schedule_json(robimp::Mechanism const &mech)
{
  Json out = Json::object();
  if (auto const &s = mech.schedule())
  {
    if (s->base)
    {
      out["R0"] = robimp::to_string(*s->base);
    }
    out["R"] = robimp::to_json(s->ascending);
    if (s->penalty)
    {
      out["x"] = robimp::to_string(*s->penalty);
    }
    out["cost_bound"] = robimp::to_string(s->cost_bound);
  }
  return out;
}

}  // namespace

extern "C" {

char const *robimp_last_error(void)
{
  return last_error.c_str();
}

char const *robimp_status_name(robimp_status status)
{
  if (status == ROBIMP_OK)
  {
    return "ok";
  }
  if (status == ROBIMP_E_INTERNAL)
  {
    return "internal";
  }
  return robimp::error_code_name(static_cast<ErrorCode>(status));
}

char const *robimp_version(void)
{
  return "0.1.0";
}

void robimp_string_free(char *text)
{
  std::free(text);
}

robimp_status robimp_scenario_load(char const *path, robimp_scenario **out)
{
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new robimp_scenario{robimp::load_scenario(path)};
  });
}

robimp_status robimp_scenario_parse(char const *text, robimp_scenario **out)
{
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new robimp_scenario{robimp::parse_scenario(text)};
  });
}

robimp_status robimp_scenario_json(robimp_scenario const *scenario, char **out)
{
  return guarded([&] {
    need(scenario, "scenario");
    need(out, "out");
    auto const &f = scenario->file;
    Json        j = robimp::scenario_json(f.scenario);
    j["generic"]  = f.scenario.generic();
    for (std::size_t a = 0; a < robimp::kAgents; ++a)
    {
      Json rows = Json::array();
      for (auto const &row : f.scenario.payoff(a).u)
      {
        rows.push_back(robimp::to_json(row));
      }
      j["u" + std::to_string(a + 1)] = std::move(rows);
    }
    if (f.perturbation)
    {
      auto const &p = *f.perturbation;
      j["perturbation"] = {
          {"kind", p.kind == robimp::PerturbationSpec::Kind::kGeometric ? "geometric" : "custom"},
          {"depth", p.depth},
          {"eta", robimp::to_string(p.eta)},
          {"tail", p.tail == robimp::TailConvention::kLump ? "lump" : "renormalize"},
          {"biases", p.biases.size()}};
    }
    if (!f.eta_grid.empty())
    {
      j["eta_grid"] = robimp::to_json(f.eta_grid);
    }
    if (f.seed)
    {
      j["seed"] = *f.seed;
    }
    *out = copy_out(j.dump(2));
  });
}

void robimp_scenario_free(robimp_scenario *scenario)
{
  delete scenario;
}

robimp_status robimp_mechanism_build(robimp_scenario const *scenario, char const *kind, char const *params_json,
                                     robimp_mechanism **out)
{
  return guarded([&] {
    need(scenario, "scenario");
    need(kind, "kind");
    need(out, "out");
    Json const  params = options_of(params_json);
    auto const &sc     = scenario->file.scenario;
    switch (robimp::parse_mechanism_kind(kind))
    {
    case robimp::MechanismKind::kMaskin:
      *out = new robimp_mechanism{
          robimp::build_maskin(sc, params.contains("reward") ? rational_field(params, "reward") : Rational(10))};
      break;
    case robimp::MechanismKind::kStatusQuo:
      *out = new robimp_mechanism{robimp::build_status_quo(
          sc, params.contains("cost_bound") ? rational_field(params, "cost_bound") : sc.max_cost())};
      break;
    case robimp::MechanismKind::kAugmented:
      *out = new robimp_mechanism{robimp::build_augmented_status_quo(sc)};
      break;
    case robimp::MechanismKind::kModified:
      *out = new robimp_mechanism{robimp::build_modified_status_quo(sc)};
      break;
    case robimp::MechanismKind::kTable:
      robimp::fail(ErrorCode::kInvalidArgument, "table mechanisms are read with robimp_mechanism_parse_table");
    }
  });
}

robimp_status robimp_mechanism_parse_table(robimp_scenario const *scenario, char const *text, robimp_mechanism **out)
{
  return guarded([&] {
    need(scenario, "scenario");
    need(text, "text");
    need(out, "out");
    *out = new robimp_mechanism{robimp::parse_mechanism_table(text, scenario->file.scenario.num_outcomes())};
  });
}

robimp_status robimp_mechanism_table(robimp_mechanism const *mechanism, robimp_scenario const *scenario, char **out)
{
  return guarded([&] {
    need(mechanism, "mechanism");
    need(scenario, "scenario");
    need(out, "out");
    *out = copy_out(robimp::write_mechanism_table(mechanism->mechanism, scenario->file.scenario));
  });
}

robimp_status robimp_mechanism_check(robimp_mechanism const *mechanism, robimp_scenario const *scenario, char **out)
{
  return guarded([&] {
    need(mechanism, "mechanism");
    need(scenario, "scenario");
    need(out, "out");
    auto const &mech = mechanism->mechanism;
    auto const &sc   = scenario->file.scenario;
    robimp::require(mech.num_outcomes() == sc.num_outcomes(), ErrorCode::kDimensionMismatch,
                    "mechanism and scenario differ in outcomes");
    Json j{{"kind", robimp::mechanism_kind_name(mech.kind())},
           {"messages", {mech.messages(0), mech.messages(1)}},
           {"max_abs_transfer", robimp::to_string(mech.max_abs_transfer())},
           {"schedule", schedule_json(mech)}};
    bool ok = true;
    if (mech.schedule())
    {
      auto const report = robimp::check_reward_constraints(*mech.schedule(), sc.states().prior,
                                                           mech.schedule()->cost_bound, mech.kind());
      Json checks       = Json::array();
      for (auto const &c : report.checks)
      {
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"slack", robimp::to_string(c.slack)}});
      }
      j["constraints"] = std::move(checks);
      ok               = report.all_pass();
    }
    auto const variant = variant_of(Json::object(), mech);
    if (variant != robimp::StrategyVariant::kFull)
    {
      auto const cert = robimp::gamma_dominance_threshold(mech, sc, variant, sc.max_cost());
      j["variant"]    = variant_name(variant);
      j["gamma"]      = robimp::to_string(cert.gamma);
      j["gamma_below_half"] = cert.below_half();
      ok                    = ok && cert.below_half();
    }
    j["pass"] = ok;
    *out      = copy_out(j.dump(2));
  });
}

void robimp_mechanism_free(robimp_mechanism *mechanism)
{
  delete mechanism;
}

robimp_status robimp_equilibrium_check(robimp_scenario const *scenario, robimp_mechanism const *mechanism,
                                       char const *options_json, char **out)
{
  return guarded([&] {
    need(scenario, "scenario");
    need(mechanism, "mechanism");
    need(out, "out");
    Json const opts    = options_of(options_json);
    auto const game    = game_of(scenario, mechanism, opts);
    auto const variant = variant_of(opts, mechanism->mechanism);
    auto const profile = profile_of(game, opts);
    auto const report  = robimp::verify_equilibrium(game, profile, robimp::strategy_sets(game, variant));
    Json       j       = report_json(report);
    j["variant"]       = variant_name(variant);
    *out               = copy_out(j.dump(2));
  });
}

robimp_status robimp_equilibrium_br_iterate(robimp_scenario const *scenario, robimp_mechanism const *mechanism,
                                            char const *options_json, char **out)
{
  return guarded([&] {
    need(scenario, "scenario");
    need(mechanism, "mechanism");
    need(out, "out");
    Json const opts    = options_of(options_json);
    auto const game    = game_of(scenario, mechanism, opts);
    auto const variant = variant_of(opts, mechanism->mechanism);
    auto const sets    = robimp::strategy_sets(game, variant);
    auto const it      = robimp::iterate_best_response(game, profile_of(game, opts), sets);
    Json       j{{"variant", variant_name(variant)},
                 {"converged", it.converged},
                 {"cycled", it.cycled},
                 {"fallback", it.fallback},
                 {"rounds", it.rounds}};
    j["report"]  = report_json(robimp::verify_equilibrium(game, it.profile, sets));
    j["profile"] = profile_json(it.profile);
    *out         = copy_out(j.dump(2));
  });
}

robimp_status robimp_dominance_gamma(robimp_scenario const *scenario, robimp_mechanism const *mechanism,
                                     char const *options_json, char **out)
{
  return guarded([&] {
    need(scenario, "scenario");
    need(mechanism, "mechanism");
    need(out, "out");
    Json const  opts    = options_of(options_json);
    auto const &sc      = scenario->file.scenario;
    auto const  variant = variant_of(opts, mechanism->mechanism);
    Rational const cost = opts.contains("cost") ? rational_field(opts, "cost") : sc.max_cost();
    auto const cert     = robimp::gamma_dominance_threshold(mechanism->mechanism, sc, variant, cost);
    Json       witness  = Json::array();
    for (auto const &w : cert.witness)
    {
      witness.push_back({{"agent", w.agent + 1},
                         {"deviation", w.deviation},
                         {"at_truth", robimp::to_string(w.at_truth)},
                         {"worst", robimp::to_string(w.worst)}});
    }
    Json j{{"variant", variant_name(variant)},
           {"cost", robimp::to_string(cost)},
           {"gamma", robimp::to_string(cert.gamma)},
           {"below_half", cert.below_half()},
           {"witness", witness}};
    *out = copy_out(j.dump(2));
  });
}

robimp_status robimp_dominance_eliminate(robimp_scenario const *scenario, robimp_mechanism const *mechanism,
                                         char const *options_json, char **out)
{
  return guarded([&] {
    need(scenario, "scenario");
    need(mechanism, "mechanism");
    need(out, "out");
    Json const opts    = options_of(options_json);
    auto const game    = game_of(scenario, mechanism, opts);
    auto const variant = variant_of(opts, mechanism->mechanism);
    robimp::DominanceOptions dopt;
    dopt.pair_mixtures = opts.value("pair_mixtures", true);
    auto const res     = robimp::iterated_dominance(game, robimp::strategy_sets(game, variant), dopt);
    Json       agents  = Json::array();
    bool       unique  = true;
    for (std::size_t a = 0; a < robimp::kAgents; ++a)
    {
      Json types = Json::array();
      for (auto const &survivors : res.surviving[a])
      {
        types.push_back(survivors);
        unique = unique && survivors.size() == 1;
      }
      agents.push_back(std::move(types));
    }
    Json j{{"variant", variant_name(variant)}, {"rounds", res.rounds}, {"unique", unique}, {"surviving", agents}};
    *out = copy_out(j.dump(2));
  });
}

size_t robimp_experiment_count(void)
{
  return robimp::experiment_names().size();
}

char const *robimp_experiment_name(size_t index)
{
  static std::vector<std::string> const names = robimp::experiment_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

robimp_status robimp_experiment_run(char const *name, robimp_scenario const *scenario, char const *options_json,
                                    robimp_result **out)
{
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    Json const                opts = options_of(options_json);
    robimp::ExperimentOptions options;
    if (scenario != nullptr)
    {
      options.scenario     = scenario->file.scenario;
      options.perturbation = scenario->file.perturbation;
      options.eta_grid     = scenario->file.eta_grid;
      if (scenario->file.seed)
      {
        options.seed = *scenario->file.seed;
      }
      if (scenario->file.perturbation)
      {
        options.depth = scenario->file.perturbation->depth;
      }
    }
    if (opts.contains("eta_grid"))
    {
      options.eta_grid.clear();
      for (auto const &v : opts["eta_grid"])
      {
        options.eta_grid.push_back(v.is_number_integer() ? Rational(v.get<long>())
                                                         : robimp::parse_rational(v.get<std::string>()));
      }
    }
    if (opts.contains("seed"))
    {
      options.seed = opts["seed"].get<std::uint64_t>();
    }
    if (opts.contains("depth"))
    {
      options.depth = opts["depth"].get<std::size_t>();
    }
    *out = new robimp_result{robimp::run_experiment(name, options)};
  });
}

int robimp_result_passed(robimp_result const *result)
{
  return result != nullptr && result->result.pass() ? 1 : 0;
}

robimp_status robimp_result_json(robimp_result const *result, char **out)
{
  return guarded([&] {
    need(result, "result");
    need(out, "out");
    *out = copy_out(result->result.to_json().dump(2) + "\n");
  });
}

robimp_status robimp_result_csv(robimp_result const *result, char **out)
{
  return guarded([&] {
    need(result, "result");
    need(out, "out");
    *out = copy_out(result->result.to_csv());
  });
}

void robimp_result_free(robimp_result *result)
{
  delete result;
}

}  // extern "C"
