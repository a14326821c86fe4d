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

#include "robimp/experiments.hpp"

#include "robimp/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace robimp {

Json to_json(Rational const &value)
{
  return to_string(value);
}

Json to_json(std::vector<Rational> const &values)
{
  Json out = Json::array();
  for (auto const &v : values)
  {
    out.push_back(to_string(v));
  }
  return out;
}

bool ExperimentResult::pass() const
{
  return std::all_of(certificates.begin(), certificates.end(), [](Certificate const &c) { return c.pass; });
}

Json ExperimentResult::to_json() const
{
  Json out;
  out["name"]       = name;
  out["pass"]       = pass();
  out["parameters"] = parameters;
  Json certs        = Json::array();
  for (auto const &c : certificates)
  {
    certs.push_back({{"claim", c.claim}, {"pass", c.pass}, {"witness", c.witness}});
  }
  out["certificates"] = std::move(certs);
  out["artifacts"]    = artifacts;
  return out;
}

std::string ExperimentResult::to_csv() const
{
  std::ostringstream out;
  for (std::size_t i = 0; i < csv_columns.size(); ++i)
  {
    out << (i ? "," : "") << csv_columns[i];
  }
  out << '\n';
  for (auto const &row : csv_rows)
  {
    for (std::size_t i = 0; i < row.size(); ++i)
    {
      out << (i ? "," : "") << row[i];
    }
    out << '\n';
  }
  return out.str();
}

Certificate const &ExperimentResult::certificate(std::string const &claim) const
{
  for (auto const &c : certificates)
  {
    if (c.claim == claim)
    {
      return c;
    }
  }
  fail(ErrorCode::kInvalidArgument, "no certificate named '" + claim + "'");
}

void ExperimentResult::certify(std::string claim, bool pass, Json witness)
{
  certificates.push_back({std::move(claim), pass, std::move(witness)});
}

Scenario binary_scenario(Rational const &cost, Rational const &innocent)
{
  StateSpace   states{{"innocent", "guilty"}, {innocent, Rational(1 - innocent)}};
  OutcomeSpace outcomes{{"acquit", "convict"}};
  PayoffMatrix zero(2, std::vector<Rational>(2, Rational(0)));
  return Scenario::create(states, outcomes, {pure_lottery(2, 0), pure_lottery(2, 1)},
                          {AgentPayoff{zero, cost}, AgentPayoff{zero, cost}});
}

Scenario ladder_scenario(std::vector<Rational> const &prior, Rational const &cost)
{
  std::size_t const    n = prior.size();
  StateSpace           states;
  OutcomeSpace         outcomes;
  std::vector<Lottery> scf;
  for (std::size_t i = 0; i < n; ++i)
  {
    states.labels.push_back("theta" + std::to_string(i + 1));
    outcomes.labels.push_back("y" + std::to_string(i + 1));
    scf.push_back(pure_lottery(n, i));
  }
  states.prior = prior;
  PayoffMatrix zero(n, std::vector<Rational>(n, Rational(0)));
  return Scenario::create(states, outcomes, scf, {AgentPayoff{zero, cost}, AgentPayoff{zero, cost}});
}

Json scenario_json(Scenario const &sc)
{
  Json out;
  out["states"]   = sc.states().labels;
  out["prior"]    = to_json(sc.states().prior);
  out["outcomes"] = sc.outcomes().labels;
  Json scf        = Json::array();
  for (auto const &l : sc.scf())
  {
    scf.push_back(to_json(l));
  }
  out["scf"]   = std::move(scf);
  out["costs"] = {to_string(sc.payoff(0).cost), to_string(sc.payoff(1).cost)};
  return out;
}

namespace {

Json schedule_json(Mechanism const &mech)
{
  Json out = Json::object();
  if (!mech.schedule())
  {
    return out;
  }
  auto const &s = *mech.schedule();
  if (s.base)
  {
    out["R0"] = to_string(*s.base);
  }
  out["R"] = to_json(s.ascending);
  if (s.penalty)
  {
    out["x"] = to_string(*s.penalty);
  }
  out["cost_bound"] = to_string(s.cost_bound);
  return out;
}

Json constraints_json(ConstraintReport const &report)
{
  Json out = Json::array();
  for (auto const &c : report.checks)
  {
    out.push_back({{"name", c.name}, {"pass", c.pass}, {"strict", c.strict}, {"slack", to_string(c.slack)}});
  }
  return out;
}

std::vector<Rational> eta_grid_or(ExperimentOptions const &options, std::vector<Rational> fallback)
{
  return options.eta_grid.empty() ? fallback : options.eta_grid;
}

/// Outcome carrying the most weight in f(theta).
std::size_t main_outcome(Scenario const &sc, std::size_t state)
{
  auto const &l = sc.scf()[state];
  return static_cast<std::size_t>(std::max_element(l.begin(), l.end()) - l.begin());
}

Rational top_reward(Mechanism const &mech)
{
  return mech.schedule() ? mech.schedule()->ascending.back() : mech.max_abs_transfer();
}

struct Family
{
  std::string           name;
  std::vector<BiasSpec> biases;
  std::optional<PerturbationSpec> spec;
};

/// Default bias families on circumstance 0 for agent 1: a bonus for the status
/// quo outcome and a bonus for the outcome of the last state.
std::vector<Family> default_families(Scenario const &sc, Rational const &bonus,
                                     std::optional<Rational> conviction_cost = std::nullopt)
{
  std::size_t const n = sc.num_states();
  return {
      {"acquittal", {outcome_bias(sc, 0, 0, main_outcome(sc, 0), bonus)}, std::nullopt},
      {"conviction", {outcome_bias(sc, 0, 0, main_outcome(sc, n - 1), bonus, conviction_cost)}, std::nullopt},
  };
}

Perturbation family_ladder(Scenario const &sc, Family const &family, std::size_t depth, Rational const &eta,
                           TailConvention tail)
{
  if (family.spec)
  {
    return family.spec->build(sc, eta);
  }
  return build_ladder(sc, depth, eta, family.biases, tail);
}

std::string bool_text(bool b)
{
  return b ? "true" : "false";
}

/// Game-level check that every positive type prefers (-k,..,-k) to (k,..,k).
bool constant_negatives_preferred(Game const &game, Profile const &profile, Json &witness)
{
  std::size_t const n = game.scenario().num_states();
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    auto const        opp = game.behaviors(1 - a, profile);
    std::size_t const X   = game.num_realizations(a);
    for (std::size_t k = 0; k < game.perturbation().num_types(a); ++k)
    {
      if (!game.positive_type(a, k))
      {
        continue;
      }
      auto const interim = game.interim(a, k, opp);
      for (int m = 2; m <= static_cast<int>(n); ++m)
      {
        Rational const neg = game.value_of(interim, a, PureStrategy(X, -m));
        Rational const pos = game.value_of(interim, a, PureStrategy(X, m));
        if (!(neg > pos))
        {
          witness = {{"agent", a + 1}, {"type", k}, {"k", m}, {"negative", to_string(neg)},
                     {"positive", to_string(pos)}};
          return false;
        }
      }
    }
  }
  return true;
}

struct LadderRun
{
  IterationResult   iteration;
  EquilibriumReport restricted;
  EquilibriumReport full;
  Rational          eta;
  Rational          tail;
};

LadderRun run_ladder(Game const &game, StrategySets const &restricted, StrategySets const &full)
{
  LadderRun run;
  run.iteration  = iterate_best_response(game, truthful_profile(game), restricted);
  run.restricted = verify_equilibrium(game, run.iteration.profile, restricted);
  run.full       = verify_equilibrium(game, run.iteration.profile, full);
  run.eta        = eta_of(game.perturbation());
  run.tail       = game.perturbation().tail_mass();
  return run;
}

/// Ladder sweeps shared by the first two theorems.
struct Sweep
{
  bool equilibria{true};
  bool closure{true};
  Json records = Json::array();
};

Sweep sweep_families(ExperimentResult &result, Scenario const &sc, Mechanism const &mech,
                     StrategyVariant variant, std::vector<Family> const &families,
                     std::vector<Rational> const &grid, std::size_t depth, TailConvention tail,
                     std::function<void(Game const &, LadderRun const &, Json &)> extra = {})
{
  Sweep sweep;
  for (auto const &family : families)
  {
    Json                  tv_series = Json::array();
    std::optional<Rational> previous;
    bool                  monotone = true;
    for (auto const &eta : grid)
    {
      Game const game(sc, mech, family_ladder(sc, family, depth, eta, tail));
      auto const restricted = strategy_sets(game, variant);
      auto const full       = strategy_sets(game, StrategyVariant::kFull);
      auto const run        = run_ladder(game, restricted, full);
      bool const eq         = run.iteration.converged && run.restricted.equilibrium();
      bool const closed     = run.full.equilibrium();
      sweep.equilibria      = sweep.equilibria && eq;
      sweep.closure         = sweep.closure && closed;
      if (previous && run.full.max_tv < *previous)
      {
        monotone = false;
      }
      previous = run.full.max_tv;
      Json rec{{"family", family.name},
               {"eta", to_string(eta)},
               {"eta_of", to_string(run.eta)},
               {"tail_mass", to_string(run.tail)},
               {"converged", run.iteration.converged},
               {"rounds", run.iteration.rounds},
               {"fallback", run.iteration.fallback},
               {"restricted_residual", to_string(run.restricted.max_residual)},
               {"full_residual", to_string(run.full.max_residual)},
               {"truthful_mass", to_string(run.restricted.truthful_mass)},
               {"max_tv", to_string(run.restricted.max_tv)}};
      if (extra)
      {
        extra(game, run, rec);
      }
      result.csv_rows.push_back({family.name, to_string(eta), to_string(run.restricted.truthful_mass),
                                 to_string(run.restricted.max_tv), to_string(run.restricted.max_residual),
                                 to_string(run.full.max_residual), bool_text(run.iteration.converged)});
      tv_series.push_back(to_string(run.restricted.max_tv));
      sweep.records.push_back(std::move(rec));
    }
    result.artifacts["tv_non_decreasing_in_eta"][family.name] = monotone;
    result.artifacts["max_tv_by_eta"][family.name]            = std::move(tv_series);
  }
  return sweep;
}

std::vector<Family> families_for(ExperimentOptions const &options, Scenario const &sc, Rational const &bonus,
                                 std::optional<Rational> conviction_cost = std::nullopt)
{
  if (options.perturbation)
  {
    return {{"scenario", options.perturbation->biases, options.perturbation}};
  }
  return default_families(sc, bonus, std::move(conviction_cost));
}

Scenario scenario_or(ExperimentOptions const &options, Scenario fallback)
{
  return options.scenario ? *options.scenario : std::move(fallback);
}

void record_common(ExperimentResult &result, Scenario const &sc, Mechanism const &mech)
{
  result.parameters["scenario"]  = scenario_json(sc);
  result.parameters["mechanism"] = mechanism_kind_name(mech.kind());
  result.parameters["schedule"]  = schedule_json(mech);
}

std::vector<std::string> const kSweepColumns{"family",        "eta",           "truthful_mass", "max_tv",
                                             "restricted_residual", "full_residual", "converged"};

}  // namespace

ReplacementCheck check_replacement(Mechanism const &mechanism, Scenario const &scenario,
                                   StrategyVariant variant, Rational const &cost)
{
  Scenario const sc = scenario.with_costs(cost, cost);
  Game const     game(sc, mechanism, Perturbation::trivial(sc));
  auto const     restricted = strategy_sets(game, variant);
  auto const     full       = strategy_sets(game, StrategyVariant::kFull);
  std::size_t const n       = sc.num_states();

  ReplacementCheck out;
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    std::size_t const o = 1 - a;
    auto const        opponents = restricted[o].enumerate();
    for (auto const &s : full[a].enumerate())
    {
      if (restricted[a].contains(s))
      {
        continue;
      }
      auto const rep      = canonical_replacement(s, variant, game.signals(), a);
      bool const constant = is_constant(s) && s.front() >= 2;
      for (auto const &sp : opponents)
      {
        Profile original = uniform_profile(game.perturbation(), pure(s), pure(s));
        original[o][0]   = pure(sp);
        Profile replaced = original;
        replaced[a][0]   = pure(rep);
        bool same        = true;
        for (std::size_t th = 0; th < n && same; ++th)
        {
          same = game.outcome_distribution(original, th) == game.outcome_distribution(replaced, th);
        }
        Rational const before = game.expected_payoff(a, 0, s, original);
        Rational const after  = game.expected_payoff(a, 0, rep, original);
        ++out.checked;
        bool bad = !same || after < before;
        if (constant)
        {
          ++out.strict_checked;
          if (!(after > before))
          {
            ++out.strict_violations;
            bad = true;
          }
        }
        if (bad)
        {
          ++out.violations;
          if (out.first_violation.is_null())
          {
            out.first_violation = {{"agent", a + 1},         {"strategy", s},
                                   {"replacement", rep},     {"opponent", sp},
                                   {"same_outcomes", same},  {"payoff", to_string(before)},
                                   {"replacement_payoff", to_string(after)}};
          }
        }
      }
    }
  }
  return out;
}

DeviationCheck check_negative_replacement(Game const &game)
{
  auto const   &pert       = game.perturbation();
  auto const    restricted = strategy_sets(game, StrategyVariant::kSigned);
  DeviationCheck out;
  bool           first = true;
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    std::size_t const o         = 1 - a;
    auto const        opponents = restricted[o].enumerate();
    for (std::size_t w = 0; w < pert.num_circumstances(); ++w)
    {
      std::size_t const tab = pert.payoff_index(a, w);
      for (std::size_t x = 0; x < game.num_realizations(a); ++x)
      {
        auto const &allowed = restricted[a].allowed(x);
        for (int m : game.mechanism().messages(a))
        {
          if (m < 2 || std::find(allowed.begin(), allowed.end(), m) != allowed.end() ||
              !game.mechanism().has_message(a, -m))
          {
            continue;
          }
          std::size_t const pm = game.message_index(a, m);
          std::size_t const nm = game.message_index(a, -m);
          for (auto const &sp : opponents)
          {
            Rational gain(0);  // of m over -m
            for (std::size_t xo = 0; xo < game.num_realizations(o); ++xo)
            {
              std::size_t const mo = game.message_index(o, sp[xo]);
              gain += game.kernel(a, tab, x, pm, xo, mo) - game.kernel(a, tab, x, nm, xo, mo);
            }
            ++out.checked;
            if (first || gain > out.worst_gain)
            {
              out.worst_gain = gain;
              first          = false;
            }
            if (gain > 0)
            {
              ++out.violations;
              if (out.first_violation.is_null())
              {
                out.first_violation = {{"agent", a + 1}, {"realization", x}, {"intent", m},
                                       {"opponent", sp}, {"gain", to_string(gain)}};
              }
            }
          }
        }
      }
    }
  }
  return out;
}

ExperimentResult run_theorem1(ExperimentOptions const &options)
{
  ExperimentResult result;
  result.name           = "thm1";
  Scenario const  sc    = scenario_or(options, binary_scenario());
  Rational const  cbar  = sc.max_cost();
  Mechanism const mech  = build_status_quo(sc, cbar);
  std::size_t const depth = options.depth.value_or(options.perturbation ? options.perturbation->depth : 100);
  auto const grid       = eta_grid_or(options, {Rational(1, 1000), Rational(1, 100), Rational(1, 20), Rational(1, 10)});
  record_common(result, sc, mech);
  result.parameters["cost_bound"] = to_string(cbar);
  result.parameters["depth"]      = depth;
  result.parameters["eta_grid"]   = to_json(grid);
  result.csv_columns              = kSweepColumns;

  auto const constraints = check_reward_constraints(*mech.schedule(), sc.states().prior, cbar, mech.kind());
  result.certify("reward constraints", constraints.all_pass(), constraints_json(constraints));

  auto const gamma = gamma_dominance_threshold(mech, sc, StrategyVariant::kStatusQuo, cbar);
  result.certify("gamma below one half", gamma.below_half(),
                 {{"gamma", to_string(gamma.gamma)}, {"slack_at_half", to_string(gamma.slack(Rational(1, 2)))}});
  result.artifacts["gamma"] = to_string(gamma.gamma);

  {
    Scenario const base = sc.with_costs(cbar, cbar);
    Game const     game(base, mech, Perturbation::trivial(base));
    auto const     br = best_response(game, 0, 0, truthful_profile(game), strategy_sets(game, StrategyVariant::kFull)[0]);
    auto const     br2 =
        best_response(game, 1, 0, truthful_profile(game), strategy_sets(game, StrategyVariant::kFull)[1]);
    bool const strict = br.argmax.size() == 1 && br.argmax.front() == truthful_strategy(game.signals(), 0) &&
                        br2.argmax.size() == 1 && br2.argmax.front() == truthful_strategy(game.signals(), 1);
    result.certify("unperturbed truthful strict equilibrium", strict);
  }

  Rational const bonus    = 10 * top_reward(mech);
  auto const     families = families_for(options, sc, bonus);
  TailConvention tail     = options.perturbation ? options.perturbation->tail : TailConvention::kLump;
  auto           sweep    = sweep_families(result, sc, mech, StrategyVariant::kStatusQuo, families, grid, depth, tail);
  result.certify("restricted equilibria on ladders", sweep.equilibria);
  result.certify("step 3 closure on the full strategy set", sweep.closure);
  result.artifacts["ladders"] = std::move(sweep.records);

  if (!options.perturbation)
  {
    bool ok  = true;
    Json rec = Json::array();
    for (auto const &b : {Rational(10), Rational(1000), Rational(1'000'000)})
    {
      for (auto const &eta : grid)
      {
        Game const game(sc, mech,
                        build_ladder(sc, depth, eta, {outcome_bias(sc, 0, 0, main_outcome(sc, sc.num_states() - 1), b)}));
        auto const rep = verify_equilibrium(game, truthful_profile(game), strategy_sets(game, StrategyVariant::kFull));
        ok             = ok && rep.equilibrium();
        rec.push_back({{"bonus", to_string(b)}, {"eta", to_string(eta)}, {"max_residual", to_string(rep.max_residual)}});
      }
    }
    result.certify("conviction bias leaves truthful an equilibrium", ok, rec);
  }

  auto const replacement = check_replacement(mech, sc, StrategyVariant::kStatusQuo, cbar);
  result.certify("replacement dominance", replacement.violations == 0,
                 {{"checked", replacement.checked}, {"violations", replacement.violations},
                  {"first_violation", replacement.first_violation}});
  return result;
}

namespace {

/// Certifies the n = 3 augmented tables against an independent rendering of
/// the outcome and transfer rules.
bool augmented_tables_match(Mechanism const &mech, Scenario const &sc, Json &tables)
{
  auto const &R       = *mech.schedule();
  bool        ok      = true;
  Json        outcome = Json::array();
  Json        money   = Json::array();
  for (int m1 : mech.messages(0))
  {
    Json orow = Json::array();
    Json trow = Json::array();
    for (int m2 : mech.messages(1))
    {
      std::size_t const state = std::abs(m1) == std::abs(m2) ? std::abs(m1) - 1 : 0;
      Rational          t(0);
      if (m1 == m2 && m1 >= 1)
      {
        t = R.reward(m1);
      }
      else if (m1 <= 1 && m2 <= 1)
      {
        t = R.reward(0);
      }
      ok = ok && mech.outcome(m1, m2) == sc.scf()[state] && mech.transfer(0, m1, m2) == t &&
           mech.transfer(1, m1, m2) == t;
      orow.push_back(sc.states().labels[state]);
      trow.push_back(to_string(mech.transfer(0, m1, m2)));
    }
    outcome.push_back(std::move(orow));
    money.push_back(std::move(trow));
  }
  tables = {{"messages", mech.messages(0)}, {"outcome_state", outcome}, {"transfer", money}};
  return ok;
}

}  // namespace

ExperimentResult run_theorem2(ExperimentOptions const &options)
{
  ExperimentResult result;
  result.name          = "thm2";
  Scenario const sc    = scenario_or(options, binary_scenario());
  require(sc.generic(), ErrorCode::kNonGeneric, "the augmented rule needs a generic prior");
  Rational const  c    = sc.max_cost();
  Mechanism const mech = build_augmented_status_quo(sc);
  std::size_t const depth = options.depth.value_or(options.perturbation ? options.perturbation->depth : 100);
  auto const grid = eta_grid_or(options, {Rational(1, 1000), Rational(1, 100), Rational(1, 20), Rational(1, 10)});
  Rational const cost_cap = 1'000'000 * c;
  record_common(result, sc, mech);
  result.parameters["depth"]    = depth;
  result.parameters["eta_grid"] = to_json(grid);
  result.parameters["cost_cap"] = to_string(cost_cap);
  result.csv_columns            = kSweepColumns;

  auto const constraints = check_reward_constraints(*mech.schedule(), sc.states().prior, c, mech.kind());
  result.certify("reward constraints", constraints.all_pass(), constraints_json(constraints));

  auto const gamma = gamma_dominance_threshold(mech, sc, StrategyVariant::kSigned, c);
  result.certify("gamma below one half", gamma.below_half(),
                 {{"gamma", to_string(gamma.gamma)}, {"slack_at_half", to_string(gamma.slack(Rational(1, 2)))}});
  result.artifacts["gamma"] = to_string(gamma.gamma);

  // Worst case over restricted opponents: Pr(m2 = k) <= q_k, Pr(m2 <= 1) >= 1 - q_k.
  {
    auto const &R  = *mech.schedule();
    bool        ok = true;
    Json        w  = Json::array();
    for (std::size_t k = 2; k <= sc.num_states(); ++k)
    {
      Rational const lhs = sc.prior(k - 1) * R.reward(k);
      Rational const rhs = (1 - sc.prior(k - 1)) * R.reward(0);
      ok                 = ok && lhs < rhs;
      w.push_back({{"k", k}, {"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}});
    }
    result.certify("constant deviation bound", ok, w);
  }

  Rational const bonus    = 10 * top_reward(mech);
  auto const     families = families_for(options, sc, bonus, cost_cap);
  TailConvention tail     = options.perturbation ? options.perturbation->tail : TailConvention::kLump;
  bool           constants_ok = true;
  Json           constants_witness;
  auto           sweep = sweep_families(result, sc, mech, StrategyVariant::kSigned, families, grid, depth, tail,
                                        [&](Game const &game, LadderRun const &run, Json &rec) {
                                bool ok = constant_negatives_preferred(game, run.iteration.profile,
                                                                       constants_witness);
                                rec["negatives_preferred"] = ok;
                                constants_ok               = constants_ok && ok;
                              });
  result.certify("restricted equilibria on ladders", sweep.equilibria);
  result.certify("step 3 closure on the full strategy set", sweep.closure);
  result.certify("constant deviations lose at equilibrium", constants_ok,
                 constants_witness.is_null() ? Json::object() : constants_witness);
  result.artifacts["ladders"] = std::move(sweep.records);

  // The status quo rule under the same high-cost bias unravels.
  if (!options.perturbation && sc.num_states() == 2)
  {
    Mechanism const sqr = build_status_quo(sc, c);
    bool            ok  = true;
    Json            rec = Json::array();
    for (auto const &eta : grid)
    {
      Game const game(sc, sqr,
                      build_ladder(sc, depth, eta,
                                   {outcome_bias(sc, 0, 0, main_outcome(sc, 1), 10 * top_reward(sqr), cost_cap)},
                                   TailConvention::kRenormalize));
      auto const full = strategy_sets(game, StrategyVariant::kFull);
      auto const it   = iterate_best_response(game, truthful_profile(game), full);
      auto const rep  = verify_equilibrium(game, it.profile, full);
      bool const contagion = it.converged && rep.equilibrium() && rep.truthful_mass <= Rational(1, 2);
      ok                   = ok && contagion;
      rec.push_back({{"eta", to_string(eta)}, {"converged", it.converged},
                     {"truthful_mass", to_string(rep.truthful_mass)}, {"max_tv", to_string(rep.max_tv)}});
    }
    result.certify("status quo rule contagion under high-cost bias", ok, rec);
  }

  {
    Scenario const three = ladder_scenario({Rational(1, 2), Rational(3, 10), Rational(1, 5)}, c);
    Mechanism const m3   = build_augmented_status_quo(three);
    Json            tables;
    bool const      ok = augmented_tables_match(m3, three, tables);
    result.artifacts["tables_n3"] = tables;
    result.certify("n=3 tables", ok);
    auto const rep3 = check_replacement(m3, three, StrategyVariant::kSigned, c);
    result.certify("n=3 replacement dominance", rep3.violations == 0,
                   {{"checked", rep3.checked}, {"strict_checked", rep3.strict_checked},
                    {"violations", rep3.violations}, {"first_violation", rep3.first_violation}});
  }

  auto const replacement = check_replacement(mech, sc, StrategyVariant::kSigned, c);
  result.certify("replacement dominance", replacement.violations == 0,
                 {{"checked", replacement.checked}, {"strict_checked", replacement.strict_checked},
                  {"violations", replacement.violations}, {"first_violation", replacement.first_violation}});
  return result;
}

namespace {

/// Interim comparisons at truthful intent: at meaning j >= 2 intent j beats
/// every message <= 1, at meaning 1 intent 1 beats every negative message.
bool truthful_message_incentives(Game const &game, Json &witness)
{
  Profile const profile = truthful_profile(game);
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    auto const interim = game.interim(a, 0, game.behaviors(1 - a, profile));
    for (std::size_t x = 0; x < game.num_realizations(a); ++x)
    {
      int const         j  = static_cast<int>(game.signals().meaning[a][x]) + 1;
      Rational const   &tv = interim.value[x][game.message_index(a, j)];
      for (int m : game.mechanism().messages(a))
      {
        bool const rival = j >= 2 ? m <= 1 : m < 0;
        if (rival && !(tv > interim.value[x][game.message_index(a, m)]))
        {
          witness = {{"agent", a + 1}, {"realization", x}, {"truthful", j}, {"rival", m}};
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

ExperimentResult run_theorem3(ExperimentOptions const &options)
{
  ExperimentResult result;
  result.name       = "thm3";
  Scenario const sc = scenario_or(options, ladder_scenario({Rational(1, 2), Rational(3, 10), Rational(1, 5)}));
  require(sc.generic(), ErrorCode::kNonGeneric, "the modified rule needs a generic prior");
  require(sc.num_states() >= 2, ErrorCode::kInvalidArgument, "at least two states are required");
  Rational const  tau  = Rational(1, 100);
  Rational const  flip = tau / 4;
  Mechanism const asqr = build_augmented_status_quo(sc);
  Mechanism const msqr = build_modified_status_quo(sc);
  std::size_t const depth = options.depth.value_or(options.perturbation ? options.perturbation->depth : 100);
  auto const grid  = eta_grid_or(options, {Rational(1, 100)});
  record_common(result, sc, msqr);
  result.parameters["augmented_schedule"] = schedule_json(asqr);
  result.parameters["tau"]                = to_string(tau);
  result.parameters["tremble_target"]     = 2;
  result.parameters["signal_flip"]        = to_string(flip);
  result.parameters["depth"]              = depth;
  result.parameters["eta_grid"]           = to_json(grid);
  result.csv_columns = {"mechanism", "tau", "checked", "violations", "worst_gain"};

  auto const constraints =
      check_reward_constraints(*msqr.schedule(), sc.states().prior, sc.max_cost(), msqr.kind());
  result.certify("reward constraints", constraints.all_pass(), constraints_json(constraints));

  auto tremble_for = [&](Mechanism const &mech, Rational const &t) {
    TrembleSpec spec;
    spec.tau      = t;
    spec.noise[1] = point_mass_noise(mech, 1, 2);
    return spec;
  };
  auto const revealing = perfectly_revealing(sc.states().prior);

  std::map<std::pair<std::string, std::string>, DeviationCheck> checks;
  for (auto const &t : {Rational(0), tau})
  {
    for (auto const *mech : {&asqr, &msqr})
    {
      Game const game(sc, *mech, Perturbation::trivial(sc), revealing, tremble_for(*mech, t));
      auto       check = check_negative_replacement(game);
      std::string const name = mechanism_kind_name(mech->kind());
      result.csv_rows.push_back({name, to_string(t), std::to_string(check.checked),
                                 std::to_string(check.violations), to_string(check.worst_gain)});
      checks[{name, to_string(t)}] = std::move(check);
    }
  }
  auto witness = [](DeviationCheck const &d) {
    return Json{{"checked", d.checked}, {"violations", d.violations}, {"worst_gain", to_string(d.worst_gain)},
                {"first_violation", d.first_violation}};
  };
  auto const &a0 = checks.at({"asqr", "0"});
  auto const &at = checks.at({"asqr", to_string(tau)});
  auto const &mt = checks.at({"msqr", to_string(tau)});
  result.certify("augmented rule replacement holds without trembles", a0.violations == 0, witness(a0));
  result.certify("augmented rule replacement fails under trembles", at.violations > 0, witness(at));
  result.certify("modified rule replacement holds under trembles", mt.violations == 0, witness(mt));

  // Truthful intent on noisy signals and trembles.
  auto const noisy = symmetric_noise(sc.states().prior, flip);
  Rational const size = size_of_signal_structure(noisy, sc.states().prior);
  result.artifacts["signal_size"] = to_string(size);
  result.certify("signal structure size within tau", size <= tau, {{"size", to_string(size)}});
  bool eq_ok = true;
  Json eq    = Json::array();
  for (auto const *signals : {&revealing, &noisy})
  {
    Game const game(sc, msqr, Perturbation::trivial(sc), *signals, tremble_for(msqr, tau));
    auto const rep = verify_equilibrium(game, truthful_profile(game), strategy_sets(game, StrategyVariant::kFull));
    Json       w;
    bool const inc = truthful_message_incentives(game, w);
    eq_ok          = eq_ok && rep.equilibrium() && inc && rep.max_tv <= 2 * (tau + size);
    eq.push_back({{"signals", signals == &revealing ? "revealing" : "noisy"},
                  {"max_residual", to_string(rep.max_residual)},
                  {"max_tv", to_string(rep.max_tv)},
                  {"message_incentives", inc},
                  {"witness", w}});
  }
  result.certify("modified rule truthful intent is an equilibrium", eq_ok, eq);

  // Perturbed restricted game with trembles and noise.
  {
    bool ok  = true;
    Json rec = Json::array();
    std::vector<Family> families =
        options.perturbation ? std::vector<Family>{{"scenario", options.perturbation->biases, options.perturbation}}
                             : std::vector<Family>{{"conviction",
                                                    {outcome_bias(sc, 0, 0, main_outcome(sc, sc.num_states() - 1),
                                                                  10 * top_reward(msqr), 1'000'000 * sc.max_cost())},
                                                    std::nullopt}};
    for (auto const &family : families)
    {
      for (auto const &eta : grid)
      {
        Game const game(sc, msqr, family_ladder(sc, family, depth, eta, TailConvention::kLump), noisy,
                        tremble_for(msqr, tau));
        auto const run = run_ladder(game, strategy_sets(game, StrategyVariant::kSigned),
                                    strategy_sets(game, StrategyVariant::kFull));
        bool const good = run.iteration.converged && run.restricted.equilibrium() && run.full.equilibrium();
        ok              = ok && good;
        rec.push_back({{"family", family.name},
                       {"eta", to_string(eta)},
                       {"converged", run.iteration.converged},
                       {"restricted_residual", to_string(run.restricted.max_residual)},
                       {"full_residual", to_string(run.full.max_residual)},
                       {"truthful_mass", to_string(run.restricted.truthful_mass)},
                       {"max_tv", to_string(run.restricted.max_tv)}});
      }
    }
    result.certify("perturbed equilibria with trembles", ok, rec);
  }
  return result;
}

ExperimentResult run_maskin_contagion(ExperimentOptions const &options)
{
  ExperimentResult result;
  result.name           = "maskin-contagion";
  Scenario const  sc    = scenario_or(options, binary_scenario());
  require(sc.num_states() == 2, ErrorCode::kInvalidArgument, "the Maskin rule needs two states");
  Rational const  reward(10);
  Mechanism const mech  = build_maskin(sc, reward);
  Rational const  bonus = 10 * reward;
  std::size_t const depth = options.depth.value_or(options.perturbation ? options.perturbation->depth : 100);
  auto const grid = eta_grid_or(options, {Rational(1, 100), Rational(1, 20), Rational(1, 10)});
  result.parameters["scenario"] = scenario_json(sc);
  result.parameters["mechanism"] = "maskin";
  result.parameters["reward"]    = to_string(reward);
  result.parameters["bonus"]     = to_string(bonus);
  result.parameters["depth"]     = depth;
  result.parameters["tail"]      = "renormalize";
  result.parameters["eta_grid"]  = to_json(grid);
  result.csv_columns             = {"eta", "rounds", "unique", "max_tv"};

  PureStrategy const innocent(2, 1);
  bool               unique_all = true;
  bool               failing    = true;
  Json               rec        = Json::array();
  for (auto const &eta : grid)
  {
    Perturbation pert =
        options.perturbation
            ? options.perturbation->build(sc, eta)
            : build_ladder(sc, depth, eta, {outcome_bias(sc, 0, 0, main_outcome(sc, 0), bonus)},
                           TailConvention::kRenormalize);
    Game const game(sc, mech, std::move(pert));
    auto const sets = strategy_sets(game, StrategyVariant::kFull);
    auto const elim = iterated_dominance(game, sets, {false, 16});
    bool       unique = true;
    for (std::size_t a = 0; a < kAgents && unique; ++a)
    {
      for (std::size_t k = 0; k < game.perturbation().num_types(a) && unique; ++k)
      {
        unique = !game.positive_type(a, k) ||
                 (elim.surviving[a][k].size() == 1 && elim.surviving[a][k].front() == innocent);
      }
    }
    Profile const all_innocent = uniform_profile(game.perturbation(), pure(innocent), pure(innocent));
    auto const    rep          = verify_equilibrium(game, all_innocent, sets);
    unique_all                 = unique_all && unique && rep.equilibrium();
    failing                    = failing && rep.max_tv == 1;
    rec.push_back({{"eta", to_string(eta)}, {"rounds", elim.rounds}, {"unique_always_innocent", unique},
                   {"max_tv", to_string(rep.max_tv)}});
    result.csv_rows.push_back({to_string(eta), std::to_string(elim.rounds), bool_text(unique), to_string(rep.max_tv)});
  }
  result.certify("always innocent is the unique surviving strategy", unique_all, rec);
  result.certify("implemented outcome misses the guilty verdict", failing);
  return result;
}

std::vector<std::string> experiment_names()
{
  return {"thm1", "thm2", "thm3", "prop1", "prop2", "prop3", "maskin-contagion"};
}

ExperimentResult run_experiment(std::string const &name, ExperimentOptions const &options)
{
  ExperimentResult result;
  if (name == "thm1")
  {
    result = run_theorem1(options);
  }
  else if (name == "thm2")
  {
    result = run_theorem2(options);
  }
  else if (name == "thm3")
  {
    result = run_theorem3(options);
  }
  else if (name == "prop1")
  {
    result = run_prop1(options);
  }
  else if (name == "prop2")
  {
    result = run_prop2(options);
  }
  else if (name == "prop3")
  {
    result = run_prop3(options);
  }
  else if (name == "maskin-contagion")
  {
    result = run_maskin_contagion(options);
  }
  else
  {
    fail(ErrorCode::kInvalidArgument, "unknown experiment '" + name + "'");
  }
  result.parameters["seed"] = options.seed;
  return result;
}

}  // namespace robimp
