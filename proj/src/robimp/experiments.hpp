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
#pragma once

#include "robimp/equilibrium.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace robimp {

using Json = nlohmann::ordered_json;

struct Certificate
{
  std::string claim;
  bool        pass{false};
  Json        witness;
};

struct ExperimentResult
{
  std::string              name;
  Json                     parameters = Json::object();
  std::vector<Certificate> certificates;
  Json                     artifacts = Json::object();

  std::vector<std::string>              csv_columns;
  std::vector<std::vector<std::string>> csv_rows;

  bool        pass() const;
  Json        to_json() const;
  std::string to_csv() const;

  Certificate const &certificate(std::string const &claim) const;
  void               certify(std::string claim, bool pass, Json witness = Json::object());
};

struct ExperimentOptions
{
  std::optional<Scenario>         scenario;
  std::optional<PerturbationSpec> perturbation;
  std::vector<Rational>           eta_grid;  ///< empty selects the experiment default
  std::optional<std::size_t>      depth;
  std::uint64_t                   seed{1};
};

// Canonical scenarios.

/// Two states (innocent 7/10, guilty 3/10), pure verdicts, zero utilities.
Scenario binary_scenario(Rational const &cost = Rational(1), Rational const &innocent = Rational(7, 10));

/// n states with the given prior, one pure outcome per state, zero utilities.
Scenario ladder_scenario(std::vector<Rational> const &prior, Rational const &cost = Rational(1));

// Step-3 replacement checks.

struct ReplacementCheck
{
  std::size_t checked{0};
  std::size_t violations{0};         ///< payoff or outcome-equivalence failures
  std::size_t strict_checked{0};     ///< constant (k,...,k) cases, k >= 2
  std::size_t strict_violations{0};  ///< constant cases without strict gain
  Json        first_violation;
};

/// Every strategy outside the restricted set against every restricted opponent
/// pure strategy, in the unperturbed game with both costs at `cost`.
ReplacementCheck check_replacement(Mechanism const &mechanism, Scenario const &scenario,
                                   StrategyVariant variant, Rational const &cost);

/// Per realization check that intent -m earns at least as much as intent m
/// whenever m >= 2 is outside the restricted set, against every restricted
/// opponent pure strategy. Returns the violations found.
struct DeviationCheck
{
  std::size_t checked{0};
  std::size_t violations{0};
  Rational    worst_gain;  ///< largest gain of m over -m
  Json        first_violation;
};
DeviationCheck check_negative_replacement(Game const &game);

// Separation and Proposition 1.

struct SeparatingFunctional
{
  std::vector<Rational> v;  ///< per outcome, v(f(theta*)) == 0
  std::size_t           state{0};
  Rational              margin;
  Rational              scale;  ///< C
  Rational              bound;  ///< X(M)
};

SeparatingFunctional separating_functional(std::vector<Lottery> const &scf, Mechanism const &mechanism);

// Cyclical monotonicity and transfer synthesis.

struct MonotonicityCheck
{
  bool                     holds{false};
  std::vector<std::size_t> witness;  ///< violating permutation or cycle
};

/// Decided by enumerating permutations (n <= 8).
MonotonicityCheck cyclical_monotonicity_by_permutations(PayoffMatrix const &u, std::vector<Lottery> const &scf);

/// Decided by shortest paths and tight-cycle detection.
MonotonicityCheck cyclical_monotonicity_by_cycles(PayoffMatrix const &u, std::vector<Lottery> const &scf);

MonotonicityCheck check_strict_cyclical_monotonicity(PayoffMatrix const &u, std::vector<Lottery> const &scf);

std::vector<Rational> synthesize_transfers(PayoffMatrix const &u, std::vector<Lottery> const &scf);

struct TransferCheck
{
  bool     equal_on_classes{false};
  bool     strictly_implementable{false};
  Rational min_margin;
};
TransferCheck check_transfers(PayoffMatrix const &u, std::vector<Lottery> const &scf,
                              std::vector<Rational> const &t);

/// One-respondent mechanism: agent `agent` reports a state, the other agent
/// has a single message.
Mechanism one_respondent_mechanism(Scenario const &scenario, std::size_t agent,
                                   std::vector<Rational> const &t);

/// X(u_1, u_2).
Rational payoff_range(Scenario const &scenario);

// Experiments.

ExperimentResult run_theorem1(ExperimentOptions const &options);
ExperimentResult run_theorem2(ExperimentOptions const &options);
ExperimentResult run_theorem3(ExperimentOptions const &options);
ExperimentResult run_prop1(ExperimentOptions const &options);
ExperimentResult run_prop2(ExperimentOptions const &options);
ExperimentResult run_prop3(ExperimentOptions const &options);
ExperimentResult run_maskin_contagion(ExperimentOptions const &options);

std::vector<std::string> experiment_names();
ExperimentResult         run_experiment(std::string const &name, ExperimentOptions const &options);

/// Summary of a scenario in canonical state order.
Json scenario_json(Scenario const &scenario);

Json to_json(Rational const &value);
Json to_json(std::vector<Rational> const &values);

}  // namespace robimp
