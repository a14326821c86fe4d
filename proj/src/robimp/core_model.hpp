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

#include "robimp/rational.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace robimp {

/// Probability vector over outcomes.
using Lottery = std::vector<Rational>;

/// Row-major table u(state, outcome).
using PayoffMatrix = std::vector<std::vector<Rational>>;

inline constexpr std::size_t kAgents = 2;

struct StateSpace
{
  std::vector<std::string> labels;
  std::vector<Rational>    prior;

  std::size_t size() const
  {
    return labels.size();
  }
};

struct OutcomeSpace
{
  std::vector<std::string> labels;

  std::size_t size() const
  {
    return labels.size();
  }
};

struct AgentPayoff
{
  PayoffMatrix u;
  Rational     cost;
};

/// The unperturbed environment. States are stored in canonical order: sorted
/// by prior, largest first, ties kept in input order. Index 0 is the status
/// quo state.
class Scenario
{
public:
  /// Validates all invariants and re-indexes states canonically. `scf` and the
  /// payoff tables are given in the same (input) state order as `states`.
  static Scenario create(StateSpace states, OutcomeSpace outcomes, std::vector<Lottery> scf,
                         std::array<AgentPayoff, kAgents> payoffs);

  StateSpace const &states() const
  {
    return states_;
  }
  OutcomeSpace const &outcomes() const
  {
    return outcomes_;
  }
  std::vector<Lottery> const &scf() const
  {
    return scf_;
  }
  AgentPayoff const &payoff(std::size_t agent) const
  {
    return payoffs_.at(agent);
  }

  std::size_t num_states() const
  {
    return states_.size();
  }
  std::size_t num_outcomes() const
  {
    return outcomes_.size();
  }
  Rational const &prior(std::size_t state) const
  {
    return states_.prior.at(state);
  }

  /// Position of canonical state `i` in the input order.
  std::size_t input_index(std::size_t canonical) const
  {
    return input_index_.at(canonical);
  }

  bool generic() const
  {
    return generic_;
  }

  Rational max_cost() const;

  /// Same scenario with replaced agent costs.
  Scenario with_costs(Rational const &c1, Rational const &c2) const;

  /// Same scenario with replaced utility tables (canonical state order).
  Scenario with_utilities(PayoffMatrix const &u1, PayoffMatrix const &u2) const;

  std::size_t state_index(std::string const &label) const;
  std::size_t outcome_index(std::string const &label) const;

private:
  StateSpace                       states_;
  OutcomeSpace                     outcomes_;
  std::vector<Lottery>             scf_;
  std::array<AgentPayoff, kAgents> payoffs_;
  std::vector<std::size_t>         input_index_;
  bool                             generic_{false};
};

Rational tv_distance(Lottery const &p, Lottery const &r);

struct GenericCheck
{
  bool        generic{false};
  std::size_t argmax{0};
};

/// A prior is generic when a unique strictly most likely state exists.
GenericCheck is_generic(std::span<Rational const> prior);

bool is_nonconstant(std::span<Lottery const> scf, NumericMode mode = NumericMode::kExact);

bool lotteries_equal(Lottery const &a, Lottery const &b, NumericMode mode = NumericMode::kExact);

/// Point-mass lottery on outcome `index`.
Lottery pure_lottery(std::size_t num_outcomes, std::size_t index);

/// Expected value of a row u(theta, .) under lottery `p`.
Rational expected_value(std::vector<Rational> const &row, Lottery const &p);

void validate_lottery(Lottery const &p, std::size_t num_outcomes, std::string const &what);

void validate_distribution(std::span<Rational const> p, std::string const &what);

}  // namespace robimp
