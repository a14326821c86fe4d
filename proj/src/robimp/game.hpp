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

#include "robimp/core_model.hpp"
#include "robimp/mechanisms.hpp"
#include "robimp/perturbations.hpp"

#include <array>
#include <utility>
#include <vector>

namespace robimp {

/// Intended message for each information realization (state or signal).
using PureStrategy = std::vector<int>;

/// Finite mixture over pure strategies.
using MixedStrategy = std::vector<std::pair<PureStrategy, Rational>>;

/// Per agent, per type mixed strategy.
using Profile = std::array<std::vector<MixedStrategy>, kAgents>;

/// Joint distribution over (state, s_1, s_2) plus the meaning maps h_i.
struct SignalStructure
{
  struct Entry
  {
    std::size_t state{0};
    std::size_t s1{0};
    std::size_t s2{0};
    Rational    p;
  };

  std::array<std::size_t, kAgents>              num_signals{};
  std::vector<Entry>                            joint;
  std::array<std::vector<std::size_t>, kAgents> meaning;  ///< canonical state index

  std::size_t signal_of(std::size_t agent, Entry const &e) const
  {
    return agent == 0 ? e.s1 : e.s2;
  }
};

/// Each agent observes the state.
SignalStructure perfectly_revealing(std::span<Rational const> prior);

/// Conditionally independent signals: each agent sees the true state with
/// probability 1 - flip, otherwise a uniformly drawn other state.
SignalStructure symmetric_noise(std::span<Rational const> prior, Rational const &flip);

/// Smallest tau for which the structure satisfies both agreement conditions.
/// Throws when the state marginal differs from `prior`.
Rational size_of_signal_structure(SignalStructure const &signals, std::span<Rational const> prior);

/// Realized message equals the intended one with probability 1 - tau, and is
/// drawn from noise[i] (over message positions) otherwise.
struct TrembleSpec
{
  Rational                                     tau{0};
  std::array<std::vector<Rational>, kAgents> noise;
};

/// Point mass tremble distribution for the given message label.
std::vector<Rational> point_mass_noise(Mechanism const &mechanism, std::size_t agent, int label);

enum class StrategyVariant
{
  kFull,       ///< every message at every realization
  kStatusQuo,  ///< {1, h(x)}
  kSigned,     ///< {-n..-2, 1, h(x)}
};

/// Product set of pure strategies: allowed intended messages per realization.
class StrategySet
{
public:
  StrategySet() = default;
  explicit StrategySet(std::vector<std::vector<int>> allowed);

  std::size_t num_realizations() const
  {
    return allowed_.size();
  }
  std::vector<int> const &allowed(std::size_t x) const
  {
    return allowed_.at(x);
  }
  bool        contains(PureStrategy const &s) const;
  std::size_t size() const;

  /// All members in canonical (lexicographic) order.
  std::vector<PureStrategy> enumerate() const;

private:
  std::vector<std::vector<int>> allowed_;
};

StrategySet restricted_strategy_set(StrategyVariant variant, Mechanism const &mechanism,
                                    SignalStructure const &signals, std::size_t agent);

/// Intended message h_i(x) + 1 at every realization.
PureStrategy truthful_strategy(SignalStructure const &signals, std::size_t agent);

bool is_constant(PureStrategy const &s);

/// Maps a strategy outside the restricted set to its canonical member.
PureStrategy canonical_replacement(PureStrategy const &s, StrategyVariant variant,
                                   SignalStructure const &signals, std::size_t agent);

Rational learning_cost_of(PureStrategy const &s, std::size_t agent, std::size_t circumstance,
                          Perturbation const &perturbation);

MixedStrategy pure(PureStrategy s);

/// The same mixed strategy for every type of both agents.
Profile uniform_profile(Perturbation const &perturbation, MixedStrategy const &s1,
                        MixedStrategy const &s2);

/// Mechanism played on a perturbed environment with optional signal noise and
/// trembles. Precomputes per-agent payoff kernels so that interim payoffs are
/// cheap to evaluate.
class Game
{
public:
  Game(Scenario scenario, Mechanism mechanism, Perturbation perturbation);
  Game(Scenario scenario, Mechanism mechanism, Perturbation perturbation, SignalStructure signals,
       TrembleSpec tremble);

  Scenario const &scenario() const
  {
    return scenario_;
  }
  Mechanism const &mechanism() const
  {
    return mechanism_;
  }
  Perturbation const &perturbation() const
  {
    return perturbation_;
  }
  SignalStructure const &signals() const
  {
    return signals_;
  }
  TrembleSpec const &tremble() const
  {
    return tremble_;
  }

  std::size_t num_realizations(std::size_t agent) const
  {
    return signals_.num_signals.at(agent);
  }
  std::size_t num_messages(std::size_t agent) const
  {
    return mechanism_.num_messages(agent);
  }

  /// Intended-message probabilities beta[x][m] of a mixed strategy.
  std::vector<std::vector<Rational>> behavior(std::size_t agent, MixedStrategy const &s) const;

  /// Interim value matrix A[x][m] of `type` against opponent behaviors
  /// (one per opponent type), so that the payoff of a pure strategy s is
  /// sum_x A[x][s(x)] - expected_cost * [s non-constant].
  struct Interim
  {
    std::vector<std::vector<Rational>> value;
    Rational                           expected_cost;
  };
  Interim interim(std::size_t agent, std::size_t type,
                  std::vector<std::vector<std::vector<Rational>>> const &opponent) const;

  /// Interim matrix restricted to circumstances where the opponent has type
  /// `opp_type`, against a pure opponent strategy (costs excluded).
  std::vector<std::vector<Rational>> partial_interim(std::size_t agent, std::size_t type,
                                                     std::size_t         opp_type,
                                                     PureStrategy const &opp) const;

  /// All opponent behaviors of a profile.
  std::vector<std::vector<std::vector<Rational>>> behaviors(std::size_t agent, Profile const &profile) const;

  Rational value_of(Interim const &interim, std::size_t agent, PureStrategy const &s) const;

  Rational expected_payoff(std::size_t agent, std::size_t type, PureStrategy const &s,
                           Profile const &profile) const;

  /// g_sigma(theta) for canonical state `state`.
  Lottery outcome_distribution(Profile const &profile, std::size_t state) const;

  /// Probability that both agents play their truthful strategy.
  Rational truthful_mass(Profile const &profile) const;

  /// Positions of labels in the mechanism's message list.
  std::size_t message_index(std::size_t agent, int label) const
  {
    return mechanism_.index_of(agent, label);
  }

  bool positive_type(std::size_t agent, std::size_t type) const
  {
    return perturbation_.type_probability(agent, type) > 0;
  }

  /// Joint-probability weighted payoff of `agent` with payoff table `table`
  /// for own realization x, own intended position m, opponent realization xo
  /// and opponent intended position mo.
  Rational const &kernel(std::size_t agent, std::size_t table, std::size_t x, std::size_t m,
                         std::size_t xo, std::size_t mo) const;

private:
  void precompute();

  Scenario        scenario_;
  Mechanism       mechanism_;
  Perturbation    perturbation_;
  SignalStructure signals_;
  TrembleSpec     tremble_;

  std::array<std::vector<std::vector<Rational>>, kAgents> kernel_;
  /// Realized outcome lottery for each pair of intended message positions.
  std::vector<Lottery> realized_outcome_;
  /// Per state: joint probability of (s1, s2) conditional on the state.
  std::vector<std::vector<std::vector<Rational>>> signal_given_state_;
};

}  // namespace robimp
