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

#include <array>
#include <optional>
#include <vector>

namespace robimp {

/// Single payoff entry override u(state, outcome) = value, canonical indices.
struct PayoffEntry
{
  std::size_t state{0};
  std::size_t outcome{0};
  Rational    value;
};

/// Payoff and cost changes for one agent at one circumstance.
struct BiasSpec
{
  std::size_t              circumstance{0};
  std::size_t              agent{0};
  std::vector<PayoffEntry> u;
  std::optional<Rational>  cost;
};

/// Bias adding `amount` to u(theta, outcome) for every state.
BiasSpec outcome_bias(Scenario const &scenario, std::size_t agent, std::size_t circumstance,
                      std::size_t outcome, Rational const &amount,
                      std::optional<Rational> cost = std::nullopt);

/// How the mass beyond the truncation depth is treated.
enum class TailConvention
{
  kLump,         ///< residual mass (1-eta)^T placed on the last circumstance
  kRenormalize,  ///< ladder conditioned on the first T+1 circumstances
};

/// Type of an agent: index of a partition element.
struct TypeLabel
{
  std::size_t agent{0};
  std::size_t index{0};
};

/// Finite perturbation: circumstances 0..T with prior Pi, one partition per
/// agent and per-circumstance payoff tables. Payoff tables are deduplicated,
/// so `payoff_index` identifies equal tables.
class Perturbation
{
public:
  static Perturbation create(Scenario const &scenario, std::vector<Rational> pi,
                             std::array<std::vector<std::vector<std::size_t>>, kAgents> partitions,
                             std::vector<BiasSpec> const &biases);

  /// Single circumstance, both agents normal.
  static Perturbation trivial(Scenario const &scenario);

  std::size_t num_circumstances() const
  {
    return pi_.size();
  }
  Rational const &pi(std::size_t w) const
  {
    return pi_.at(w);
  }
  std::vector<Rational> const &pi() const
  {
    return pi_;
  }

  std::size_t num_types(std::size_t agent) const
  {
    return partitions_.at(agent).size();
  }
  std::vector<std::size_t> const &members(std::size_t agent, std::size_t type) const
  {
    return partitions_.at(agent).at(type);
  }
  std::size_t type_of(std::size_t agent, std::size_t w) const
  {
    return type_of_.at(agent).at(w);
  }
  Rational type_probability(std::size_t agent, std::size_t type) const;

  /// Pi(w | type) for w in the type's partition element.
  std::vector<Rational> conditional(std::size_t agent, std::size_t type) const;

  AgentPayoff const &payoff(std::size_t agent, std::size_t w) const
  {
    return tables_.at(agent).at(table_of_.at(agent).at(w));
  }
  std::size_t payoff_index(std::size_t agent, std::size_t w) const
  {
    return table_of_.at(agent).at(w);
  }
  std::size_t num_payoff_tables(std::size_t agent) const
  {
    return tables_.at(agent).size();
  }
  AgentPayoff const &payoff_table(std::size_t agent, std::size_t index) const
  {
    return tables_.at(agent).at(index);
  }

  /// True when the agent's payoff and cost at `w` equal the unperturbed ones.
  bool normal_at(std::size_t agent, std::size_t w) const
  {
    return normal_.at(agent).at(w);
  }
  bool normal_type(std::size_t agent, std::size_t type) const;

  /// Mass that truncation moved or removed (0 for custom priors).
  Rational const &tail_mass() const
  {
    return tail_mass_;
  }
  void set_tail_mass(Rational mass)
  {
    tail_mass_ = std::move(mass);
  }

  Rational max_cost() const;

private:
  std::vector<Rational>                                       pi_;
  std::array<std::vector<std::vector<std::size_t>>, kAgents> partitions_;
  std::array<std::vector<std::size_t>, kAgents>               type_of_;
  std::array<std::vector<AgentPayoff>, kAgents>               tables_;
  std::array<std::vector<std::size_t>, kAgents>               table_of_;
  std::array<std::vector<bool>, kAgents>                      normal_;
  Rational                                                    tail_mass_{0};
};

/// Standard ladder partitions on T+1 circumstances: agent 1 {0},{1,2},...,
/// agent 2 {0,1},{2,3},...
std::array<std::vector<std::vector<std::size_t>>, kAgents> ladder_partitions(std::size_t depth);

/// Geometric ladder Pi(w_t) = eta (1-eta)^t, truncated at depth T.
Perturbation build_ladder(Scenario const &scenario, std::size_t depth, Rational const &eta,
                          std::vector<BiasSpec> const &biases,
                          TailConvention tail = TailConvention::kLump);

/// Ladder partitions with an arbitrary prior over the T+1 circumstances.
Perturbation build_general_ladder(Scenario const &scenario, std::vector<Rational> pi,
                                  std::vector<BiasSpec> const &biases);

/// Declarative ladder description as read from a scenario file.
struct PerturbationSpec
{
  enum class Kind
  {
    kGeometric,
    kCustom,
  };
  Kind                  kind{Kind::kGeometric};
  std::size_t           depth{100};
  Rational              eta{1, 100};
  TailConvention        tail{TailConvention::kLump};
  std::vector<Rational> pi;  ///< custom kind only
  std::vector<BiasSpec> biases;

  /// Builds the ladder; `eta` overrides the stored value for geometric ladders.
  Perturbation build(Scenario const &scenario, std::optional<Rational> const &eta = std::nullopt) const;
};

/// 1 - Pi(both agents' types are normal).
Rational eta_of(Perturbation const &perturbation);

bool is_c_bounded(Perturbation const &perturbation, Rational const &cost_bound);

/// Bayes posterior over the opponent's types given `type`.
std::vector<Rational> posterior(TypeLabel type, Perturbation const &perturbation);

}  // namespace robimp
