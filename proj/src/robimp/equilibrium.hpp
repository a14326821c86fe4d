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

#include "robimp/game.hpp"

#include <array>
#include <optional>
#include <vector>

namespace robimp {

using StrategySets = std::array<StrategySet, kAgents>;

StrategySets strategy_sets(Game const &game, StrategyVariant variant);

struct BestResponse
{
  std::vector<PureStrategy> argmax;  ///< canonical order
  Rational                  value;
};

BestResponse best_response(Game const &game, std::size_t agent, std::size_t type,
                           Profile const &profile, StrategySet const &set);

BestResponse best_response(Game const &game, std::size_t agent, Game::Interim const &interim,
                           StrategySet const &set);

struct TypeResidual
{
  std::size_t agent{0};
  std::size_t type{0};
  Rational    residual;
};

struct EquilibriumReport
{
  std::vector<TypeResidual> residuals;  ///< positive-probability types only
  Rational                  max_residual;
  Rational                  truthful_mass;
  std::vector<Rational>     tv;  ///< TV(g_sigma(theta), f(theta)) per state
  Rational                  max_tv;

  bool equilibrium(Rational const &eps = Rational(0)) const
  {
    return max_residual <= eps;
  }
};

EquilibriumReport verify_equilibrium(Game const &game, Profile const &profile,
                                     StrategySets const &sets);

/// Per deviation, the slack of truthful against it is
/// gamma * at_truth + (1 - gamma) * worst.
struct GammaWitness
{
  std::size_t  agent{0};
  PureStrategy deviation;
  Rational     at_truth;  ///< opponent truthful
  Rational     worst;     ///< adversarial opponent in the restricted set
};

struct DominanceCertificate
{
  /// Infimum of the truthful weights for which truthful is a strict best
  /// response; strictness holds for every weight above it.
  Rational                  gamma;
  std::vector<GammaWitness> witness;

  Rational slack(Rational const &weight) const;
  bool     below_half() const
  {
    return gamma < Rational(1, 2);
  }
};

/// Requires an unperturbed game (one type per agent).
DominanceCertificate gamma_dominance_threshold(Game const &game, StrategySets const &sets);

/// Builds the unperturbed game with both learning costs set to `cost`.
DominanceCertificate gamma_dominance_threshold(Mechanism const &mechanism, Scenario const &scenario,
                                               StrategyVariant variant, Rational const &cost);

struct IterationResult
{
  Profile     profile;
  bool        converged{false};
  bool        cycled{false};
  bool        fallback{false};  ///< found by exhaustive pure search
  std::size_t rounds{0};
};

/// Profile with every type truthful.
Profile truthful_profile(Game const &game);

IterationResult iterate_best_response(Game const &game, Profile initial, StrategySets const &sets,
                                      std::size_t max_rounds = 1000);

struct DominanceOptions
{
  bool        pair_mixtures{true};
  std::size_t mixture_cap{16};  ///< skip mixtures when more candidates survive
};

struct EliminationResult
{
  std::array<std::vector<std::vector<PureStrategy>>, kAgents> surviving;
  std::size_t                                                  rounds{0};
};

/// Iterated elimination of strictly dominated strategies, type by type, with
/// simultaneous removal in every round.
EliminationResult iterated_dominance(Game const &game, StrategySets const &sets,
                                     DominanceOptions const &options = {});

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Unique solution of the augmented system [M | rhs]; empty when the system is
/// inconsistent or underdetermined.
std::optional<std::vector<Rational>> solve_linear_unique(RationalMatrix m);

struct NashEquilibrium
{
  std::vector<Rational> row;
  std::vector<Rational> col;
  Rational              row_value;
  Rational              col_value;
};

/// Support enumeration over supports ordered by total size, then
/// lexicographically. A[i][j] and B[i][j] are the row and column payoffs.
NashEquilibrium support_enumeration_nash(RationalMatrix const &A, RationalMatrix const &B);

/// Pure profiles of the restricted game that pass verify_equilibrium.
std::vector<Profile> pure_equilibria(Game const &game, StrategySets const &sets,
                                     std::size_t max_profiles = 1'000'000);

struct GridOptions
{
  Rational    step{1, 20};
  std::size_t max_candidates{2'000'000};
};

struct GridSearch
{
  std::vector<Profile> equilibria;
  std::size_t          candidates{0};
  bool                 truncated{false};
};

/// Equilibria with agent 1 (single type) on the mixture grid and agent 2's
/// types mixing on the grid over their best-response sets.
GridSearch grid_equilibria(Game const &game, StrategySets const &sets, GridOptions const &options = {});

/// All mixtures over `count` items with weights on the grid {0, step, ..., 1}.
std::vector<std::vector<Rational>> simplex_grid(std::size_t count, Rational const &step);

}  // namespace robimp
