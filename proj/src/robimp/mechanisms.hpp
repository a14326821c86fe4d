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
#include <span>
#include <string>
#include <vector>

namespace robimp {

enum class MechanismKind
{
  kMaskin,     ///< symmetric two-message rule with a coin flip off the diagonal
  kStatusQuo,  ///< status quo rule with ascending transfers
  kAugmented,  ///< augmented status quo rule (2n-1 messages)
  kModified,   ///< modified status quo rule (penalty x for unmatched high reports)
  kTable,      ///< imported from a table
};

char const   *mechanism_kind_name(MechanismKind kind);
MechanismKind parse_mechanism_kind(std::string const &name);

/// Reward levels R^0..R^n, the penalty x of the modified rule and the cost
/// bound the schedule was solved for. R^0 is absent for the plain status quo
/// rule and x is present only for the modified rule.
struct RewardSchedule
{
  std::optional<Rational> base;       ///< R^0
  std::vector<Rational>   ascending;  ///< R^1..R^n, ascending[j-1] == R^j
  std::optional<Rational> penalty;    ///< x
  Rational                cost_bound;

  Rational const &reward(std::size_t j) const;
  std::size_t     num_states() const
  {
    return ascending.size();
  }
};

/// Finite two-agent mechanism. Messages are integer labels; tables are
/// indexed by positions in the per-agent message lists.
class Mechanism
{
public:
  Mechanism() = default;
  Mechanism(MechanismKind kind, std::array<std::vector<int>, kAgents> messages,
            std::vector<Lottery> outcomes, std::array<std::vector<Rational>, kAgents> transfers);

  MechanismKind kind() const
  {
    return kind_;
  }
  std::vector<int> const &messages(std::size_t agent) const
  {
    return messages_.at(agent);
  }
  std::size_t num_messages(std::size_t agent) const
  {
    return messages_.at(agent).size();
  }
  std::size_t num_outcomes() const
  {
    return outcomes_.empty() ? 0 : outcomes_.front().size();
  }

  std::size_t index_of(std::size_t agent, int label) const;
  bool        has_message(std::size_t agent, int label) const;

  Lottery const  &outcome_at(std::size_t i1, std::size_t i2) const;
  Rational const &transfer_at(std::size_t agent, std::size_t i1, std::size_t i2) const;

  Lottery const  &outcome(int m1, int m2) const;
  Rational const &transfer(std::size_t agent, int m1, int m2) const;

  /// Largest absolute transfer over agents and message pairs.
  Rational max_abs_transfer() const;

  std::optional<RewardSchedule> const &schedule() const
  {
    return schedule_;
  }
  void set_schedule(RewardSchedule schedule)
  {
    schedule_ = std::move(schedule);
  }

private:
  MechanismKind                              kind_{MechanismKind::kTable};
  std::array<std::vector<int>, kAgents>      messages_;
  std::vector<Lottery>                       outcomes_;
  std::array<std::vector<Rational>, kAgents> transfers_;
  std::optional<RewardSchedule>              schedule_;
};

/// Two-state rule paying R on matching reports and mixing the two verdicts
/// with equal weight on a mismatch.
Mechanism build_maskin(Scenario const &scenario, Rational const &reward);

/// Status quo rule; solves a schedule for `cost_bound` if none is given.
Mechanism build_status_quo(Scenario const &scenario, Rational const &cost_bound,
                           std::optional<RewardSchedule> schedule = std::nullopt);

/// Augmented status quo rule; uses the larger normal cost of the scenario when
/// solving the schedule.
Mechanism build_augmented_status_quo(Scenario const                &scenario,
                                     std::optional<RewardSchedule> schedule = std::nullopt);

Mechanism build_modified_status_quo(Scenario const                &scenario,
                                    std::optional<RewardSchedule> schedule = std::nullopt);

/// Message list {-n..-2, 1, 2..n} in canonical order.
std::vector<int> signed_messages(std::size_t n);

struct ConstraintCheck
{
  std::string name;
  bool        pass{false};
  bool        strict{false};
  /// lhs - rhs of the inequality as stated (positive means slack).
  Rational slack;
};

struct ConstraintReport
{
  std::vector<ConstraintCheck> checks;

  bool all_pass() const;
};

ConstraintReport check_reward_constraints(RewardSchedule const &schedule,
                                          std::span<Rational const> prior, Rational const &cost,
                                          MechanismKind kind);

struct SolveOptions
{
  Rational step{1};
  /// Hard cap on the search over the base reward, in grid steps.
  long max_steps{10'000'000};
};

/// Lexicographically smallest schedule on the grid {step, 2*step, ...} whose
/// constraints all hold with at least one grid step of slack (ratio
/// constraints are taken in their cleared linear form).
RewardSchedule solve_rewards(std::span<Rational const> prior, Rational const &cost,
                             MechanismKind kind, SolveOptions const &options = {});

}  // namespace robimp
