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

#include "robimp/mechanisms.hpp"

#include "robimp/error.hpp"

#include <algorithm>
#include <cstdlib>

namespace robimp {

char const *mechanism_kind_name(MechanismKind kind)
{
  switch (kind)
  {
  case MechanismKind::kMaskin:
    return "maskin";
  case MechanismKind::kStatusQuo:
    return "sqr";
  case MechanismKind::kAugmented:
    return "asqr";
  case MechanismKind::kModified:
    return "msqr";
  case MechanismKind::kTable:
    return "table";
  }
  return "table";
}

MechanismKind parse_mechanism_kind(std::string const &name)
{
  if (name == "maskin")
  {
    return MechanismKind::kMaskin;
  }
  if (name == "sqr")
  {
    return MechanismKind::kStatusQuo;
  }
  if (name == "asqr")
  {
    return MechanismKind::kAugmented;
  }
  if (name == "msqr")
  {
    return MechanismKind::kModified;
  }
  if (name == "table")
  {
    return MechanismKind::kTable;
  }
  fail(ErrorCode::kInvalidArgument, "unknown mechanism kind '" + name + "'");
}

Rational const &RewardSchedule::reward(std::size_t j) const
{
  if (j == 0)
  {
    require(base.has_value(), ErrorCode::kInvalidArgument, "schedule has no base reward R^0");
    return *base;
  }
  require(j <= ascending.size(), ErrorCode::kInvalidArgument, "reward index out of range");
  return ascending[j - 1];
}

Mechanism::Mechanism(MechanismKind kind, std::array<std::vector<int>, kAgents> messages,
                     std::vector<Lottery> outcomes, std::array<std::vector<Rational>, kAgents> transfers)
  : kind_(kind)
  , messages_(std::move(messages))
  , outcomes_(std::move(outcomes))
  , transfers_(std::move(transfers))
{
  std::size_t const cells = messages_[0].size() * messages_[1].size();
  require(cells > 0, ErrorCode::kInvalidArgument, "mechanism needs at least one message per agent");
  require(outcomes_.size() == cells, ErrorCode::kDimensionMismatch,
          "outcome map is not total on M1 x M2");
  for (auto const &t : transfers_)
  {
    require(t.size() == cells, ErrorCode::kDimensionMismatch,
            "transfer map is not total on M1 x M2");
  }
  std::size_t const k = outcomes_.front().size();
  for (auto const &p : outcomes_)
  {
    validate_lottery(p, k, "mechanism outcome");
  }
  for (auto const &list : messages_)
  {
    auto sorted = list;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            ErrorCode::kInvalidArgument, "duplicate message label");
  }
}

std::size_t Mechanism::index_of(std::size_t agent, int label) const
{
  auto const &list = messages_.at(agent);
  auto        it   = std::find(list.begin(), list.end(), label);
  require(it != list.end(), ErrorCode::kInvalidArgument,
          "agent " + std::to_string(agent + 1) + " has no message " + std::to_string(label));
  return static_cast<std::size_t>(it - list.begin());
}

bool Mechanism::has_message(std::size_t agent, int label) const
{
  auto const &list = messages_.at(agent);
  return std::find(list.begin(), list.end(), label) != list.end();
}

Lottery const &Mechanism::outcome_at(std::size_t i1, std::size_t i2) const
{
  return outcomes_.at(i1 * messages_[1].size() + i2);
}

Rational const &Mechanism::transfer_at(std::size_t agent, std::size_t i1, std::size_t i2) const
{
  return transfers_.at(agent).at(i1 * messages_[1].size() + i2);
}

Lottery const &Mechanism::outcome(int m1, int m2) const
{
  return outcome_at(index_of(0, m1), index_of(1, m2));
}

Rational const &Mechanism::transfer(std::size_t agent, int m1, int m2) const
{
  return transfer_at(agent, index_of(0, m1), index_of(1, m2));
}

Rational Mechanism::max_abs_transfer() const
{
  Rational best(0);
  for (auto const &t : transfers_)
  {
    for (auto const &x : t)
    {
      Rational a = abs(x);
      if (a > best)
      {
        best = a;
      }
    }
  }
  return best;
}

std::vector<int> signed_messages(std::size_t n)
{
  std::vector<int> out;
  for (int j = static_cast<int>(n); j >= 2; --j)
  {
    out.push_back(-j);
  }
  for (int j = 1; j <= static_cast<int>(n); ++j)
  {
    out.push_back(j);
  }
  return out;
}

namespace {

std::vector<int> plain_messages(std::size_t n)
{
  std::vector<int> out;
  for (int j = 1; j <= static_cast<int>(n); ++j)
  {
    out.push_back(j);
  }
  return out;
}

Lottery const &scf_at(Scenario const &scenario, int label)
{
  return scenario.scf().at(static_cast<std::size_t>(std::abs(label)) - 1);
}

/// Outcome rule shared by every status quo variant: matching magnitudes
/// implement the reported state, anything else the status quo.
std::vector<Lottery> status_quo_outcomes(Scenario const &scenario, std::vector<int> const &messages)
{
  std::vector<Lottery> out;
  for (int m1 : messages)
  {
    for (int m2 : messages)
    {
      out.push_back(std::abs(m1) == std::abs(m2) ? scf_at(scenario, m1) : scenario.scf().front());
    }
  }
  return out;
}

void check_schedule_size(RewardSchedule const &schedule, std::size_t n)
{
  require(schedule.ascending.size() == n, ErrorCode::kDimensionMismatch,
          "schedule must have one reward per state");
}

void require_feasible(ConstraintReport const &report)
{
  for (auto const &c : report.checks)
  {
    require(c.pass, ErrorCode::kInfeasible,
            "reward schedule violates '" + c.name + "' (slack " + to_string(c.slack) + ")");
  }
}

}  // namespace

Mechanism build_maskin(Scenario const &scenario, Rational const &reward)
{
  require(scenario.num_states() == 2, ErrorCode::kPrecondition,
          "the Maskin rule is defined for two states");
  require(reward > 0, ErrorCode::kInvalidArgument, "R must be positive");

  auto const           messages = plain_messages(2);
  Lottery              mix(scenario.num_outcomes(), Rational(0));
  for (std::size_t y = 0; y < mix.size(); ++y)
  {
    mix[y] = (scenario.scf()[0][y] + scenario.scf()[1][y]) / 2;
  }
  std::vector<Lottery>                       outcomes;
  std::array<std::vector<Rational>, kAgents> transfers;
  for (int m1 : messages)
  {
    for (int m2 : messages)
    {
      outcomes.push_back(m1 == m2 ? scf_at(scenario, m1) : mix);
      for (auto &t : transfers)
      {
        t.push_back(m1 == m2 ? reward : Rational(0));
      }
    }
  }
  Mechanism      mech(MechanismKind::kMaskin, {messages, messages}, std::move(outcomes),
                      std::move(transfers));
  RewardSchedule schedule;
  schedule.ascending = {reward, reward};
  mech.set_schedule(std::move(schedule));
  return mech;
}

Mechanism build_status_quo(Scenario const &scenario, Rational const &cost_bound,
                           std::optional<RewardSchedule> schedule)
{
  require(cost_bound >= scenario.max_cost(), ErrorCode::kPrecondition,
          "cost bound must be at least max(c_1, c_2)");
  std::size_t const n = scenario.num_states();
  if (!schedule)
  {
    schedule = solve_rewards(scenario.states().prior, cost_bound, MechanismKind::kStatusQuo);
  }
  check_schedule_size(*schedule, n);
  schedule->cost_bound = cost_bound;
  require_feasible(check_reward_constraints(*schedule, scenario.states().prior, cost_bound,
                                            MechanismKind::kStatusQuo));

  auto const                                 messages = plain_messages(n);
  std::array<std::vector<Rational>, kAgents> transfers;
  for (int m1 : messages)
  {
    for (int m2 : messages)
    {
      Rational t = m1 == m2 ? schedule->reward(static_cast<std::size_t>(m1)) : Rational(0);
      transfers[0].push_back(t);
      transfers[1].push_back(t);
    }
  }
  Mechanism mech(MechanismKind::kStatusQuo, {messages, messages},
                 status_quo_outcomes(scenario, messages), std::move(transfers));
  mech.set_schedule(std::move(*schedule));
  return mech;
}

Mechanism build_augmented_status_quo(Scenario const &scenario, std::optional<RewardSchedule> schedule)
{
  require(scenario.generic(), ErrorCode::kNonGeneric,
          "the augmented status quo rule needs a generic prior");
  std::size_t const n    = scenario.num_states();
  Rational const    cost = scenario.max_cost();
  if (!schedule)
  {
    schedule = solve_rewards(scenario.states().prior, cost, MechanismKind::kAugmented);
  }
  check_schedule_size(*schedule, n);
  schedule->cost_bound = cost;
  require_feasible(
      check_reward_constraints(*schedule, scenario.states().prior, cost, MechanismKind::kAugmented));

  auto const                                 messages = signed_messages(n);
  std::array<std::vector<Rational>, kAgents> transfers;
  for (int m1 : messages)
  {
    for (int m2 : messages)
    {
      Rational t(0);
      if (m1 == m2 && m1 >= 1)
      {
        t = schedule->reward(static_cast<std::size_t>(m1));
      }
      else if (m1 <= 1 && m2 <= 1)
      {
        t = schedule->reward(0);
      }
      transfers[0].push_back(t);
      transfers[1].push_back(t);
    }
  }
  Mechanism mech(MechanismKind::kAugmented, {messages, messages},
                 status_quo_outcomes(scenario, messages), std::move(transfers));
  mech.set_schedule(std::move(*schedule));
  return mech;
}

Mechanism build_modified_status_quo(Scenario const &scenario, std::optional<RewardSchedule> schedule)
{
  require(scenario.generic(), ErrorCode::kNonGeneric,
          "the modified status quo rule needs a generic prior");
  std::size_t const n    = scenario.num_states();
  Rational const    cost = scenario.max_cost();
  if (!schedule)
  {
    schedule = solve_rewards(scenario.states().prior, cost, MechanismKind::kModified);
  }
  check_schedule_size(*schedule, n);
  schedule->cost_bound = cost;
  require_feasible(
      check_reward_constraints(*schedule, scenario.states().prior, cost, MechanismKind::kModified));

  Rational const r0 = schedule->reward(0);
  Rational const x  = *schedule->penalty;

  // Transfer to the sender of `own` when the other agent sends `other`.
  auto rule = [&](int own, int other) -> Rational {
    if (own == other && own >= 1)
    {
      return schedule->reward(static_cast<std::size_t>(own));
    }
    if (own <= 1)
    {
      return r0;
    }
    if (other <= 1)
    {
      return r0 - x;
    }
    return Rational(0);
  };

  auto const                                 messages = signed_messages(n);
  std::array<std::vector<Rational>, kAgents> transfers;
  for (int m1 : messages)
  {
    for (int m2 : messages)
    {
      transfers[0].push_back(rule(m1, m2));
      transfers[1].push_back(rule(m2, m1));
    }
  }
  Mechanism mech(MechanismKind::kModified, {messages, messages},
                 status_quo_outcomes(scenario, messages), std::move(transfers));
  mech.set_schedule(std::move(*schedule));
  return mech;
}

bool ConstraintReport::all_pass() const
{
  return std::all_of(checks.begin(), checks.end(), [](auto const &c) { return c.pass; });
}

namespace {

void add_check(ConstraintReport &report, std::string name, Rational slack, bool strict)
{
  bool const pass = strict ? slack > 0 : slack >= 0;
  report.checks.push_back({std::move(name), pass, strict, std::move(slack)});
}

std::string rj(std::size_t j)
{
  return "R^" + std::to_string(j);
}

}  // namespace

ConstraintReport check_reward_constraints(RewardSchedule const &schedule,
                                          std::span<Rational const> prior, Rational const &cost,
                                          MechanismKind kind)
{
  ConstraintReport report;
  std::size_t const n = prior.size();
  require(schedule.ascending.size() == n, ErrorCode::kDimensionMismatch,
          "schedule must have one reward per state");
  auto const R = [&](std::size_t j) -> Rational const & { return schedule.reward(j); };
  auto const q = [&](std::size_t j) -> Rational const & { return prior[j - 1]; };

  // Largest and smallest prior among the non-status-quo states.
  Rational q_second = q(2);
  Rational q_last   = q(2);
  for (std::size_t j = 3; j <= n; ++j)
  {
    q_second = std::max(q_second, q(j));
    q_last   = std::min(q_last, q(j));
  }

  switch (kind)
  {
  case MechanismKind::kMaskin:
  case MechanismKind::kTable:
    for (std::size_t j = 1; j <= n; ++j)
    {
      add_check(report, rj(j) + " > 0", R(j), true);
    }
    break;

  case MechanismKind::kStatusQuo:
    for (std::size_t j = 1; j <= n; ++j)
    {
      add_check(report, rj(j) + " > 0", R(j), true);
    }
    for (std::size_t j = 2; j <= n; ++j)
    {
      add_check(report, rj(j) + " >= R^1 + 2c/q(theta^" + std::to_string(j) + ")",
                R(j) - R(1) - 2 * cost / q(j), false);
    }
    add_check(report, "R^1 q(theta^1) > c", R(1) * q(1) - cost, true);
    break;

  case MechanismKind::kAugmented:
  {
    require(schedule.base.has_value(), ErrorCode::kInvalidArgument,
            "augmented schedule needs R^0");
    add_check(report, "R^0 > 0", R(0), true);
    for (std::size_t j = 1; j <= n; ++j)
    {
      add_check(report, rj(j) + " > " + rj(j - 1), R(j) - R(j - 1), true);
    }
    add_check(report, "R^1 > R^0 + 2c/q(theta^1)", R(1) - R(0) - 2 * cost / q(1), true);
    for (std::size_t j = 2; j <= n; ++j)
    {
      add_check(report, rj(j) + " >= R^1 + 2c/q(theta^" + std::to_string(j) + ")",
                R(j) - R(1) - 2 * cost / q(j), false);
    }
    add_check(report, "R^0/R^n > q(theta^2)/q(theta^1)", R(0) / R(n) - q_second / q(1), true);
    break;
  }

  case MechanismKind::kModified:
  {
    require(schedule.base.has_value() && schedule.penalty.has_value(),
            ErrorCode::kInvalidArgument, "modified schedule needs R^0 and x");
    Rational const &x = *schedule.penalty;
    for (std::size_t j = 0; j <= n; ++j)
    {
      add_check(report, rj(j) + " > x", R(j) - x, true);
    }
    add_check(report, "x > c/q(theta^n)", x - cost / q_last, true);
    add_check(report, "R^1 - R^0 > 4c/q(theta^1)", R(1) - R(0) - 4 * cost / q(1), true);
    for (std::size_t j = 2; j <= n; ++j)
    {
      add_check(report, rj(j) + " - R^1 - x > 2c/q(theta^" + std::to_string(j) + ")",
                R(j) - R(1) - x - 2 * cost / q(j), true);
    }
    for (std::size_t j = 2; j <= n; ++j)
    {
      Rational const gap = R(j) - R(0);
      if (gap <= 0)
      {
        // The ratio is undefined; the ordering checks above already fail.
        add_check(report, "x/(" + rj(j) + " - R^0) > q(theta^" + std::to_string(j) + ")/q(theta^1)",
                  Rational(-1), true);
        continue;
      }
      add_check(report,
                "x/(" + rj(j) + " - R^0) > q(theta^" + std::to_string(j) + ")/q(theta^1)",
                x / gap - q(j) / q(1), true);
    }
    break;
  }
  }
  return report;
}

namespace {

void require_generic_head(std::span<Rational const> prior)
{
  for (std::size_t j = 1; j < prior.size(); ++j)
  {
    require(prior[0] > prior[j], ErrorCode::kInfeasible,
            "no schedule exists: the ratio constraint needs q(theta^1) > q(theta^2)");
  }
}

RewardSchedule solve_status_quo(std::span<Rational const> prior, Rational const &cost,
                                Rational const &step)
{
  std::size_t const n = prior.size();
  RewardSchedule    s;
  s.cost_bound = cost;
  Rational r1  = ceil_to_grid(cost / prior[0] + step, step);
  r1           = std::max(r1, step);
  s.ascending.push_back(r1);
  for (std::size_t j = 2; j <= n; ++j)
  {
    s.ascending.push_back(ceil_to_grid(r1 + 2 * cost / prior[j - 1] + step, step));
  }
  return s;
}

RewardSchedule solve_augmented(std::span<Rational const> prior, Rational const &cost,
                               SolveOptions const &options)
{
  require_generic_head(prior);
  std::size_t const n    = prior.size();
  Rational const   &step = options.step;
  Rational          q2   = prior[1];
  for (std::size_t j = 2; j < n; ++j)
  {
    q2 = std::max(q2, prior[j]);
  }
  Rational const ratio = q2 / prior[0];

  // R^0 (1 - ratio) >= step is necessary, so start there.
  Rational r0 = std::max(step, ceil_to_grid(step / (1 - ratio), step));
  for (long k = 0; k < options.max_steps; ++k, r0 += step)
  {
    RewardSchedule s;
    s.cost_bound = cost;
    s.base       = r0;
    Rational r1  = ceil_to_grid(r0 + 2 * cost / prior[0] + step, step);
    s.ascending.push_back(r1);
    for (std::size_t j = 2; j <= n; ++j)
    {
      Rational rj = ceil_to_grid(r1 + 2 * cost / prior[j - 1] + step, step);
      rj          = std::max(rj, Rational(s.ascending.back() + step));
      s.ascending.push_back(rj);
    }
    if (r0 - ratio * s.ascending.back() >= step)
    {
      return s;
    }
  }
  fail(ErrorCode::kInfeasible, "no augmented schedule found within the search cap");
}

RewardSchedule solve_modified(std::span<Rational const> prior, Rational const &cost,
                              SolveOptions const &options)
{
  require_generic_head(prior);
  std::size_t const n    = prior.size();
  Rational const   &step = options.step;
  Rational          q_last = prior[1];
  for (std::size_t j = 2; j < n; ++j)
  {
    q_last = std::min(q_last, prior[j]);
  }
  Rational const x_min = std::max(step, ceil_to_grid(cost / q_last + step, step));

  auto build = [&](Rational const &r0, Rational const &x) {
    RewardSchedule s;
    s.cost_bound = cost;
    s.base       = r0;
    s.penalty    = x;
    Rational r1  = ceil_to_grid(r0 + 4 * cost / prior[0] + step, step);
    s.ascending.push_back(r1);
    for (std::size_t j = 2; j <= n; ++j)
    {
      s.ascending.push_back(ceil_to_grid(r1 + x + 2 * cost / prior[j - 1] + step, step));
    }
    return s;
  };
  auto ratio_ok = [&](RewardSchedule const &s) {
    Rational const &x = *s.penalty;
    for (std::size_t j = 2; j <= n; ++j)
    {
      Rational const r = prior[j - 1] / prior[0];
      if (x - r * (s.ascending[j - 1] - *s.base) < step)
      {
        return false;
      }
    }
    return true;
  };

  Rational r0 = x_min + step;
  for (long k = 0; k < options.max_steps; ++k, r0 += step)
  {
    Rational const x_max = r0 - step;
    if (!ratio_ok(build(r0, x_max)))
    {
      continue;
    }
    // Feasibility is monotone in x on the grid, so the first hit is minimal.
    for (Rational x = x_min; x <= x_max; x += step)
    {
      auto s = build(r0, x);
      if (ratio_ok(s))
      {
        return s;
      }
    }
  }
  fail(ErrorCode::kInfeasible, "no modified schedule found within the search cap");
}

}  // namespace

RewardSchedule solve_rewards(std::span<Rational const> prior, Rational const &cost,
                             MechanismKind kind, SolveOptions const &options)
{
  require(prior.size() >= 2, ErrorCode::kInvalidArgument, "at least two states are required");
  require(cost >= 0, ErrorCode::kInvalidArgument, "cost must be non-negative");
  require(options.step > 0, ErrorCode::kInvalidArgument, "grid step must be positive");
  RewardSchedule out;
  switch (kind)
  {
  case MechanismKind::kStatusQuo:
    out = solve_status_quo(prior, cost, options.step);
    break;
  case MechanismKind::kAugmented:
    out = solve_augmented(prior, cost, options);
    break;
  case MechanismKind::kModified:
    out = solve_modified(prior, cost, options);
    break;
  default:
    fail(ErrorCode::kInvalidArgument, "no reward constraints for this mechanism kind");
  }
  return out;
}

}  // namespace robimp
