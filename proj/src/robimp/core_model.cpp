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

#include "robimp/core_model.hpp"

#include "robimp/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace robimp {

void validate_distribution(std::span<Rational const> p, std::string const &what)
{
  require(!p.empty(), ErrorCode::kInvalidArgument, what + ": empty distribution");
  Rational total(0);
  for (auto const &x : p)
  {
    require(x >= 0, ErrorCode::kInvalidArgument, what + ": negative probability");
    total += x;
  }
  require(total == 1, ErrorCode::kInvalidArgument,
          what + ": probabilities sum to " + to_string(total) + ", expected 1");
}

void validate_lottery(Lottery const &p, std::size_t num_outcomes, std::string const &what)
{
  require(p.size() == num_outcomes, ErrorCode::kDimensionMismatch,
          what + ": lottery has " + std::to_string(p.size()) + " entries, expected " +
              std::to_string(num_outcomes));
  validate_distribution(p, what);
}

Scenario Scenario::create(StateSpace states, OutcomeSpace outcomes, std::vector<Lottery> scf,
                          std::array<AgentPayoff, kAgents> payoffs)
{
  std::size_t const n = states.labels.size();
  require(n >= 2, ErrorCode::kInvalidArgument, "at least two states are required");
  require(states.prior.size() == n, ErrorCode::kDimensionMismatch,
          "prior length does not match the number of states");
  for (auto const &q : states.prior)
  {
    require(q > 0, ErrorCode::kInvalidArgument, "every state must have positive prior");
  }
  validate_distribution(states.prior, "prior");
  require(std::set<std::string>(states.labels.begin(), states.labels.end()).size() == n,
          ErrorCode::kInvalidArgument, "state labels must be distinct");

  std::size_t const k = outcomes.labels.size();
  require(k >= 1, ErrorCode::kInvalidArgument, "outcome space is empty");
  require(std::set<std::string>(outcomes.labels.begin(), outcomes.labels.end()).size() == k,
          ErrorCode::kInvalidArgument, "outcome labels must be distinct");

  require(scf.size() == n, ErrorCode::kDimensionMismatch, "social choice function is not total");
  for (std::size_t s = 0; s < n; ++s)
  {
    validate_lottery(scf[s], k, "scf(" + states.labels[s] + ")");
  }
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    auto &p = payoffs[a];
    require(p.cost >= 0, ErrorCode::kInvalidArgument, "learning cost must be non-negative");
    if (p.u.empty())
    {
      p.u.assign(n, std::vector<Rational>(k, Rational(0)));
    }
    require(p.u.size() == n, ErrorCode::kDimensionMismatch, "payoff table has wrong row count");
    for (auto const &row : p.u)
    {
      require(row.size() == k, ErrorCode::kDimensionMismatch,
              "payoff table has wrong column count");
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return states.prior[a] > states.prior[b];
  });

  Scenario out;
  out.outcomes_    = std::move(outcomes);
  out.input_index_ = order;
  for (std::size_t i = 0; i < n; ++i)
  {
    out.states_.labels.push_back(states.labels[order[i]]);
    out.states_.prior.push_back(states.prior[order[i]]);
    out.scf_.push_back(scf[order[i]]);
  }
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    out.payoffs_[a].cost = payoffs[a].cost;
    for (std::size_t i = 0; i < n; ++i)
    {
      out.payoffs_[a].u.push_back(payoffs[a].u[order[i]]);
    }
  }
  out.generic_ = is_generic(out.states_.prior).generic;
  return out;
}

Rational Scenario::max_cost() const
{
  return payoffs_[0].cost > payoffs_[1].cost ? payoffs_[0].cost : payoffs_[1].cost;
}

Scenario Scenario::with_costs(Rational const &c1, Rational const &c2) const
{
  require(c1 >= 0 && c2 >= 0, ErrorCode::kInvalidArgument, "learning cost must be non-negative");
  Scenario copy          = *this;
  copy.payoffs_[0].cost = c1;
  copy.payoffs_[1].cost = c2;
  return copy;
}

Scenario Scenario::with_utilities(PayoffMatrix const &u1, PayoffMatrix const &u2) const
{
  Scenario copy = *this;
  for (auto const *u : {&u1, &u2})
  {
    require(u->size() == num_states(), ErrorCode::kDimensionMismatch,
            "payoff table has wrong row count");
    for (auto const &row : *u)
    {
      require(row.size() == num_outcomes(), ErrorCode::kDimensionMismatch,
              "payoff table has wrong column count");
    }
  }
  copy.payoffs_[0].u = u1;
  copy.payoffs_[1].u = u2;
  return copy;
}

std::size_t Scenario::state_index(std::string const &label) const
{
  auto it = std::find(states_.labels.begin(), states_.labels.end(), label);
  require(it != states_.labels.end(), ErrorCode::kInvalidArgument, "unknown state '" + label + "'");
  return static_cast<std::size_t>(it - states_.labels.begin());
}

std::size_t Scenario::outcome_index(std::string const &label) const
{
  auto it = std::find(outcomes_.labels.begin(), outcomes_.labels.end(), label);
  require(it != outcomes_.labels.end(), ErrorCode::kInvalidArgument,
          "unknown outcome '" + label + "'");
  return static_cast<std::size_t>(it - outcomes_.labels.begin());
}

Rational tv_distance(Lottery const &p, Lottery const &r)
{
  require(p.size() == r.size(), ErrorCode::kDimensionMismatch,
          "lotteries are over different outcome spaces");
  Rational total(0);
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    total += abs(Rational(p[i] - r[i]));
  }
  return total / 2;
}

GenericCheck is_generic(std::span<Rational const> prior)
{
  GenericCheck out;
  if (prior.empty())
  {
    return out;
  }
  std::size_t best  = 0;
  bool        tied  = false;
  for (std::size_t i = 1; i < prior.size(); ++i)
  {
    if (prior[i] > prior[best])
    {
      best = i;
      tied = false;
    }
    else if (prior[i] == prior[best])
    {
      tied = true;
    }
  }
  out.generic = !tied;
  out.argmax  = best;
  return out;
}

bool lotteries_equal(Lottery const &a, Lottery const &b, NumericMode mode)
{
  if (a.size() != b.size())
  {
    return false;
  }
  Rational const tol = lottery_tolerance(mode);
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    if (abs(Rational(a[i] - b[i])) > tol)
    {
      return false;
    }
  }
  return true;
}

bool is_nonconstant(std::span<Lottery const> scf, NumericMode mode)
{
  for (std::size_t i = 1; i < scf.size(); ++i)
  {
    if (!lotteries_equal(scf[0], scf[i], mode))
    {
      return true;
    }
  }
  return false;
}

Lottery pure_lottery(std::size_t num_outcomes, std::size_t index)
{
  Lottery p(num_outcomes, Rational(0));
  p.at(index) = 1;
  return p;
}

Rational expected_value(std::vector<Rational> const &row, Lottery const &p)
{
  require(row.size() == p.size(), ErrorCode::kDimensionMismatch, "payoff row and lottery differ");
  Rational total(0);
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    if (p[i] != 0)
    {
      total += row[i] * p[i];
    }
  }
  return total;
}

}  // namespace robimp
