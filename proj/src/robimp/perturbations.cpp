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

#include "robimp/perturbations.hpp"

#include "robimp/error.hpp"

#include <algorithm>

namespace robimp {

BiasSpec outcome_bias(Scenario const &scenario, std::size_t agent, std::size_t circumstance,
                      std::size_t outcome, Rational const &amount, std::optional<Rational> cost)
{
  require(agent < kAgents, ErrorCode::kInvalidArgument, "agent index out of range");
  require(outcome < scenario.num_outcomes(), ErrorCode::kInvalidArgument,
          "outcome index out of range");
  BiasSpec spec;
  spec.agent        = agent;
  spec.circumstance = circumstance;
  spec.cost         = std::move(cost);
  for (std::size_t s = 0; s < scenario.num_states(); ++s)
  {
    spec.u.push_back({s, outcome, scenario.payoff(agent).u[s][outcome] + amount});
  }
  return spec;
}

namespace {

bool same_payoff(AgentPayoff const &a, AgentPayoff const &b)
{
  return a.cost == b.cost && a.u == b.u;
}

}  // namespace

Perturbation Perturbation::create(Scenario const &scenario, std::vector<Rational> pi,
                                  std::array<std::vector<std::vector<std::size_t>>, kAgents> partitions,
                                  std::vector<BiasSpec> const &biases)
{
  validate_distribution(pi, "circumstance prior");
  std::size_t const W = pi.size();

  Perturbation out;
  out.pi_ = std::move(pi);
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    out.type_of_[a].assign(W, W);
    for (std::size_t k = 0; k < partitions[a].size(); ++k)
    {
      require(!partitions[a][k].empty(), ErrorCode::kInvalidArgument, "empty partition element");
      for (auto w : partitions[a][k])
      {
        require(w < W, ErrorCode::kInvalidArgument, "partition refers to unknown circumstance");
        require(out.type_of_[a][w] == W, ErrorCode::kInvalidArgument,
                "partition elements overlap");
        out.type_of_[a][w] = k;
      }
    }
    for (std::size_t w = 0; w < W; ++w)
    {
      require(out.type_of_[a][w] != W, ErrorCode::kInvalidArgument,
              "partition does not cover every circumstance");
    }
  }
  out.partitions_ = std::move(partitions);

  std::array<std::vector<AgentPayoff>, kAgents> per_w;
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    per_w[a].assign(W, scenario.payoff(a));
  }
  for (auto const &b : biases)
  {
    require(b.agent < kAgents, ErrorCode::kInvalidArgument, "bias agent out of range");
    require(b.circumstance < W, ErrorCode::kInvalidArgument, "bias circumstance out of range");
    auto &p = per_w[b.agent][b.circumstance];
    for (auto const &e : b.u)
    {
      require(e.state < scenario.num_states() && e.outcome < scenario.num_outcomes(),
              ErrorCode::kInvalidArgument, "bias entry out of range");
      p.u[e.state][e.outcome] = e.value;
    }
    if (b.cost)
    {
      require(*b.cost >= 0, ErrorCode::kInvalidArgument, "bias cost must be non-negative");
      p.cost = *b.cost;
    }
  }
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    out.table_of_[a].resize(W);
    out.normal_[a].resize(W);
    for (std::size_t w = 0; w < W; ++w)
    {
      out.normal_[a][w] = same_payoff(per_w[a][w], scenario.payoff(a));
      auto it = std::find_if(out.tables_[a].begin(), out.tables_[a].end(),
                             [&](AgentPayoff const &t) { return same_payoff(t, per_w[a][w]); });
      if (it == out.tables_[a].end())
      {
        out.tables_[a].push_back(per_w[a][w]);
        it = std::prev(out.tables_[a].end());
      }
      out.table_of_[a][w] = static_cast<std::size_t>(it - out.tables_[a].begin());
    }
  }
  return out;
}

Perturbation Perturbation::trivial(Scenario const &scenario)
{
  return create(scenario, {Rational(1)}, {{{{0}}, {{0}}}}, {});
}

Rational Perturbation::type_probability(std::size_t agent, std::size_t type) const
{
  Rational total(0);
  for (auto w : members(agent, type))
  {
    total += pi_[w];
  }
  return total;
}

std::vector<Rational> Perturbation::conditional(std::size_t agent, std::size_t type) const
{
  Rational const mass = type_probability(agent, type);
  require(mass > 0, ErrorCode::kZeroProbability, "type has zero probability");
  std::vector<Rational> out;
  for (auto w : members(agent, type))
  {
    out.push_back(pi_[w] / mass);
  }
  return out;
}

bool Perturbation::normal_type(std::size_t agent, std::size_t type) const
{
  auto const &m = members(agent, type);
  return std::all_of(m.begin(), m.end(), [&](std::size_t w) { return normal_at(agent, w); });
}

Rational Perturbation::max_cost() const
{
  Rational best(0);
  for (auto const &list : tables_)
  {
    for (auto const &t : list)
    {
      best = std::max(best, t.cost);
    }
  }
  return best;
}

std::array<std::vector<std::vector<std::size_t>>, kAgents> ladder_partitions(std::size_t depth)
{
  std::size_t const W = depth + 1;
  std::array<std::vector<std::vector<std::size_t>>, kAgents> parts;
  parts[0].push_back({0});
  for (std::size_t w = 1; w < W; w += 2)
  {
    std::vector<std::size_t> block{w};
    if (w + 1 < W)
    {
      block.push_back(w + 1);
    }
    parts[0].push_back(block);
  }
  for (std::size_t w = 0; w < W; w += 2)
  {
    std::vector<std::size_t> block{w};
    if (w + 1 < W)
    {
      block.push_back(w + 1);
    }
    parts[1].push_back(block);
  }
  return parts;
}

Perturbation build_ladder(Scenario const &scenario, std::size_t depth, Rational const &eta,
                          std::vector<BiasSpec> const &biases, TailConvention tail)
{
  require(depth >= 2, ErrorCode::kInvalidArgument, "ladder depth must be at least 2");
  require(eta > 0 && eta < 1, ErrorCode::kInvalidArgument, "eta must lie in (0, 1)");
  std::vector<Rational> pi;
  Rational              weight = eta;
  for (std::size_t t = 0; t < depth; ++t)
  {
    pi.push_back(weight);
    weight *= 1 - eta;
  }
  // weight is now eta (1-eta)^T
  Rational const tail_mass = weight / eta;
  if (tail == TailConvention::kLump)
  {
    pi.push_back(tail_mass);
  }
  else
  {
    pi.push_back(eta * tail_mass);
    Rational const kept = 1 - (1 - eta) * tail_mass;
    for (auto &p : pi)
    {
      p /= kept;
    }
  }
  auto out = Perturbation::create(scenario, std::move(pi), ladder_partitions(depth), biases);
  out.set_tail_mass(tail == TailConvention::kLump ? tail_mass : Rational((1 - eta) * tail_mass));
  return out;
}

Perturbation build_general_ladder(Scenario const &scenario, std::vector<Rational> pi,
                                  std::vector<BiasSpec> const &biases)
{
  require(pi.size() >= 3, ErrorCode::kInvalidArgument, "ladder needs at least 3 circumstances");
  std::size_t const depth = pi.size() - 1;
  return Perturbation::create(scenario, std::move(pi), ladder_partitions(depth), biases);
}

Perturbation PerturbationSpec::build(Scenario const &scenario, std::optional<Rational> const &override) const
{
  if (kind == Kind::kCustom)
  {
    return build_general_ladder(scenario, pi, biases);
  }
  return build_ladder(scenario, depth, override.value_or(eta), biases, tail);
}

Rational eta_of(Perturbation const &perturbation)
{
  Rational normal(0);
  for (std::size_t w = 0; w < perturbation.num_circumstances(); ++w)
  {
    bool both = true;
    for (std::size_t a = 0; a < kAgents; ++a)
    {
      both = both && perturbation.normal_type(a, perturbation.type_of(a, w));
    }
    if (both)
    {
      normal += perturbation.pi(w);
    }
  }
  return 1 - normal;
}

bool is_c_bounded(Perturbation const &perturbation, Rational const &cost_bound)
{
  return perturbation.max_cost() <= cost_bound;
}

std::vector<Rational> posterior(TypeLabel type, Perturbation const &perturbation)
{
  require(type.agent < kAgents, ErrorCode::kInvalidArgument, "agent index out of range");
  require(type.index < perturbation.num_types(type.agent), ErrorCode::kInvalidArgument,
          "type index out of range");
  std::size_t const     other = 1 - type.agent;
  std::vector<Rational> out(perturbation.num_types(other), Rational(0));
  auto const            cond    = perturbation.conditional(type.agent, type.index);
  auto const           &members = perturbation.members(type.agent, type.index);
  for (std::size_t i = 0; i < members.size(); ++i)
  {
    out[perturbation.type_of(other, members[i])] += cond[i];
  }
  return out;
}

}  // namespace robimp
