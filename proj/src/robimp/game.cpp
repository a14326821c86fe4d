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

#include "robimp/game.hpp"

#include "robimp/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

namespace robimp {

SignalStructure perfectly_revealing(std::span<Rational const> prior)
{
  SignalStructure out;
  std::size_t const n = prior.size();
  out.num_signals     = {n, n};
  for (std::size_t s = 0; s < n; ++s)
  {
    out.joint.push_back({s, s, s, prior[s]});
    out.meaning[0].push_back(s);
    out.meaning[1].push_back(s);
  }
  return out;
}

SignalStructure symmetric_noise(std::span<Rational const> prior, Rational const &flip)
{
  require(flip >= 0 && flip < 1, ErrorCode::kInvalidArgument, "flip probability must lie in [0,1)");
  std::size_t const n = prior.size();
  require(n >= 2, ErrorCode::kInvalidArgument, "at least two states are required");
  SignalStructure out;
  out.num_signals = {n, n};
  for (std::size_t s = 0; s < n; ++s)
  {
    out.meaning[0].push_back(s);
    out.meaning[1].push_back(s);
  }
  Rational const other = flip / static_cast<long>(n - 1);
  auto           p     = [&](std::size_t state, std::size_t sig) -> Rational {
    return sig == state ? Rational(1 - flip) : other;
  };
  for (std::size_t s = 0; s < n; ++s)
  {
    for (std::size_t a = 0; a < n; ++a)
    {
      for (std::size_t b = 0; b < n; ++b)
      {
        Rational const w = prior[s] * p(s, a) * p(s, b);
        if (w != 0)
        {
          out.joint.push_back({s, a, b, w});
        }
      }
    }
  }
  return out;
}

Rational size_of_signal_structure(SignalStructure const &signals, std::span<Rational const> prior)
{
  std::vector<Rational> marginal(prior.size(), Rational(0));
  Rational              total(0);
  for (auto const &e : signals.joint)
  {
    require(e.state < prior.size() && e.s1 < signals.num_signals[0] && e.s2 < signals.num_signals[1],
            ErrorCode::kInvalidArgument, "signal entry out of range");
    require(e.p >= 0, ErrorCode::kInvalidArgument, "negative signal probability");
    marginal[e.state] += e.p;
    total += e.p;
  }
  require(total == 1, ErrorCode::kInvalidArgument, "signal distribution does not sum to 1");
  for (std::size_t s = 0; s < prior.size(); ++s)
  {
    require(marginal[s] == prior[s], ErrorCode::kInvalidArgument,
            "state marginal of the signal structure differs from the prior");
  }

  Rational size(0);
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    require(signals.meaning[a].size() == signals.num_signals[a], ErrorCode::kDimensionMismatch,
            "meaning map is not total");
    std::vector<Rational> mass(signals.num_signals[a], Rational(0));
    std::vector<Rational> agree(signals.num_signals[a], Rational(0));
    Rational              correct(0);
    for (auto const &e : signals.joint)
    {
      std::size_t const own = signals.signal_of(a, e);
      std::size_t const opp = signals.signal_of(1 - a, e);
      mass[own] += e.p;
      if (signals.meaning[1 - a][opp] == signals.meaning[a][own])
      {
        agree[own] += e.p;
      }
      if (signals.meaning[a][own] == e.state)
      {
        correct += e.p;
      }
    }
    for (std::size_t s = 0; s < mass.size(); ++s)
    {
      if (mass[s] > 0)
      {
        size = std::max(size, Rational(1 - agree[s] / mass[s]));
      }
    }
    size = std::max(size, Rational(1 - correct));
  }
  return size;
}

std::vector<Rational> point_mass_noise(Mechanism const &mechanism, std::size_t agent, int label)
{
  std::vector<Rational> out(mechanism.num_messages(agent), Rational(0));
  out[mechanism.index_of(agent, label)] = 1;
  return out;
}

StrategySet::StrategySet(std::vector<std::vector<int>> allowed)
  : allowed_(std::move(allowed))
{
  for (auto &list : allowed_)
  {
    require(!list.empty(), ErrorCode::kInvalidArgument, "empty message list in strategy set");
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

bool StrategySet::contains(PureStrategy const &s) const
{
  if (s.size() != allowed_.size())
  {
    return false;
  }
  for (std::size_t x = 0; x < s.size(); ++x)
  {
    if (!std::binary_search(allowed_[x].begin(), allowed_[x].end(), s[x]))
    {
      return false;
    }
  }
  return true;
}

std::size_t StrategySet::size() const
{
  std::size_t total = 1;
  for (auto const &list : allowed_)
  {
    total *= list.size();
  }
  return total;
}

std::vector<PureStrategy> StrategySet::enumerate() const
{
  require(size() <= 2'000'000, ErrorCode::kPrecondition, "strategy set too large to enumerate");
  std::vector<PureStrategy> out;
  std::vector<std::size_t>  pos(allowed_.size(), 0);
  while (true)
  {
    PureStrategy s(allowed_.size());
    for (std::size_t x = 0; x < s.size(); ++x)
    {
      s[x] = allowed_[x][pos[x]];
    }
    out.push_back(std::move(s));
    // odometer, last realization fastest
    std::size_t x = allowed_.size();
    while (x > 0)
    {
      --x;
      if (++pos[x] < allowed_[x].size())
      {
        break;
      }
      pos[x] = 0;
      if (x == 0)
      {
        return out;
      }
    }
    if (allowed_.empty())
    {
      return out;
    }
  }
}

StrategySet restricted_strategy_set(StrategyVariant variant, Mechanism const &mechanism,
                                    SignalStructure const &signals, std::size_t agent)
{
  auto const                   &messages = mechanism.messages(agent);
  std::vector<std::vector<int>> allowed;
  for (std::size_t x = 0; x < signals.num_signals.at(agent); ++x)
  {
    int const        j = static_cast<int>(signals.meaning[agent][x]) + 1;
    std::vector<int> list;
    switch (variant)
    {
    case StrategyVariant::kFull:
      list = messages;
      break;
    case StrategyVariant::kStatusQuo:
      list = {1, j};
      break;
    case StrategyVariant::kSigned:
      for (int m : messages)
      {
        if (m <= 1 || m == j)
        {
          list.push_back(m);
        }
      }
      break;
    }
    for (int m : list)
    {
      require(mechanism.has_message(agent, m), ErrorCode::kInvalidArgument,
              "restricted set uses a message the mechanism lacks");
    }
    allowed.push_back(std::move(list));
  }
  return StrategySet(std::move(allowed));
}

PureStrategy truthful_strategy(SignalStructure const &signals, std::size_t agent)
{
  PureStrategy s;
  for (auto h : signals.meaning.at(agent))
  {
    s.push_back(static_cast<int>(h) + 1);
  }
  return s;
}

bool is_constant(PureStrategy const &s)
{
  return std::adjacent_find(s.begin(), s.end(), std::not_equal_to<>()) == s.end();
}

PureStrategy canonical_replacement(PureStrategy const &s, StrategyVariant variant,
                                   SignalStructure const &signals, std::size_t agent)
{
  require(s.size() == signals.num_signals.at(agent), ErrorCode::kDimensionMismatch,
          "strategy length does not match the number of realizations");
  require(variant != StrategyVariant::kFull, ErrorCode::kInvalidArgument,
          "no replacement rule for the full strategy set");
  auto valid = [&](std::size_t x, int m) {
    int const j = static_cast<int>(signals.meaning[agent][x]) + 1;
    if (variant == StrategyVariant::kStatusQuo)
    {
      return m == 1 || m == j;
    }
    return m <= 1 || m == j;
  };
  bool inside = true;
  for (std::size_t x = 0; x < s.size(); ++x)
  {
    inside = inside && valid(x, s[x]);
  }
  require(!inside, ErrorCode::kInvalidArgument, "strategy already belongs to the restricted set");

  PureStrategy out = s;
  if (variant == StrategyVariant::kSigned && is_constant(s) && s.front() >= 2)
  {
    std::fill(out.begin(), out.end(), -s.front());
    return out;
  }
  for (std::size_t x = 0; x < s.size(); ++x)
  {
    if (!valid(x, s[x]))
    {
      out[x] = variant == StrategyVariant::kStatusQuo ? 1 : -s[x];
    }
  }
  return out;
}

Rational learning_cost_of(PureStrategy const &s, std::size_t agent, std::size_t circumstance,
                          Perturbation const &perturbation)
{
  if (is_constant(s))
  {
    return Rational(0);
  }
  return perturbation.payoff(agent, circumstance).cost;
}

MixedStrategy pure(PureStrategy s)
{
  return {{std::move(s), Rational(1)}};
}

Profile uniform_profile(Perturbation const &perturbation, MixedStrategy const &s1,
                        MixedStrategy const &s2)
{
  Profile out;
  out[0].assign(perturbation.num_types(0), s1);
  out[1].assign(perturbation.num_types(1), s2);
  return out;
}

Game::Game(Scenario scenario, Mechanism mechanism, Perturbation perturbation)
  : scenario_(std::move(scenario))
  , mechanism_(std::move(mechanism))
  , perturbation_(std::move(perturbation))
  , signals_(perfectly_revealing(scenario_.states().prior))
{
  precompute();
}

Game::Game(Scenario scenario, Mechanism mechanism, Perturbation perturbation,
           SignalStructure signals, TrembleSpec tremble)
  : scenario_(std::move(scenario))
  , mechanism_(std::move(mechanism))
  , perturbation_(std::move(perturbation))
  , signals_(std::move(signals))
  , tremble_(std::move(tremble))
{
  precompute();
}

namespace {

using Matrix = std::vector<std::vector<Rational>>;

Matrix tremble_kernel(TrembleSpec const &tremble, std::size_t agent, std::size_t m)
{
  Matrix k(m, std::vector<Rational>(m, Rational(0)));
  for (std::size_t i = 0; i < m; ++i)
  {
    k[i][i] = 1 - tremble.tau;
    for (std::size_t j = 0; j < m; ++j)
    {
      k[i][j] += tremble.tau * tremble.noise[agent][j];
    }
  }
  return k;
}

}  // namespace

void Game::precompute()
{
  std::size_t const n = scenario_.num_states();
  require(mechanism_.num_outcomes() == scenario_.num_outcomes(), ErrorCode::kDimensionMismatch,
          "mechanism and scenario use different outcome spaces");
  size_of_signal_structure(signals_, scenario_.states().prior);
  require(tremble_.tau >= 0 && tremble_.tau < 1, ErrorCode::kInvalidArgument,
          "tremble probability must lie in [0,1)");

  std::array<std::size_t, kAgents> M{mechanism_.num_messages(0), mechanism_.num_messages(1)};
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    auto &noise = tremble_.noise[a];
    if (noise.empty())
    {
      noise.assign(M[a], Rational(1) / static_cast<long>(M[a]));
    }
    validate_distribution(noise, "tremble distribution");
    require(noise.size() == M[a], ErrorCode::kDimensionMismatch,
            "tremble distribution has the wrong length");
  }
  std::array<Matrix, kAgents> K{tremble_kernel(tremble_, 0, M[0]), tremble_kernel(tremble_, 1, M[1])};
  bool const                  trembles = tremble_.tau != 0;

  // Realized outcome for intended positions.
  std::size_t const Y = scenario_.num_outcomes();
  realized_outcome_.assign(M[0] * M[1], Lottery(Y, Rational(0)));
  for (std::size_t a = 0; a < M[0]; ++a)
  {
    for (std::size_t b = 0; b < M[1]; ++b)
    {
      auto &out = realized_outcome_[a * M[1] + b];
      for (std::size_t ra = 0; ra < M[0]; ++ra)
      {
        if (K[0][a][ra] == 0)
        {
          continue;
        }
        for (std::size_t rb = 0; rb < M[1]; ++rb)
        {
          if (K[1][b][rb] == 0)
          {
            continue;
          }
          Rational const w = K[0][a][ra] * K[1][b][rb];
          auto const    &g = mechanism_.outcome_at(ra, rb);
          for (std::size_t y = 0; y < Y; ++y)
          {
            out[y] += w * g[y];
          }
        }
      }
    }
  }

  signal_given_state_.assign(
      n, std::vector<std::vector<Rational>>(signals_.num_signals[0],
                                            std::vector<Rational>(signals_.num_signals[1], Rational(0))));
  for (auto const &e : signals_.joint)
  {
    signal_given_state_[e.state][e.s1][e.s2] += e.p / scenario_.prior(e.state);
  }

  for (std::size_t a = 0; a < kAgents; ++a)
  {
    std::size_t const o  = 1 - a;
    std::size_t const X  = signals_.num_signals[a];
    std::size_t const XO = signals_.num_signals[o];
    kernel_[a].clear();
    for (std::size_t tab = 0; tab < perturbation_.num_payoff_tables(a); ++tab)
    {
      auto const &payoff = perturbation_.payoff_table(a, tab);
      // W[theta][own][opp] over realized positions.
      std::vector<Matrix> W(n, Matrix(M[a], std::vector<Rational>(M[o], Rational(0))));
      for (std::size_t s = 0; s < n; ++s)
      {
        for (std::size_t mi = 0; mi < M[a]; ++mi)
        {
          for (std::size_t mo = 0; mo < M[o]; ++mo)
          {
            std::size_t const i1 = a == 0 ? mi : mo;
            std::size_t const i2 = a == 0 ? mo : mi;
            W[s][mi][mo] = mechanism_.transfer_at(a, i1, i2) +
                           expected_value(payoff.u[s], mechanism_.outcome_at(i1, i2));
          }
        }
      }
      if (trembles)
      {
        for (std::size_t s = 0; s < n; ++s)
        {
          Matrix tmp(M[a], std::vector<Rational>(M[o], Rational(0)));
          for (std::size_t hi = 0; hi < M[a]; ++hi)
          {
            for (std::size_t ho = 0; ho < M[o]; ++ho)
            {
              Rational v(0);
              for (std::size_t ri = 0; ri < M[a]; ++ri)
              {
                if (K[a][hi][ri] == 0)
                {
                  continue;
                }
                Rational inner(0);
                for (std::size_t ro = 0; ro < M[o]; ++ro)
                {
                  if (K[o][ho][ro] != 0)
                  {
                    inner += K[o][ho][ro] * W[s][ri][ro];
                  }
                }
                v += K[a][hi][ri] * inner;
              }
              tmp[hi][ho] = v;
            }
          }
          W[s] = std::move(tmp);
        }
      }
      std::vector<Rational> flat(X * M[a] * XO * M[o], Rational(0));
      for (auto const &e : signals_.joint)
      {
        std::size_t const x  = signals_.signal_of(a, e);
        std::size_t const xo = signals_.signal_of(o, e);
        for (std::size_t mi = 0; mi < M[a]; ++mi)
        {
          for (std::size_t mo = 0; mo < M[o]; ++mo)
          {
            flat[((x * M[a] + mi) * XO + xo) * M[o] + mo] += e.p * W[e.state][mi][mo];
          }
        }
      }
      kernel_[a].push_back(std::move(flat));
    }
  }
}

Rational const &Game::kernel(std::size_t agent, std::size_t table, std::size_t x, std::size_t m,
                             std::size_t xo, std::size_t mo) const
{
  std::size_t const o  = 1 - agent;
  std::size_t const Mi = mechanism_.num_messages(agent);
  std::size_t const Mo = mechanism_.num_messages(o);
  std::size_t const XO = signals_.num_signals[o];
  return kernel_[agent][table][((x * Mi + m) * XO + xo) * Mo + mo];
}

std::vector<std::vector<Rational>> Game::behavior(std::size_t agent, MixedStrategy const &s) const
{
  std::size_t const X = signals_.num_signals.at(agent);
  std::size_t const M = mechanism_.num_messages(agent);
  std::vector<std::vector<Rational>> beta(X, std::vector<Rational>(M, Rational(0)));
  Rational                           total(0);
  for (auto const &[strategy, weight] : s)
  {
    require(strategy.size() == X, ErrorCode::kDimensionMismatch,
            "strategy length does not match the number of realizations");
    require(weight >= 0, ErrorCode::kInvalidArgument, "negative mixture weight");
    total += weight;
    for (std::size_t x = 0; x < X; ++x)
    {
      beta[x][mechanism_.index_of(agent, strategy[x])] += weight;
    }
  }
  require(total == 1, ErrorCode::kInvalidArgument, "mixture weights do not sum to 1");
  return beta;
}

std::vector<std::vector<std::vector<Rational>>> Game::behaviors(std::size_t agent,
                                                                Profile const &profile) const
{
  require(profile[agent].size() == perturbation_.num_types(agent), ErrorCode::kDimensionMismatch,
          "profile does not cover every type");
  std::vector<std::vector<std::vector<Rational>>> out;
  for (std::size_t k = 0; k < profile[agent].size(); ++k)
  {
    if (positive_type(agent, k))
    {
      out.push_back(behavior(agent, profile[agent][k]));
    }
    else
    {
      out.emplace_back();
    }
  }
  return out;
}

Game::Interim Game::interim(std::size_t agent, std::size_t type,
                            std::vector<std::vector<std::vector<Rational>>> const &opponent) const
{
  std::size_t const o  = 1 - agent;
  std::size_t const X  = signals_.num_signals[agent];
  std::size_t const XO = signals_.num_signals[o];
  std::size_t const M  = mechanism_.num_messages(agent);
  std::size_t const MO = mechanism_.num_messages(o);

  Interim out;
  out.value.assign(X, std::vector<Rational>(M, Rational(0)));
  out.expected_cost = 0;
  auto const  cond    = perturbation_.conditional(agent, type);
  auto const &members = perturbation_.members(agent, type);
  for (std::size_t i = 0; i < members.size(); ++i)
  {
    std::size_t const w = members[i];
    if (cond[i] == 0)
    {
      continue;
    }
    std::size_t const tab  = perturbation_.payoff_index(agent, w);
    auto const       &beta = opponent.at(perturbation_.type_of(o, w));
    out.expected_cost += cond[i] * perturbation_.payoff(agent, w).cost;
    for (std::size_t x = 0; x < X; ++x)
    {
      for (std::size_t m = 0; m < M; ++m)
      {
        Rational v(0);
        for (std::size_t xo = 0; xo < XO; ++xo)
        {
          for (std::size_t mo = 0; mo < MO; ++mo)
          {
            if (beta[xo][mo] != 0)
            {
              v += beta[xo][mo] * kernel(agent, tab, x, m, xo, mo);
            }
          }
        }
        out.value[x][m] += cond[i] * v;
      }
    }
  }
  return out;
}

std::vector<std::vector<Rational>> Game::partial_interim(std::size_t agent, std::size_t type,
                                                         std::size_t         opp_type,
                                                         PureStrategy const &opp) const
{
  std::size_t const o = 1 - agent;
  std::size_t const X = signals_.num_signals[agent];
  std::size_t const M = mechanism_.num_messages(agent);
  require(opp.size() == signals_.num_signals[o], ErrorCode::kDimensionMismatch,
          "opponent strategy length does not match the number of realizations");
  std::vector<std::size_t> opp_idx;
  for (int label : opp)
  {
    opp_idx.push_back(mechanism_.index_of(o, label));
  }

  std::vector<std::vector<Rational>> out(X, std::vector<Rational>(M, Rational(0)));
  auto const  cond    = perturbation_.conditional(agent, type);
  auto const &members = perturbation_.members(agent, type);
  for (std::size_t i = 0; i < members.size(); ++i)
  {
    std::size_t const w = members[i];
    if (cond[i] == 0 || perturbation_.type_of(o, w) != opp_type)
    {
      continue;
    }
    std::size_t const tab = perturbation_.payoff_index(agent, w);
    for (std::size_t x = 0; x < X; ++x)
    {
      for (std::size_t m = 0; m < M; ++m)
      {
        Rational v(0);
        for (std::size_t xo = 0; xo < opp_idx.size(); ++xo)
        {
          v += kernel(agent, tab, x, m, xo, opp_idx[xo]);
        }
        out[x][m] += cond[i] * v;
      }
    }
  }
  return out;
}

Rational Game::value_of(Interim const &interim, std::size_t agent, PureStrategy const &s) const
{
  require(s.size() == interim.value.size(), ErrorCode::kDimensionMismatch,
          "strategy length does not match the number of realizations");
  Rational v(0);
  for (std::size_t x = 0; x < s.size(); ++x)
  {
    v += interim.value[x][mechanism_.index_of(agent, s[x])];
  }
  if (!is_constant(s))
  {
    v -= interim.expected_cost;
  }
  return v;
}

Rational Game::expected_payoff(std::size_t agent, std::size_t type, PureStrategy const &s,
                               Profile const &profile) const
{
  require(positive_type(agent, type), ErrorCode::kZeroProbability, "type has zero probability");
  return value_of(interim(agent, type, behaviors(1 - agent, profile)), agent, s);
}

Lottery Game::outcome_distribution(Profile const &profile, std::size_t state) const
{
  require(state < scenario_.num_states(), ErrorCode::kInvalidArgument, "state index out of range");
  auto const        b1 = behaviors(0, profile);
  auto const        b2 = behaviors(1, profile);
  std::size_t const M1 = mechanism_.num_messages(0);
  std::size_t const M2 = mechanism_.num_messages(1);
  std::size_t const Y  = scenario_.num_outcomes();
  auto const       &sig = signal_given_state_[state];

  Lottery out(Y, Rational(0));
  for (std::size_t w = 0; w < perturbation_.num_circumstances(); ++w)
  {
    if (perturbation_.pi(w) == 0)
    {
      continue;
    }
    auto const &beta1 = b1[perturbation_.type_of(0, w)];
    auto const &beta2 = b2[perturbation_.type_of(1, w)];
    for (std::size_t x1 = 0; x1 < sig.size(); ++x1)
    {
      for (std::size_t x2 = 0; x2 < sig[x1].size(); ++x2)
      {
        if (sig[x1][x2] == 0)
        {
          continue;
        }
        Rational const base = perturbation_.pi(w) * sig[x1][x2];
        for (std::size_t m1 = 0; m1 < M1; ++m1)
        {
          if (beta1[x1][m1] == 0)
          {
            continue;
          }
          for (std::size_t m2 = 0; m2 < M2; ++m2)
          {
            if (beta2[x2][m2] == 0)
            {
              continue;
            }
            Rational const wgt = base * beta1[x1][m1] * beta2[x2][m2];
            auto const    &g   = realized_outcome_[m1 * M2 + m2];
            for (std::size_t y = 0; y < Y; ++y)
            {
              out[y] += wgt * g[y];
            }
          }
        }
      }
    }
  }
  return out;
}

Rational Game::truthful_mass(Profile const &profile) const
{
  std::array<PureStrategy, kAgents> truth{truthful_strategy(signals_, 0), truthful_strategy(signals_, 1)};
  auto weight_of = [&](std::size_t a, std::size_t k) {
    Rational total(0);
    for (auto const &[s, w] : profile[a].at(k))
    {
      if (s == truth[a])
      {
        total += w;
      }
    }
    return total;
  };
  Rational mass(0);
  for (std::size_t w = 0; w < perturbation_.num_circumstances(); ++w)
  {
    if (perturbation_.pi(w) == 0)
    {
      continue;
    }
    mass += perturbation_.pi(w) * weight_of(0, perturbation_.type_of(0, w)) *
            weight_of(1, perturbation_.type_of(1, w));
  }
  return mass;
}

}  // namespace robimp
