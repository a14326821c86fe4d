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

#include "robimp/equilibrium.hpp"

#include "robimp/error.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace robimp {

StrategySets strategy_sets(Game const &game, StrategyVariant variant)
{
  return {restricted_strategy_set(variant, game.mechanism(), game.signals(), 0),
          restricted_strategy_set(variant, game.mechanism(), game.signals(), 1)};
}

BestResponse best_response(Game const &game, std::size_t agent, Game::Interim const &interim,
                           StrategySet const &set)
{
  auto const strategies = set.enumerate();
  require(!strategies.empty(), ErrorCode::kInvalidArgument, "empty strategy set");
  BestResponse out;
  bool         first = true;
  for (auto const &s : strategies)
  {
    Rational v = game.value_of(interim, agent, s);
    if (first || v > out.value)
    {
      out.value = v;
      out.argmax.clear();
      out.argmax.push_back(s);
      first = false;
    }
    else if (v == out.value)
    {
      out.argmax.push_back(s);
    }
  }
  return out;
}

BestResponse best_response(Game const &game, std::size_t agent, std::size_t type,
                           Profile const &profile, StrategySet const &set)
{
  require(game.positive_type(agent, type), ErrorCode::kZeroProbability, "type has zero probability");
  return best_response(game, agent, game.interim(agent, type, game.behaviors(1 - agent, profile)), set);
}

EquilibriumReport verify_equilibrium(Game const &game, Profile const &profile, StrategySets const &sets)
{
  EquilibriumReport report;
  report.max_residual = 0;
  bool first          = true;
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    auto const opp = game.behaviors(1 - a, profile);
    for (std::size_t k = 0; k < game.perturbation().num_types(a); ++k)
    {
      if (!game.positive_type(a, k))
      {
        continue;
      }
      auto const interim = game.interim(a, k, opp);
      auto const br      = best_response(game, a, interim, sets[a]);
      Rational   own(0);
      for (auto const &[s, w] : profile[a].at(k))
      {
        own += w * game.value_of(interim, a, s);
      }
      Rational residual = br.value - own;
      if (first || residual > report.max_residual)
      {
        report.max_residual = residual;
        first               = false;
      }
      report.residuals.push_back({a, k, std::move(residual)});
    }
  }
  report.truthful_mass = game.truthful_mass(profile);
  report.max_tv        = 0;
  for (std::size_t s = 0; s < game.scenario().num_states(); ++s)
  {
    Rational tv = tv_distance(game.outcome_distribution(profile, s), game.scenario().scf()[s]);
    report.max_tv = std::max(report.max_tv, tv);
    report.tv.push_back(std::move(tv));
  }
  return report;
}

Rational DominanceCertificate::slack(Rational const &weight) const
{
  std::optional<Rational> best;
  for (auto const &w : witness)
  {
    Rational v = weight * w.at_truth + (1 - weight) * w.worst;
    if (!best || v < *best)
    {
      best = v;
    }
  }
  return best.value_or(Rational(1));
}

DominanceCertificate gamma_dominance_threshold(Game const &game, StrategySets const &sets)
{
  auto const &pert = game.perturbation();
  require(pert.num_types(0) == 1 && pert.num_types(1) == 1 && pert.num_circumstances() == 1,
          ErrorCode::kPrecondition, "gamma dominance is computed on the unperturbed game");

  DominanceCertificate cert;
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    std::size_t const o     = 1 - a;
    auto const        truth = truthful_strategy(game.signals(), a);
    auto const        otru  = truthful_strategy(game.signals(), o);
    require(sets[a].contains(truth) && sets[o].contains(otru), ErrorCode::kPrecondition,
            "restricted set must contain the truthful strategy");
    std::size_t const tab  = pert.payoff_index(a, 0);
    Rational const    cost = pert.payoff(a, 0).cost;
    std::size_t const X    = game.num_realizations(a);
    std::size_t const XO   = game.num_realizations(o);

    std::vector<std::size_t> truth_idx;
    for (int m : truth)
    {
      truth_idx.push_back(game.message_index(a, m));
    }

    for (auto const &s : sets[a].enumerate())
    {
      if (s == truth)
      {
        continue;
      }
      std::vector<std::size_t> idx;
      for (int m : s)
      {
        idx.push_back(game.message_index(a, m));
      }
      // Gain of truth over s, split by opponent realization.
      auto gain = [&](std::size_t xo, std::size_t mo) {
        Rational g(0);
        for (std::size_t x = 0; x < X; ++x)
        {
          if (idx[x] != truth_idx[x])
          {
            g += game.kernel(a, tab, x, truth_idx[x], xo, mo) - game.kernel(a, tab, x, idx[x], xo, mo);
          }
        }
        return g;
      };
      Rational const cost_diff =
          (is_constant(truth) ? Rational(0) : cost) - (is_constant(s) ? Rational(0) : cost);
      GammaWitness w;
      w.agent    = a;
      w.deviation = s;
      w.at_truth = -cost_diff;
      w.worst    = -cost_diff;
      for (std::size_t xo = 0; xo < XO; ++xo)
      {
        w.at_truth += gain(xo, game.message_index(o, otru[xo]));
        std::optional<Rational> low;
        for (int m : sets[o].allowed(xo))
        {
          Rational g = gain(xo, game.message_index(o, m));
          if (!low || g < *low)
          {
            low = g;
          }
        }
        w.worst += *low;
      }
      require(w.at_truth > 0, ErrorCode::kPrecondition,
              "truthful is not a strict best response against a truthful opponent");
      cert.witness.push_back(std::move(w));
    }
  }

  // Candidate thresholds: 0 and every root of a slack line inside (0, 1).
  std::set<Rational> candidates{Rational(0)};
  for (auto const &w : cert.witness)
  {
    if (w.worst <= 0)
    {
      candidates.insert(Rational(-w.worst / (w.at_truth - w.worst)));
    }
  }
  std::vector<Rational> sorted(candidates.begin(), candidates.end());
  // slack is concave and positive at 1, so {slack >= 0} is an upper interval.
  std::size_t lo = 0;
  std::size_t hi = sorted.size() - 1;
  while (lo < hi)
  {
    std::size_t const mid = (lo + hi) / 2;
    if (cert.slack(sorted[mid]) >= 0)
    {
      hi = mid;
    }
    else
    {
      lo = mid + 1;
    }
  }
  cert.gamma = sorted[lo];
  return cert;
}

DominanceCertificate gamma_dominance_threshold(Mechanism const &mechanism, Scenario const &scenario,
                                               StrategyVariant variant, Rational const &cost)
{
  Scenario const sc = scenario.with_costs(cost, cost);
  Game const     game(sc, mechanism, Perturbation::trivial(sc));
  return gamma_dominance_threshold(game, strategy_sets(game, variant));
}

Profile truthful_profile(Game const &game)
{
  return uniform_profile(game.perturbation(), pure(truthful_strategy(game.signals(), 0)),
                         pure(truthful_strategy(game.signals(), 1)));
}

namespace {

std::vector<PureStrategy> flatten(Profile const &profile)
{
  std::vector<PureStrategy> out;
  for (auto const &side : profile)
  {
    for (auto const &m : side)
    {
      out.push_back(m.size() == 1 ? m.front().first : PureStrategy{});
    }
  }
  return out;
}

}  // namespace

IterationResult iterate_best_response(Game const &game, Profile initial, StrategySets const &sets,
                                      std::size_t max_rounds)
{
  IterationResult out;
  out.profile = std::move(initial);
  std::vector<std::vector<PureStrategy>> history{flatten(out.profile)};
  for (std::size_t round = 0; round < max_rounds; ++round)
  {
    Profile next    = out.profile;
    bool    changed = false;
    for (std::size_t a = 0; a < kAgents; ++a)
    {
      auto const opp = game.behaviors(1 - a, out.profile);
      for (std::size_t k = 0; k < game.perturbation().num_types(a); ++k)
      {
        if (!game.positive_type(a, k))
        {
          continue;
        }
        auto const  br      = best_response(game, a, game.interim(a, k, opp), sets[a]);
        auto const &current = out.profile[a][k];
        bool const  keep    = current.size() == 1 &&
                          std::find(br.argmax.begin(), br.argmax.end(), current.front().first) !=
                              br.argmax.end();
        if (!keep)
        {
          next[a][k] = pure(br.argmax.front());
          changed    = true;
        }
      }
    }
    out.rounds = round + 1;
    if (!changed)
    {
      out.converged = true;
      return out;
    }
    out.profile = std::move(next);
    auto flat   = flatten(out.profile);
    if (std::find(history.begin(), history.end(), flat) != history.end())
    {
      out.cycled = true;
      break;
    }
    history.push_back(std::move(flat));
  }

  // Exhaustive fallback for small games.
  std::size_t total = 1;
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    for (std::size_t k = 0; k < game.perturbation().num_types(a); ++k)
    {
      total *= sets[a].size();
      if (total > 100'000)
      {
        return out;
      }
    }
  }
  auto found = pure_equilibria(game, sets);
  if (!found.empty())
  {
    out.profile   = std::move(found.front());
    out.converged = true;
    out.fallback  = true;
  }
  return out;
}

namespace {

using Values = std::vector<Rational>;

/// Sum over realizations of interim values, indexed like `strategies`.
Values strategy_values(Game const &game, std::size_t agent,
                       std::vector<std::vector<Rational>> const &matrix,
                       std::vector<PureStrategy> const          &strategies)
{
  Values out;
  out.reserve(strategies.size());
  for (auto const &s : strategies)
  {
    Rational v(0);
    for (std::size_t x = 0; x < s.size(); ++x)
    {
      v += matrix[x][game.message_index(agent, s[x])];
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

EliminationResult iterated_dominance(Game const &game, StrategySets const &sets,
                                     DominanceOptions const &options)
{
  auto const       &pert = game.perturbation();
  EliminationResult result;
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    result.surviving[a].assign(pert.num_types(a), sets[a].enumerate());
  }

  while (true)
  {
    std::array<std::vector<std::vector<bool>>, kAgents> dominated;
    bool                                                 any = false;
    for (std::size_t a = 0; a < kAgents; ++a)
    {
      std::size_t const o = 1 - a;
      dominated[a].resize(pert.num_types(a));
      for (std::size_t k = 0; k < pert.num_types(a); ++k)
      {
        auto const &mine = result.surviving[a][k];
        dominated[a][k].assign(mine.size(), false);
        if (!game.positive_type(a, k) || mine.size() < 2)
        {
          continue;
        }
        std::set<std::size_t> opp_types;
        auto const            cond = pert.conditional(a, k);
        for (std::size_t i = 0; i < pert.members(a, k).size(); ++i)
        {
          if (cond[i] != 0)
          {
            opp_types.insert(pert.type_of(o, pert.members(a, k)[i]));
          }
        }
        Rational cost(0);
        for (std::size_t i = 0; i < cond.size(); ++i)
        {
          cost += cond[i] * pert.payoff(a, pert.members(a, k)[i]).cost;
        }
        // values[k'][s'][s]
        std::vector<std::vector<Values>> values;
        for (auto kp : opp_types)
        {
          std::vector<Values> per_opp;
          for (auto const &sp : result.surviving[o][kp])
          {
            per_opp.push_back(strategy_values(game, a, game.partial_interim(a, k, kp, sp), mine));
          }
          values.push_back(std::move(per_opp));
        }
        std::vector<Rational> own_cost;
        for (auto const &s : mine)
        {
          own_cost.push_back(is_constant(s) ? Rational(0) : cost);
        }

        auto pure_dominates = [&](std::size_t by, std::size_t s) {
          Rational total = own_cost[s] - own_cost[by];
          for (auto const &per_opp : values)
          {
            std::optional<Rational> low;
            for (auto const &v : per_opp)
            {
              Rational d = v[by] - v[s];
              if (!low || d < *low)
              {
                low = d;
              }
            }
            total += *low;
          }
          return total > 0;
        };

        // phi(lambda) for lambda*by1 + (1-lambda)*by2 against s; concave.
        auto mixture_dominates = [&](std::size_t b1, std::size_t b2, std::size_t s) {
          std::set<Rational> lambdas{Rational(0), Rational(1)};
          for (auto const &per_opp : values)
          {
            for (std::size_t i = 0; i < per_opp.size(); ++i)
            {
              Rational const p1 = per_opp[i][b1] - per_opp[i][s];
              Rational const p2 = per_opp[i][b2] - per_opp[i][s];
              for (std::size_t j = i + 1; j < per_opp.size(); ++j)
              {
                Rational const q1 = per_opp[j][b1] - per_opp[j][s];
                Rational const q2 = per_opp[j][b2] - per_opp[j][s];
                // lambda p1 + (1-lambda) p2 == lambda q1 + (1-lambda) q2
                Rational const den = (p1 - p2) - (q1 - q2);
                if (den != 0)
                {
                  Rational l = (q2 - p2) / den;
                  if (l > 0 && l < 1)
                  {
                    lambdas.insert(l);
                  }
                }
              }
            }
          }
          for (auto const &l : lambdas)
          {
            Rational total = own_cost[s] - l * own_cost[b1] - (1 - l) * own_cost[b2];
            for (auto const &per_opp : values)
            {
              std::optional<Rational> low;
              for (auto const &v : per_opp)
              {
                Rational d = l * (v[b1] - v[s]) + (1 - l) * (v[b2] - v[s]);
                if (!low || d < *low)
                {
                  low = d;
                }
              }
              total += *low;
            }
            if (total > 0)
            {
              return true;
            }
          }
          return false;
        };

        std::size_t opp_count = 0;
        for (auto const &per_opp : values)
        {
          opp_count += per_opp.size();
        }
        bool const try_mixtures =
            options.pair_mixtures && mine.size() <= options.mixture_cap && opp_count <= options.mixture_cap;
        for (std::size_t s = 0; s < mine.size(); ++s)
        {
          bool dom = false;
          for (std::size_t by = 0; by < mine.size() && !dom; ++by)
          {
            dom = by != s && pure_dominates(by, s);
          }
          for (std::size_t b1 = 0; b1 < mine.size() && !dom && try_mixtures; ++b1)
          {
            for (std::size_t b2 = b1 + 1; b2 < mine.size() && !dom; ++b2)
            {
              dom = b1 != s && b2 != s && mixture_dominates(b1, b2, s);
            }
          }
          dominated[a][k][s] = dom;
          any                = any || dom;
        }
      }
    }
    if (!any)
    {
      return result;
    }
    ++result.rounds;
    for (std::size_t a = 0; a < kAgents; ++a)
    {
      for (std::size_t k = 0; k < pert.num_types(a); ++k)
      {
        std::vector<PureStrategy> kept;
        for (std::size_t s = 0; s < result.surviving[a][k].size(); ++s)
        {
          if (!dominated[a][k][s])
          {
            kept.push_back(std::move(result.surviving[a][k][s]));
          }
        }
        result.surviving[a][k] = std::move(kept);
      }
    }
  }
}

/// Unique solution of the augmented system [M | rhs], if the system is
/// consistent and has full column rank.
std::optional<std::vector<Rational>> solve_linear_unique(RationalMatrix m)
{
  if (m.empty())
  {
    return std::nullopt;
  }
  std::size_t const rows = m.size();
  std::size_t const cols = m.front().size() - 1;
  std::size_t       r    = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && r < rows; ++c)
  {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0)
    {
      ++p;
    }
    if (p == rows)
    {
      continue;
    }
    std::swap(m[p], m[r]);
    Rational const inv = 1 / m[r][c];
    for (auto &v : m[r])
    {
      v *= inv;
    }
    for (std::size_t i = 0; i < rows; ++i)
    {
      if (i != r && m[i][c] != 0)
      {
        Rational const f = m[i][c];
        for (std::size_t j = c; j <= cols; ++j)
        {
          m[i][j] -= f * m[r][j];
        }
      }
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
  {
    if (m[i][cols] != 0)
    {
      return std::nullopt;
    }
  }
  if (r != cols)
  {
    return std::nullopt;
  }
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < r; ++i)
  {
    x[pivot_col[i]] = m[i][cols];
  }
  return x;
}

namespace {

/// Mixture of the other player on `support` making every action in `active`
/// indifferent. payoff[i][j]: own action i, other action j.
std::optional<std::pair<std::vector<Rational>, Rational>>
indifference(RationalMatrix const &payoff, std::vector<std::size_t> const &active,
             std::vector<std::size_t> const &support)
{
  std::size_t const k = support.size();
  RationalMatrix    sys;
  for (auto i : active)
  {
    std::vector<Rational> row;
    for (auto j : support)
    {
      row.push_back(payoff[i][j]);
    }
    row.push_back(Rational(-1));
    row.push_back(Rational(0));
    sys.push_back(std::move(row));
  }
  std::vector<Rational> norm(k, Rational(1));
  norm.push_back(Rational(0));
  norm.push_back(Rational(1));
  sys.push_back(std::move(norm));
  auto sol = solve_linear_unique(std::move(sys));
  if (!sol)
  {
    return std::nullopt;
  }
  Rational value = sol->back();
  sol->pop_back();
  for (auto const &p : *sol)
  {
    if (p < 0)
    {
      return std::nullopt;
    }
  }
  return std::make_pair(std::move(*sol), std::move(value));
}

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t k)
{
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t>              cur(k);
  for (std::size_t i = 0; i < k; ++i)
  {
    cur[i] = i;
  }
  if (k > n || k == 0)
  {
    return out;
  }
  while (true)
  {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1)
    {
      --i;
    }
    if (i == 0)
    {
      return out;
    }
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j)
    {
      cur[j] = cur[j - 1] + 1;
    }
  }
}

}  // namespace

NashEquilibrium support_enumeration_nash(RationalMatrix const &A, RationalMatrix const &B)
{
  std::size_t const m = A.size();
  require(m > 0 && B.size() == m, ErrorCode::kDimensionMismatch, "payoff matrices differ in shape");
  std::size_t const n = A.front().size();
  require(n > 0, ErrorCode::kDimensionMismatch, "empty payoff matrix");
  for (std::size_t i = 0; i < m; ++i)
  {
    require(A[i].size() == n && B[i].size() == n, ErrorCode::kDimensionMismatch,
            "payoff matrices differ in shape");
  }
  // Column player's payoff with own action first.
  RationalMatrix BT(n, std::vector<Rational>(m));
  for (std::size_t i = 0; i < m; ++i)
  {
    for (std::size_t j = 0; j < n; ++j)
    {
      BT[j][i] = B[i][j];
    }
  }

  for (std::size_t total = 2; total <= m + n; ++total)
  {
    for (std::size_t ki = 1; ki <= std::min(m, total - 1); ++ki)
    {
      std::size_t const kj = total - ki;
      if (kj < 1 || kj > n)
      {
        continue;
      }
      for (auto const &I : subsets_of_size(m, ki))
      {
        for (auto const &J : subsets_of_size(n, kj))
        {
          auto ysol = indifference(A, I, J);
          if (!ysol)
          {
            continue;
          }
          auto xsol = indifference(BT, J, I);
          if (!xsol)
          {
            continue;
          }
          NashEquilibrium eq;
          eq.row.assign(m, Rational(0));
          eq.col.assign(n, Rational(0));
          for (std::size_t t = 0; t < I.size(); ++t)
          {
            eq.row[I[t]] = xsol->first[t];
          }
          for (std::size_t t = 0; t < J.size(); ++t)
          {
            eq.col[J[t]] = ysol->first[t];
          }
          eq.row_value = ysol->second;
          eq.col_value = xsol->second;
          bool ok      = true;
          for (std::size_t i = 0; i < m && ok; ++i)
          {
            Rational v(0);
            for (std::size_t j = 0; j < n; ++j)
            {
              v += A[i][j] * eq.col[j];
            }
            ok = v <= eq.row_value;
          }
          for (std::size_t j = 0; j < n && ok; ++j)
          {
            Rational v(0);
            for (std::size_t i = 0; i < m; ++i)
            {
              v += B[i][j] * eq.row[i];
            }
            ok = v <= eq.col_value;
          }
          if (ok)
          {
            return eq;
          }
        }
      }
    }
  }
  fail(ErrorCode::kInfeasible, "support enumeration found no equilibrium (degenerate game)");
}

std::vector<Profile> pure_equilibria(Game const &game, StrategySets const &sets, std::size_t max_profiles)
{
  auto const &pert = game.perturbation();
  // Slots: every positive-probability type.
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  std::array<std::vector<PureStrategy>, kAgents>   lists{sets[0].enumerate(), sets[1].enumerate()};
  std::size_t                                      total = 1;
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    for (std::size_t k = 0; k < pert.num_types(a); ++k)
    {
      if (game.positive_type(a, k))
      {
        slots.emplace_back(a, k);
        total *= lists[a].size();
        require(total <= max_profiles, ErrorCode::kPrecondition, "too many pure profiles to enumerate");
      }
    }
  }
  Profile base = uniform_profile(pert, pure(lists[0].front()), pure(lists[1].front()));
  std::vector<Profile>     out;
  std::vector<std::size_t> pos(slots.size(), 0);
  while (true)
  {
    Profile p = base;
    for (std::size_t i = 0; i < slots.size(); ++i)
    {
      p[slots[i].first][slots[i].second] = pure(lists[slots[i].first][pos[i]]);
    }
    if (verify_equilibrium(game, p, sets).equilibrium())
    {
      out.push_back(std::move(p));
    }
    std::size_t i = slots.size();
    bool        done = true;
    while (i > 0)
    {
      --i;
      if (++pos[i] < lists[slots[i].first].size())
      {
        done = false;
        break;
      }
      pos[i] = 0;
    }
    if (done)
    {
      return out;
    }
  }
}

std::vector<std::vector<Rational>> simplex_grid(std::size_t count, Rational const &step)
{
  require(count >= 1, ErrorCode::kInvalidArgument, "grid needs at least one item");
  require(step > 0 && step <= 1, ErrorCode::kInvalidArgument, "grid step must lie in (0, 1]");
  Rational const inv = 1 / step;
  require(inv.get_den() == 1, ErrorCode::kInvalidArgument, "grid step must divide 1");
  long const N = inv.get_num().get_si();

  std::vector<std::vector<Rational>> out;
  std::vector<long>                  parts(count, 0);
  // Compositions of N into `count` parts, lexicographically descending on the first part.
  auto rec = [&](auto &&self, std::size_t i, long left) -> void {
    if (i + 1 == count)
    {
      parts[i] = left;
      std::vector<Rational> w;
      for (auto p : parts)
      {
        w.push_back(Rational(p) * step);
      }
      out.push_back(std::move(w));
      return;
    }
    for (long v = left; v >= 0; --v)
    {
      parts[i] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, N);
  return out;
}

namespace {

MixedStrategy mixture(std::vector<PureStrategy> const &support, std::vector<Rational> const &weights)
{
  MixedStrategy out;
  for (std::size_t i = 0; i < support.size(); ++i)
  {
    if (weights[i] != 0)
    {
      out.emplace_back(support[i], weights[i]);
    }
  }
  return out;
}

}  // namespace

GridSearch grid_equilibria(Game const &game, StrategySets const &sets, GridOptions const &options)
{
  auto const &pert = game.perturbation();
  std::size_t one  = pert.num_types(0);
  for (std::size_t k = 0; k < pert.num_types(0); ++k)
  {
    if (game.positive_type(0, k))
    {
      require(one == pert.num_types(0), ErrorCode::kPrecondition,
              "grid search needs a single type for agent 1");
      one = k;
    }
  }
  GridSearch  out;
  auto const  s1   = sets[0].enumerate();
  auto const  s2   = sets[1].enumerate();
  auto const  grid = simplex_grid(s1.size(), options.step);
  Profile     base = uniform_profile(pert, pure(s1.front()), pure(s2.front()));

  for (auto const &w1 : grid)
  {
    Profile p     = base;
    p[0][one]     = mixture(s1, w1);
    auto const b1 = game.behaviors(0, p);
    // Candidate mixtures for every positive type of agent 2.
    std::vector<std::size_t>                types;
    std::vector<std::vector<MixedStrategy>> choices;
    std::size_t                             combos = 1;
    for (std::size_t k = 0; k < pert.num_types(1); ++k)
    {
      if (!game.positive_type(1, k))
      {
        continue;
      }
      auto const br = best_response(game, 1, game.interim(1, k, b1), sets[1]);
      std::vector<MixedStrategy> list;
      for (auto const &w2 : simplex_grid(br.argmax.size(), options.step))
      {
        list.push_back(mixture(br.argmax, w2));
      }
      combos *= list.size();
      types.push_back(k);
      choices.push_back(std::move(list));
    }
    if (out.candidates + combos > options.max_candidates)
    {
      out.truncated = true;
      return out;
    }
    out.candidates += combos;
    std::vector<std::size_t> pos(types.size(), 0);
    while (true)
    {
      for (std::size_t i = 0; i < types.size(); ++i)
      {
        p[1][types[i]] = choices[i][pos[i]];
      }
      auto const br1 = best_response(game, 0, game.interim(0, one, game.behaviors(1, p)), sets[0]);
      bool       ok  = true;
      for (std::size_t i = 0; i < s1.size() && ok; ++i)
      {
        ok = w1[i] == 0 || std::find(br1.argmax.begin(), br1.argmax.end(), s1[i]) != br1.argmax.end();
      }
      if (ok)
      {
        out.equilibria.push_back(p);
      }
      std::size_t i    = types.size();
      bool        done = true;
      while (i > 0)
      {
        --i;
        if (++pos[i] < choices[i].size())
        {
          done = false;
          break;
        }
        pos[i] = 0;
      }
      if (done)
      {
        break;
      }
    }
  }
  return out;
}

}  // namespace robimp
