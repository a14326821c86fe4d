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

#include "robimp/error.hpp"
#include "robimp/experiments.hpp"

#include <algorithm>
#include <numeric>

namespace robimp {

namespace {

Rational dot(std::vector<Rational> const &a, std::vector<Rational> const &b)
{
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    s += a[i] * b[i];
  }
  return s;
}

std::vector<Lottery> distinct_lotteries(std::vector<Lottery> const &scf)
{
  std::vector<Lottery> out;
  for (auto const &l : scf)
  {
    if (std::find(out.begin(), out.end(), l) == out.end())
    {
      out.push_back(l);
    }
  }
  return out;
}

/// Nearest point of co(points) to p, by active-set enumeration.
Lottery project_onto_hull(Lottery const &p, std::vector<Lottery> const &points)
{
  std::size_t const k = points.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask)
  {
    std::vector<std::size_t> S;
    for (std::size_t i = 0; i < k; ++i)
    {
      if (mask & (std::size_t{1} << i))
      {
        S.push_back(i);
      }
    }
    // Stationarity on the affine hull of S plus the weight constraint.
    RationalMatrix sys;
    for (auto i : S)
    {
      std::vector<Rational> row;
      for (auto j : S)
      {
        row.push_back(dot(points[i], points[j]));
      }
      row.push_back(Rational(1));
      row.push_back(dot(points[i], p));
      sys.push_back(std::move(row));
    }
    std::vector<Rational> last(S.size(), Rational(1));
    last.push_back(Rational(0));
    last.push_back(Rational(1));
    sys.push_back(std::move(last));
    auto sol = solve_linear_unique(std::move(sys));
    if (!sol)
    {
      continue;
    }
    bool positive = true;
    for (std::size_t i = 0; i < S.size(); ++i)
    {
      positive = positive && (*sol)[i] >= 0;
    }
    if (!positive)
    {
      continue;
    }
    Lottery z(p.size(), Rational(0));
    for (std::size_t i = 0; i < S.size(); ++i)
    {
      for (std::size_t y = 0; y < p.size(); ++y)
      {
        z[y] += (*sol)[i] * points[S[i]][y];
      }
    }
    std::vector<Rational> d(p.size());
    for (std::size_t y = 0; y < p.size(); ++y)
    {
      d[y] = z[y] - p[y];
    }
    bool optimal = true;
    for (auto const &o : points)
    {
      std::vector<Rational> diff(p.size());
      for (std::size_t y = 0; y < p.size(); ++y)
      {
        diff[y] = o[y] - z[y];
      }
      optimal = optimal && dot(diff, d) >= 0;
    }
    if (optimal)
    {
      return z;
    }
  }
  fail(ErrorCode::kInfeasible, "projection onto the convex hull failed");
}

Rational value_of_lottery(std::vector<Rational> const &v, Lottery const &l)
{
  return dot(v, l);
}

}  // namespace

SeparatingFunctional separating_functional(std::vector<Lottery> const &scf, Mechanism const &mechanism)
{
  require(is_nonconstant(scf), ErrorCode::kPrecondition, "social choice function is constant");
  for (std::size_t s = 0; s < scf.size(); ++s)
  {
    Lottery const        &p = scf[s];
    std::vector<Lottery> others;
    for (auto const &l : distinct_lotteries(scf))
    {
      if (l != p)
      {
        others.push_back(l);
      }
    }
    Lottery const z = project_onto_hull(p, others);
    if (z == p)
    {
      continue;
    }
    std::vector<Rational> d(p.size());
    for (std::size_t y = 0; y < p.size(); ++y)
    {
      d[y] = z[y] - p[y];
    }
    Rational const norm2 = dot(d, d);
    Rational const base  = dot(d, p);
    SeparatingFunctional out;
    out.state = s;
    for (auto const &dy : d)
    {
      out.v.push_back((dy - base) / norm2);
    }
    // min over the hull is attained at z
    out.margin = value_of_lottery(out.v, z) - value_of_lottery(out.v, p);
    out.bound  = mechanism.max_abs_transfer();
    Rational const q = 4 * out.bound / out.margin;
    out.scale        = Rational(mpz_class(q.get_num() / q.get_den()) + 1);
    return out;
  }
  fail(ErrorCode::kInfeasible, "no separable vertex");
}

// Cyclical monotonicity.

namespace {

Rational u_at(PayoffMatrix const &u, std::vector<Lottery> const &scf, std::size_t state, std::size_t report)
{
  return expected_value(u[state], scf[report]);
}

void check_dims(PayoffMatrix const &u, std::vector<Lottery> const &scf)
{
  require(u.size() == scf.size() && !u.empty(), ErrorCode::kDimensionMismatch,
          "payoff table and social choice function differ in states");
  for (std::size_t s = 0; s < u.size(); ++s)
  {
    require(u[s].size() == scf[s].size(), ErrorCode::kDimensionMismatch, "payoff row has the wrong width");
  }
}

}  // namespace

MonotonicityCheck cyclical_monotonicity_by_permutations(PayoffMatrix const &u, std::vector<Lottery> const &scf)
{
  check_dims(u, scf);
  std::size_t const n = u.size();
  require(n <= 8, ErrorCode::kInvalidArgument, "permutation enumeration is limited to 8 states");
  Rational identity(0);
  for (std::size_t s = 0; s < n; ++s)
  {
    identity += u_at(u, scf, s, s);
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end()))
  {
    Rational total(0);
    bool     changes = false;
    for (std::size_t s = 0; s < n; ++s)
    {
      total += u_at(u, scf, s, perm[s]);
      changes = changes || scf[perm[s]] != scf[s];
    }
    if (total > identity || (changes && total == identity))
    {
      return {false, perm};
    }
  }
  return {true, {}};
}

MonotonicityCheck cyclical_monotonicity_by_cycles(PayoffMatrix const &u, std::vector<Lottery> const &scf)
{
  check_dims(u, scf);
  std::size_t const n = u.size();
  // Arc a -> b: state a reports b, cost u(a, f(a)) - u(a, f(b)).
  auto cost = [&](std::size_t a, std::size_t b) -> Rational { return u_at(u, scf, a, a) - u_at(u, scf, a, b); };

  std::vector<Rational>    dist(n, Rational(0));
  std::vector<std::size_t> pred(n, n);
  std::size_t              relaxed = n;
  for (std::size_t round = 0; round < n; ++round)
  {
    relaxed = n;
    for (std::size_t a = 0; a < n; ++a)
    {
      for (std::size_t b = 0; b < n; ++b)
      {
        if (a != b && dist[a] + cost(a, b) < dist[b])
        {
          dist[b] = dist[a] + cost(a, b);
          pred[b] = a;
          relaxed = b;
        }
      }
    }
    if (relaxed == n)
    {
      break;
    }
  }
  if (relaxed != n)
  {
    std::size_t v = relaxed;
    for (std::size_t i = 0; i < n; ++i)
    {
      v = pred[v];
    }
    // v lies on a negative cycle; walk it backwards, then map to a permutation.
    std::vector<std::size_t> cycle{v};
    for (std::size_t w = pred[v]; w != v; w = pred[w])
    {
      cycle.push_back(w);
    }
    std::reverse(cycle.begin(), cycle.end());
    return {false, std::move(cycle)};
  }

  // No positive-gain cycle. A zero-gain cycle through an outcome-changing arc
  // violates strictness; such a cycle uses tight arcs only.
  auto tight = [&](std::size_t a, std::size_t b) { return a != b && dist[a] + cost(a, b) == dist[b]; };
  for (std::size_t a = 0; a < n; ++a)
  {
    for (std::size_t b = 0; b < n; ++b)
    {
      if (!tight(a, b) || scf[a] == scf[b])
      {
        continue;
      }
      // Search a tight path b -> a.
      std::vector<std::size_t> from(n, n);
      std::vector<std::size_t> queue{b};
      from[b] = b;
      for (std::size_t head = 0; head < queue.size() && from[a] == n; ++head)
      {
        std::size_t const x = queue[head];
        for (std::size_t y = 0; y < n; ++y)
        {
          if (from[y] == n && tight(x, y))
          {
            from[y] = x;
            queue.push_back(y);
          }
        }
      }
      if (from[a] != n)
      {
        std::vector<std::size_t> cycle;
        for (std::size_t x = a; x != b; x = from[x])
        {
          cycle.push_back(x);
        }
        cycle.push_back(b);
        std::reverse(cycle.begin(), cycle.end());
        // cycle is b ... a; close with a -> b
        std::rotate(cycle.begin(), cycle.end() - 1, cycle.end());
        return {false, std::move(cycle)};
      }
    }
  }
  return {true, {}};
}

MonotonicityCheck check_strict_cyclical_monotonicity(PayoffMatrix const &u, std::vector<Lottery> const &scf)
{
  if (u.size() <= 8)
  {
    return cyclical_monotonicity_by_permutations(u, scf);
  }
  return cyclical_monotonicity_by_cycles(u, scf);
}

std::vector<Rational> synthesize_transfers(PayoffMatrix const &u, std::vector<Lottery> const &scf)
{
  check_dims(u, scf);
  require(check_strict_cyclical_monotonicity(u, scf).holds, ErrorCode::kPrecondition,
          "strict cyclical monotonicity fails");
  auto const        classes = distinct_lotteries(scf);
  std::size_t const K       = classes.size();
  std::size_t const n       = u.size();
  std::vector<std::size_t> cls(n);
  for (std::size_t s = 0; s < n; ++s)
  {
    cls[s] = static_cast<std::size_t>(std::find(classes.begin(), classes.end(), scf[s]) - classes.begin());
  }
  if (K == 1)
  {
    return std::vector<Rational>(n, Rational(0));
  }
  // w[A][B] = min over states in A of u(theta, f_A) - u(theta, f_B).
  std::vector<std::vector<std::optional<Rational>>> w(K, std::vector<std::optional<Rational>>(K));
  for (std::size_t s = 0; s < n; ++s)
  {
    for (std::size_t B = 0; B < K; ++B)
    {
      if (B == cls[s])
      {
        continue;
      }
      Rational const v = expected_value(u[s], classes[cls[s]]) - expected_value(u[s], classes[B]);
      auto          &cell = w[cls[s]][B];
      if (!cell || v < *cell)
      {
        cell = v;
      }
    }
  }

  // Karp: minimum mean cycle weight.
  std::vector<std::vector<std::optional<Rational>>> D(K + 1, std::vector<std::optional<Rational>>(K));
  for (std::size_t v = 0; v < K; ++v)
  {
    D[0][v] = Rational(0);
  }
  for (std::size_t k = 1; k <= K; ++k)
  {
    for (std::size_t a = 0; a < K; ++a)
    {
      for (std::size_t b = 0; b < K; ++b)
      {
        if (a != b && D[k - 1][a] && w[a][b])
        {
          Rational const cand = *D[k - 1][a] + *w[a][b];
          if (!D[k][b] || cand < *D[k][b])
          {
            D[k][b] = cand;
          }
        }
      }
    }
  }
  std::optional<Rational> mean;
  for (std::size_t v = 0; v < K; ++v)
  {
    if (!D[K][v])
    {
      continue;
    }
    std::optional<Rational> worst;
    for (std::size_t k = 0; k < K; ++k)
    {
      if (D[k][v])
      {
        Rational const r = (*D[K][v] - *D[k][v]) / static_cast<long>(K - k);
        if (!worst || r > *worst)
        {
          worst = r;
        }
      }
    }
    if (worst && (!mean || *worst < *mean))
    {
      mean = worst;
    }
  }
  require(mean && *mean > 0, ErrorCode::kPrecondition, "class graph has a non-positive cycle");
  Rational const delta = *mean / 2;

  // Potentials for arc costs w - delta.
  std::vector<Rational> dist(K, Rational(0));
  for (std::size_t round = 0; round < K; ++round)
  {
    for (std::size_t a = 0; a < K; ++a)
    {
      for (std::size_t b = 0; b < K; ++b)
      {
        if (a != b && dist[a] + *w[a][b] - delta < dist[b])
        {
          dist[b] = dist[a] + *w[a][b] - delta;
        }
      }
    }
  }
  Rational const low = *std::min_element(dist.begin(), dist.end());
  std::vector<Rational> t(n);
  for (std::size_t s = 0; s < n; ++s)
  {
    t[s] = dist[cls[s]] - low;
  }
  return t;
}

TransferCheck check_transfers(PayoffMatrix const &u, std::vector<Lottery> const &scf, std::vector<Rational> const &t)
{
  check_dims(u, scf);
  require(t.size() == u.size(), ErrorCode::kDimensionMismatch, "one transfer per state is required");
  TransferCheck out;
  out.equal_on_classes       = true;
  out.strictly_implementable = true;
  bool first                 = true;
  for (std::size_t a = 0; a < u.size(); ++a)
  {
    for (std::size_t b = 0; b < u.size(); ++b)
    {
      if (scf[a] == scf[b])
      {
        out.equal_on_classes = out.equal_on_classes && t[a] == t[b];
        continue;
      }
      Rational const m = expected_value(u[a], scf[a]) + t[a] - expected_value(u[a], scf[b]) - t[b];
      out.strictly_implementable = out.strictly_implementable && m > 0;
      if (first || m < out.min_margin)
      {
        out.min_margin = m;
        first          = false;
      }
    }
  }
  return out;
}

Mechanism one_respondent_mechanism(Scenario const &scenario, std::size_t agent, std::vector<Rational> const &t)
{
  std::size_t const n = scenario.num_states();
  require(t.size() == n, ErrorCode::kDimensionMismatch, "one transfer per state is required");
  require(agent < kAgents, ErrorCode::kInvalidArgument, "agent index out of range");
  std::array<std::vector<int>, kAgents> messages;
  for (std::size_t s = 0; s < n; ++s)
  {
    messages[agent].push_back(static_cast<int>(s) + 1);
  }
  messages[1 - agent] = {1};
  std::vector<Lottery>                       outcomes;
  std::array<std::vector<Rational>, kAgents> transfers;
  for (std::size_t i1 = 0; i1 < messages[0].size(); ++i1)
  {
    for (std::size_t i2 = 0; i2 < messages[1].size(); ++i2)
    {
      std::size_t const s = agent == 0 ? i1 : i2;
      outcomes.push_back(scenario.scf()[s]);
      transfers[agent].push_back(t[s]);
      transfers[1 - agent].push_back(Rational(0));
    }
  }
  return Mechanism(MechanismKind::kTable, std::move(messages), std::move(outcomes), std::move(transfers));
}

Rational payoff_range(Scenario const &scenario)
{
  Rational best(0);
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    auto const &u  = scenario.payoff(a).u;
    Rational    hi = u[0][0];
    Rational    lo = u[0][0];
    for (auto const &row : u)
    {
      for (auto const &v : row)
      {
        hi = std::max(hi, v);
        lo = std::min(lo, v);
      }
    }
    best = std::max(best, Rational(hi - lo));
  }
  return best;
}

namespace {

Json lottery_json(Lottery const &l)
{
  return to_json(l);
}

bool implements(Game const &game, Profile const &profile)
{
  for (std::size_t s = 0; s < game.scenario().num_states(); ++s)
  {
    if (game.outcome_distribution(profile, s) != game.scenario().scf()[s])
    {
      return false;
    }
  }
  return true;
}

/// Respondent truthful, the other agent on its single message.
Profile respondent_profile(Game const &game, std::size_t agent)
{
  PureStrategy const truth = truthful_strategy(game.signals(), agent);
  PureStrategy const idle(game.num_realizations(1 - agent), game.mechanism().messages(1 - agent).front());
  return agent == 0 ? uniform_profile(game.perturbation(), pure(truth), pure(idle))
                    : uniform_profile(game.perturbation(), pure(idle), pure(truth));
}

Perturbation single_bias(Scenario const &sc, std::size_t agent, std::vector<Rational> const &v, Rational const &scale)
{
  BiasSpec bias;
  bias.agent = agent;
  for (std::size_t s = 0; s < sc.num_states(); ++s)
  {
    for (std::size_t y = 0; y < sc.num_outcomes(); ++y)
    {
      bias.u.push_back({s, y, scale * v[y]});
    }
  }
  std::array<std::vector<std::vector<std::size_t>>, kAgents> partitions;
  partitions[0] = {{0}};
  partitions[1] = {{0}};
  return Perturbation::create(sc, {Rational(1)}, std::move(partitions), {bias});
}

}  // namespace

ExperimentResult run_prop1(ExperimentOptions const &options)
{
  ExperimentResult result;
  result.name = "prop1";
  Scenario  sc;
  Mechanism mech;
  if (options.scenario)
  {
    sc   = *options.scenario;
    mech = build_status_quo(sc, sc.max_cost());
  }
  else
  {
    sc = binary_scenario(Rational(1, 2));
    RewardSchedule schedule;
    schedule.ascending  = {Rational(1), Rational(8)};
    schedule.cost_bound = Rational(1, 2);
    mech                = build_status_quo(sc, Rational(1, 2), schedule);
  }
  result.parameters["states"]   = sc.states().labels;
  result.parameters["prior"]    = to_json(sc.states().prior);
  result.parameters["cost"]     = to_string(sc.max_cost());
  result.parameters["mechanism"] = mechanism_kind_name(mech.kind());
  result.parameters["schedule"] = to_json(mech.schedule()->ascending);
  if (!is_nonconstant(sc.scf()))
  {
    result.certify("constant social choice function is rejected", true);
    return result;
  }

  auto const sf = separating_functional(sc.scf(), mech);
  Rational const &C = sf.scale;
  Rational const &X = sf.bound;
  result.artifacts["separating_functional"] = {{"state", sc.states().labels[sf.state]},
                                               {"v", to_json(sf.v)},
                                               {"margin", to_string(sf.margin)},
                                               {"C", to_string(C)},
                                               {"X", to_string(X)}};
  result.certify("scale clears four times the transfer bound", sf.margin * C > 4 * X,
                 {{"lhs", to_string(sf.margin * C)}, {"rhs", to_string(4 * X)}});

  // Chain (4.1) -> (4.3) over agent 2 mixtures on the grid.
  Rational const step(1, 20);
  auto const     grid = simplex_grid(mech.num_messages(1), step);
  Rational const v_star    = dot(sf.v, sc.scf()[sf.state]);
  Rational const y_max     = -C * (v_star + sf.margin);  // max over the hull of -C v
  std::size_t    satisfied = 0;
  bool           chain     = true;
  Json           chain_witness;
  for (auto const &w : grid)
  {
    std::optional<Rational> lhs;
    std::optional<Rational> low;
    for (std::size_t i1 = 0; i1 < mech.num_messages(0); ++i1)
    {
      Rational a1(0);
      Rational a2(0);
      for (std::size_t i2 = 0; i2 < w.size(); ++i2)
      {
        Rational const vg = dot(sf.v, mech.outcome_at(i1, i2));
        a1 += w[i2] * (C * vg + mech.transfer_at(0, i1, i2));
        a2 += w[i2] * (-C * vg + mech.transfer_at(1, i1, i2));
      }
      if (!lhs || a1 > *lhs)
      {
        lhs = a1;
      }
      if (!low || a2 < *low)
      {
        low = a2;
      }
    }
    if (*lhs > C * v_star + X)
    {
      continue;
    }
    ++satisfied;
    Rational const mid = -C * v_star - 3 * X;
    bool const     ok  = *low >= mid && mid > y_max + X;
    if (!ok && chain)
    {
      chain_witness = {{"m2", to_json(w)}, {"agent2_floor", to_string(*low)}, {"middle", to_string(mid)}};
    }
    chain = chain && ok;
  }
  result.certify("inequality chain", chain,
                 {{"grid_points", grid.size()}, {"satisfying_4_1", satisfied}, {"violation", chain_witness}});

  // Equilibria under both perturbations.
  GridOptions const gopt{step, 2'000'000};
  Json              search = Json::object();
  std::array<bool, 2> any{false, false};
  std::array<std::string, 2> const names{"plus", "minus"};
  for (std::size_t side = 0; side < 2; ++side)
  {
    Perturbation pert = side == 0 ? single_bias(sc, 0, sf.v, C) : single_bias(sc, 1, sf.v, -C);
    Game const   game(sc, mech, std::move(pert));
    auto const   sets  = strategy_sets(game, StrategyVariant::kFull);
    auto const   pures = pure_equilibria(game, sets);
    auto const   grid_eq = grid_equilibria(game, sets, gopt);
    std::size_t  hits    = 0;
    for (auto const &p : pures)
    {
      hits += implements(game, p) ? 1 : 0;
    }
    std::size_t grid_hits = 0;
    for (auto const &p : grid_eq.equilibria)
    {
      grid_hits += implements(game, p) ? 1 : 0;
    }
    any[side] = hits + grid_hits > 0;
    search[names[side]] = {{"pure_equilibria", pures.size()},
                           {"pure_implementing", hits},
                           {"grid_equilibria", grid_eq.equilibria.size()},
                           {"grid_implementing", grid_hits},
                           {"grid_candidates", grid_eq.candidates},
                           {"truncated", grid_eq.truncated}};
  }
  result.artifacts["search"] = search;
  result.certify("no searched profile implements f under both perturbations", !(any[0] && any[1]), search);

  // Corollary: an eta-mass of perturbed agent-2 types bounds the distance.
  bool pure_f = true;
  for (auto const &l : sc.scf())
  {
    pure_f = pure_f && std::count(l.begin(), l.end(), Rational(1)) == 1;
  }
  Json corollary = Json::array();
  bool bound_ok  = true;
  auto const etas = options.eta_grid.empty() ? std::vector<Rational>{Rational(1, 10), Rational(1, 5)} : options.eta_grid;
  for (auto const &eta : etas)
  {
    BiasSpec bias;
    bias.agent        = 1;
    bias.circumstance = 0;
    for (std::size_t s = 0; s < sc.num_states(); ++s)
    {
      for (std::size_t y = 0; y < sc.num_outcomes(); ++y)
      {
        bias.u.push_back({s, y, -C * sf.v[y]});
      }
    }
    std::array<std::vector<std::vector<std::size_t>>, kAgents> partitions;
    partitions[0] = {{0, 1}};
    partitions[1] = {{0}, {1}};
    Perturbation pert = Perturbation::create(sc, {eta, Rational(1 - eta)}, std::move(partitions), {bias});
    Game const   game(sc, mech, std::move(pert));
    auto const   sets    = strategy_sets(game, StrategyVariant::kFull);
    auto const   grid_eq = grid_equilibria(game, sets, gopt);
    std::optional<Rational> bound;
    for (auto const &p : grid_eq.equilibria)
    {
      Rational worst(0);
      for (std::size_t s = 0; s < sc.num_states(); ++s)
      {
        worst = std::max(worst, tv_distance(game.outcome_distribution(p, s), sc.scf()[s]));
      }
      if (!bound || worst < *bound)
      {
        bound = worst;
      }
    }
    bool const ok = bound && !grid_eq.truncated && *bound >= eta * (1 - step);
    bound_ok      = bound_ok && ok;
    corollary.push_back({{"eta", to_string(eta)},
                         {"equilibria", grid_eq.equilibria.size()},
                         {"min_max_tv", bound ? Json(to_string(*bound)) : Json()},
                         {"slope", bound ? Json(to_string(*bound / eta)) : Json()}});
    result.csv_rows.push_back({to_string(eta), std::to_string(grid_eq.equilibria.size()),
                               bound ? to_string(*bound) : "", bound ? to_string(*bound / eta) : ""});
  }
  result.csv_columns          = {"eta", "equilibria", "min_max_tv", "slope"};
  result.artifacts["corollary"] = corollary;
  if (pure_f)
  {
    result.certify("distance grows at least linearly with slope one", bound_ok, corollary);
  }
  return result;
}

namespace {

RationalMatrix auxiliary_payoffs(Scenario const &sc, Mechanism const &mech, std::size_t agent)
{
  RationalMatrix out(mech.num_messages(0), std::vector<Rational>(mech.num_messages(1), Rational(0)));
  for (std::size_t i1 = 0; i1 < mech.num_messages(0); ++i1)
  {
    for (std::size_t i2 = 0; i2 < mech.num_messages(1); ++i2)
    {
      Rational v(0);
      for (std::size_t s = 0; s < sc.num_states(); ++s)
      {
        v += sc.prior(s) * expected_value(sc.payoff(agent).u[s], mech.outcome_at(i1, i2));
      }
      out[i1][i2] = v + mech.transfer_at(agent, i1, i2);
    }
  }
  return out;
}

bool state_independent(Scenario const &sc)
{
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    for (auto const &row : sc.payoff(a).u)
    {
      if (row != sc.payoff(a).u.front())
      {
        return false;
      }
    }
  }
  return true;
}

/// Solves the auxiliary game, lifts it to constant strategies and verifies.
Json no_learning_equilibrium(Scenario const &sc, Mechanism const &mech, bool &verified, bool &constant)
{
  auto const   A   = auxiliary_payoffs(sc, mech, 0);
  auto const   B   = auxiliary_payoffs(sc, mech, 1);
  auto const   eq  = support_enumeration_nash(A, B);
  Game const   game(sc, mech, Perturbation::trivial(sc));
  std::size_t const n = sc.num_states();
  std::array<MixedStrategy, kAgents> lifted;
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    auto const &weights = a == 0 ? eq.row : eq.col;
    for (std::size_t i = 0; i < weights.size(); ++i)
    {
      if (weights[i] != 0)
      {
        lifted[a].emplace_back(PureStrategy(n, mech.messages(a)[i]), weights[i]);
      }
    }
  }
  Profile const profile = uniform_profile(game.perturbation(), lifted[0], lifted[1]);
  auto const    rep     = verify_equilibrium(game, profile, strategy_sets(game, StrategyVariant::kFull));
  verified              = rep.equilibrium();
  Rational worst(0);
  for (std::size_t s = 0; s < n; ++s)
  {
    for (std::size_t t = s + 1; t < n; ++t)
    {
      worst = std::max(worst, tv_distance(game.outcome_distribution(profile, s), game.outcome_distribution(profile, t)));
    }
  }
  constant = worst == 0;
  return {{"row", to_json(eq.row)},
          {"col", to_json(eq.col)},
          {"max_residual", to_string(rep.max_residual)},
          {"max_tv_between_states", to_string(worst)},
          {"outcome", lottery_json(game.outcome_distribution(profile, 0))}};
}

/// Value of learning (5.0) for `agent` against each pure opponent message.
std::vector<Rational> learning_values(Scenario const &sc, Mechanism const &mech, std::size_t agent)
{
  std::size_t const     o = 1 - agent;
  std::vector<Rational> out;
  for (std::size_t io = 0; io < mech.num_messages(o); ++io)
  {
    auto payoff = [&](std::size_t s, std::size_t im) -> Rational {
      std::size_t const i1 = agent == 0 ? im : io;
      std::size_t const i2 = agent == 0 ? io : im;
      return expected_value(sc.payoff(agent).u[s], mech.outcome_at(i1, i2)) + mech.transfer_at(agent, i1, i2);
    };
    Rational informed(0);
    for (std::size_t s = 0; s < sc.num_states(); ++s)
    {
      std::optional<Rational> best;
      for (std::size_t im = 0; im < mech.num_messages(agent); ++im)
      {
        Rational const v = payoff(s, im);
        if (!best || v > *best)
        {
          best = v;
        }
      }
      informed += sc.prior(s) * *best;
    }
    std::optional<Rational> blind;
    for (std::size_t im = 0; im < mech.num_messages(agent); ++im)
    {
      Rational v(0);
      for (std::size_t s = 0; s < sc.num_states(); ++s)
      {
        v += sc.prior(s) * payoff(s, im);
      }
      if (!blind || v > *blind)
      {
        blind = v;
      }
    }
    out.push_back(informed - *blind);
  }
  return out;
}

Scenario with_payoffs(Scenario const &sc, PayoffMatrix const &u1, PayoffMatrix const &u2, Rational const &c)
{
  return sc.with_utilities(u1, u2).with_costs(c, c);
}

}  // namespace

ExperimentResult run_prop2(ExperimentOptions const &options)
{
  ExperimentResult result;
  result.name = "prop2";

  std::optional<Scenario> independent;
  std::optional<Scenario> dependent;
  if (options.scenario)
  {
    (state_independent(*options.scenario) ? independent : dependent) = *options.scenario;
  }
  else
  {
    Scenario const base = binary_scenario();
    PayoffMatrix   u1{{Rational(0), Rational(2)}, {Rational(0), Rational(2)}};
    PayoffMatrix   u2{{Rational(1), Rational(0)}, {Rational(1), Rational(0)}};
    independent         = with_payoffs(base, u1, u2, Rational(1));
    PayoffMatrix match{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
    dependent           = with_payoffs(base, match, match, Rational(3));
  }

  if (independent)
  {
    Scenario const &sc   = *independent;
    Mechanism const mech = build_status_quo(sc, sc.max_cost());
    bool            verified = false;
    bool            constant = false;
    Json            w        = no_learning_equilibrium(sc, mech, verified, constant);
    result.parameters["state_independent"] = {{"costs", {to_string(sc.payoff(0).cost), to_string(sc.payoff(1).cost)}},
                                              {"schedule", to_json(mech.schedule()->ascending)}};
    result.certify("no-learning equilibrium with state-independent payoffs", verified, w);
    result.certify("implemented outcome is state-constant", constant);
  }

  if (dependent)
  {
    Scenario const &sc   = *dependent;
    Rational const  X    = payoff_range(sc);
    Mechanism const mech = build_status_quo(sc, sc.max_cost());
    bool const      applicable = sc.payoff(0).cost > 2 * X && sc.payoff(1).cost > 2 * X;
    result.parameters["state_dependent"] = {{"X", to_string(X)},
                                            {"costs", {to_string(sc.payoff(0).cost), to_string(sc.payoff(1).cost)}},
                                            {"schedule", to_json(mech.schedule()->ascending)}};
    result.artifacts["applicable"] = applicable;
    Json values                    = Json::object();
    bool bounded                   = true;
    result.csv_columns             = {"agent", "opponent_message", "learning_value", "bound"};
    for (std::size_t a = 0; a < kAgents; ++a)
    {
      auto const vals = learning_values(sc, mech, a);
      for (std::size_t i = 0; i < vals.size(); ++i)
      {
        bounded = bounded && vals[i] <= 2 * X;
        result.csv_rows.push_back({std::to_string(a + 1), std::to_string(mech.messages(1 - a)[i]), to_string(vals[i]),
                                   to_string(2 * X)});
      }
      values["agent" + std::to_string(a + 1)] = to_json(vals);
    }
    result.artifacts["learning_values"] = values;
    if (applicable)
    {
      result.certify("value of learning is at most 2X", bounded, values);
      bool verified = false;
      bool constant = false;
      Json w        = no_learning_equilibrium(sc, mech, verified, constant);
      result.certify("no-learning equilibrium above the cost cutoff", verified && constant, w);
    }
  }
  return result;
}

ExperimentResult run_prop3(ExperimentOptions const &options)
{
  ExperimentResult result;
  result.name             = "prop3";
  std::size_t const agent = 0;
  Scenario          sc;
  if (options.scenario)
  {
    sc = *options.scenario;
  }
  else
  {
    Scenario const base = ladder_scenario({Rational(1, 2), Rational(3, 10), Rational(1, 5)});
    PayoffMatrix   u1{{Rational(1), Rational(3), Rational(0)},
                      {Rational(0), Rational(3), Rational(1)},
                      {Rational(0), Rational(0), Rational(1)}};
    PayoffMatrix   zero(3, std::vector<Rational>(3, Rational(0)));
    sc = base.with_utilities(u1, zero);
  }
  auto const &u   = sc.payoff(agent).u;
  auto const &scf = sc.scf();
  result.parameters["states"] = sc.states().labels;
  result.parameters["prior"]  = to_json(sc.states().prior);
  result.parameters["agent"]  = agent + 1;

  // Oracle agreement on seeded random instances.
  {
    SplitMix64  rng(options.seed);
    std::size_t agree = 0;
    std::size_t holds = 0;
    Json        disagreement;
    for (int i = 0; i < 100; ++i)
    {
      std::size_t const n = static_cast<std::size_t>(rng.uniform(3, 4));
      PayoffMatrix      ru(n, std::vector<Rational>(n));
      std::vector<Lottery> rf;
      for (std::size_t s = 0; s < n; ++s)
      {
        for (std::size_t y = 0; y < n; ++y)
        {
          ru[s][y] = Rational(rng.uniform(0, 4));
        }
        rf.push_back(pure_lottery(n, static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1))));
      }
      bool const a = cyclical_monotonicity_by_permutations(ru, rf).holds;
      bool const b = cyclical_monotonicity_by_cycles(ru, rf).holds;
      agree += a == b ? 1 : 0;
      holds += a ? 1 : 0;
      if (a != b && disagreement.is_null())
      {
        disagreement = {{"instance", i}};
      }
    }
    result.certify("monotonicity oracles agree", agree == 100,
                   {{"instances", 100}, {"agree", agree}, {"monotone", holds}, {"first_disagreement", disagreement}});
  }

  if (!is_nonconstant(scf))
  {
    result.certify("constant social choice function is trivially implemented", true);
    return result;
  }

  auto const cm = check_strict_cyclical_monotonicity(u, scf);
  auto const cm2 = cyclical_monotonicity_by_cycles(u, scf);
  result.certify("strict cyclical monotonicity", cm.holds && cm2.holds, {{"witness", cm.witness}});
  if (!cm.holds)
  {
    return result;
  }

  auto const t     = synthesize_transfers(u, scf);
  auto const check = check_transfers(u, scf, t);
  result.artifacts["transfers"] = to_json(t);
  result.csv_columns            = {"state", "transfer", "truthful_payoff"};
  for (std::size_t s = 0; s < t.size(); ++s)
  {
    result.csv_rows.push_back(
        {sc.states().labels[s], to_string(t[s]), to_string(Rational(expected_value(u[s], scf[s]) + t[s]))});
  }
  result.certify("transfers constant on outcome classes", check.equal_on_classes);
  result.certify("transfers strictly implement f", check.strictly_implementable,
                 {{"min_margin", to_string(check.min_margin)}});

  Mechanism const mech = one_respondent_mechanism(sc, agent, t);
  std::size_t const n  = sc.num_states();
  // Learning margin: truthful against the best constant report.
  Rational truthful(0);
  for (std::size_t s = 0; s < n; ++s)
  {
    truthful += sc.prior(s) * (expected_value(u[s], scf[s]) + t[s]);
  }
  std::optional<Rational> best_constant;
  for (std::size_t k = 0; k < n; ++k)
  {
    Rational v(0);
    for (std::size_t s = 0; s < n; ++s)
    {
      v += sc.prior(s) * (expected_value(u[s], scf[k]) + t[k]);
    }
    if (!best_constant || v > *best_constant)
    {
      best_constant = v;
    }
  }
  Rational const margin = truthful - *best_constant;
  Rational const cbar   = margin / 2;
  Rational const cost   = margin / 4;
  result.artifacts["margin"]     = to_string(margin);
  result.artifacts["cost_bound"] = to_string(cbar);
  result.artifacts["cost"]       = to_string(cost);

  auto costed = [&](Rational const &c) {
    Scenario const s = sc.with_costs(agent == 0 ? c : sc.payoff(0).cost, agent == 1 ? c : sc.payoff(1).cost);
    return Game(s, mech, Perturbation::trivial(s));
  };
  {
    Game const  game = costed(cost);
    auto const  sets = strategy_sets(game, StrategyVariant::kFull);
    auto const  pures = pure_equilibria(game, sets);
    std::size_t hits  = 0;
    for (auto const &p : pures)
    {
      hits += implements(game, p) ? 1 : 0;
    }
    // Mixed equilibria mix over the respondent's argmax set.
    Profile const any   = respondent_profile(game, agent);
    auto const    br    = best_response(game, agent, 0, any, sets[agent]);
    bool          mixed = true;
    for (auto const &s : br.argmax)
    {
      Profile p     = any;
      p[agent][0]   = pure(s);
      mixed         = mixed && implements(game, p);
    }
    bool const strict = br.argmax.size() == 1 && br.argmax.front() == truthful_strategy(game.signals(), agent);
    result.certify("truthful strict equilibrium below the threshold", strict);
    result.certify("every equilibrium implements f", !pures.empty() && hits == pures.size() && mixed,
                   {{"pure_equilibria", pures.size()}, {"implementing", hits}, {"argmax", br.argmax.size()}});
  }
  {
    Game const game = costed(2 * margin);
    auto const rep  = verify_equilibrium(game, respondent_profile(game, agent), strategy_sets(game, StrategyVariant::kFull));
    result.certify("truthful fails above the threshold", rep.max_residual > 0,
                   {{"cost", to_string(2 * margin)}, {"residual", to_string(rep.max_residual)}});
  }
  {
    Scenario const s = sc.with_costs(agent == 0 ? cost : sc.payoff(0).cost, agent == 1 ? cost : sc.payoff(1).cost);
    std::size_t const depth = options.depth.value_or(20);
    Rational const eta      = options.eta_grid.empty() ? Rational(1, 20) : options.eta_grid.front();
    Perturbation pert       = build_ladder(s, depth, eta, {outcome_bias(s, agent, 0, 0, Rational(100), 1000 * cost)});
    Game const   game(s, mech, std::move(pert));
    auto const   sets  = strategy_sets(game, StrategyVariant::kFull);
    Profile const prof = respondent_profile(game, agent);
    bool          ok   = true;
    std::size_t   normal = 0;
    for (std::size_t k = 0; k < game.perturbation().num_types(agent); ++k)
    {
      if (!game.positive_type(agent, k) || !game.perturbation().normal_type(agent, k))
      {
        continue;
      }
      ++normal;
      auto const br = best_response(game, agent, k, prof, sets[agent]);
      ok = ok && br.argmax.size() == 1 && br.argmax.front() == truthful_strategy(game.signals(), agent);
    }
    result.certify("normal ladder types strictly prefer truthful", ok,
                   {{"depth", depth}, {"eta", to_string(eta)}, {"normal_types", normal}});
  }
  return result;
}

}  // namespace robimp
