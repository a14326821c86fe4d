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

#include "robimp/io.hpp"

#include "robimp/error.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace robimp {

namespace {

[[noreturn]] void fail_at(YAML::Node const &node, std::string const &message)
{
  fail(ErrorCode::kParse, "line " + std::to_string(node.Mark().line + 1) + ": " + message);
}

YAML::Node child(YAML::Node const &parent, char const *key)
{
  YAML::Node n = parent[key];
  if (!n)
  {
    fail_at(parent, std::string("missing key '") + key + "'");
  }
  return n;
}

std::string scalar(YAML::Node const &node, std::string const &what)
{
  if (!node.IsScalar())
  {
    fail_at(node, what + " must be a scalar");
  }
  return node.Scalar();
}

Rational number(YAML::Node const &node, std::string const &what)
{
  std::string const text = scalar(node, what);
  try
  {
    return parse_rational(text);
  }
  catch (Error const &e)
  {
    fail_at(node, what + ": " + e.what());
  }
}

std::vector<Rational> numbers(YAML::Node const &node, std::string const &what)
{
  if (!node.IsSequence())
  {
    fail_at(node, what + " must be a list");
  }
  std::vector<Rational> out;
  for (auto const &item : node)
  {
    out.push_back(number(item, what));
  }
  return out;
}

std::size_t index_in(std::vector<std::string> const &labels, YAML::Node const &node, std::string const &what)
{
  std::string const label = scalar(node, what);
  auto const        it    = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end())
  {
    fail_at(node, "unknown " + what + " '" + label + "'");
  }
  return static_cast<std::size_t>(it - labels.begin());
}

std::size_t count(YAML::Node const &node, std::string const &what)
{
  Rational const v = number(node, what);
  if (v < 0 || v.get_den() != 1 || !v.get_num().fits_ulong_p())
  {
    fail_at(node, what + " must be a non-negative integer");
  }
  return v.get_num().get_ui();
}

/// Rows keyed by state label, in input state order.
PayoffMatrix rows_by_state(YAML::Node const &node, std::vector<std::string> const &states, std::size_t width,
                           std::string const &what)
{
  if (!node.IsMap())
  {
    fail_at(node, what + " must map state labels to rows");
  }
  std::vector<std::optional<std::vector<Rational>>> rows(states.size());
  for (auto const &kv : node)
  {
    std::size_t const s   = index_in(states, kv.first, "state");
    auto              row = numbers(kv.second, what);
    if (row.size() != width)
    {
      fail_at(kv.second, what + " row has " + std::to_string(row.size()) + " entries, expected " +
                             std::to_string(width));
    }
    rows[s] = std::move(row);
  }
  PayoffMatrix out;
  for (std::size_t s = 0; s < states.size(); ++s)
  {
    if (!rows[s])
    {
      fail_at(node, what + " has no row for state '" + states[s] + "'");
    }
    out.push_back(std::move(*rows[s]));
  }
  return out;
}

BiasSpec parse_bias(YAML::Node const &node, Scenario const &sc)
{
  if (!node.IsMap())
  {
    fail_at(node, "bias entry must be a map");
  }
  BiasSpec bias;
  bias.circumstance = count(child(node, "circumstance"), "circumstance");
  std::size_t const agent = count(child(node, "agent"), "agent");
  if (agent < 1 || agent > kAgents)
  {
    fail_at(node["agent"], "agent must be 1 or 2");
  }
  bias.agent = agent - 1;
  if (auto add = node["add"])
  {
    std::size_t const y      = index_in(sc.outcomes().labels, child(add, "outcome"), "outcome");
    Rational const    amount = number(child(add, "amount"), "amount");
    bias.u = outcome_bias(sc, bias.agent, bias.circumstance, y, amount).u;
  }
  if (auto u = node["u"])
  {
    if (!u.IsMap())
    {
      fail_at(u, "bias u must map state labels to rows");
    }
    for (auto const &kv : u)
    {
      std::size_t const s   = index_in(sc.states().labels, kv.first, "state");
      auto const        row = numbers(kv.second, "bias row");
      if (row.size() != sc.num_outcomes())
      {
        fail_at(kv.second, "bias row has the wrong number of outcomes");
      }
      std::erase_if(bias.u, [&](PayoffEntry const &e) { return e.state == s; });
      for (std::size_t y = 0; y < row.size(); ++y)
      {
        bias.u.push_back({s, y, row[y]});
      }
    }
  }
  if (auto c = node["cost"])
  {
    bias.cost = number(c, "bias cost");
  }
  return bias;
}

PerturbationSpec parse_perturbation(YAML::Node const &node, Scenario const &sc)
{
  if (!node.IsMap())
  {
    fail_at(node, "perturbation must be a map");
  }
  PerturbationSpec spec;
  std::string const kind = node["kind"] ? scalar(node["kind"], "kind") : "geometric";
  if (kind == "geometric")
  {
    spec.kind = PerturbationSpec::Kind::kGeometric;
  }
  else if (kind == "custom")
  {
    spec.kind = PerturbationSpec::Kind::kCustom;
    spec.pi   = numbers(child(node, "pi"), "pi");
  }
  else
  {
    fail_at(node["kind"], "unknown perturbation kind '" + kind + "'");
  }
  if (auto d = node["depth"])
  {
    spec.depth = count(d, "depth");
  }
  if (auto e = node["eta"])
  {
    spec.eta = number(e, "eta");
  }
  if (auto t = node["tail"])
  {
    std::string const tail = scalar(t, "tail");
    if (tail == "lump")
    {
      spec.tail = TailConvention::kLump;
    }
    else if (tail == "renormalize")
    {
      spec.tail = TailConvention::kRenormalize;
    }
    else
    {
      fail_at(t, "tail must be 'lump' or 'renormalize'");
    }
  }
  if (auto b = node["bias"])
  {
    if (!b.IsSequence())
    {
      fail_at(b, "bias must be a list");
    }
    for (auto const &item : b)
    {
      spec.biases.push_back(parse_bias(item, sc));
    }
  }
  return spec;
}

ScenarioFile parse_document(YAML::Node const &root)
{
  if (!root.IsMap())
  {
    fail_at(root, "scenario document must be a map");
  }
  YAML::Node const states_node = child(root, "states");
  if (!states_node.IsSequence() || states_node.size() == 0)
  {
    fail_at(states_node, "states must be a non-empty list");
  }
  StateSpace states;
  for (auto const &s : states_node)
  {
    states.labels.push_back(scalar(child(s, "label"), "state label"));
    states.prior.push_back(number(child(s, "prior"), "prior"));
  }
  YAML::Node const outcomes_node = child(root, "outcomes");
  if (!outcomes_node.IsSequence() || outcomes_node.size() == 0)
  {
    fail_at(outcomes_node, "outcomes must be a non-empty list");
  }
  OutcomeSpace outcomes;
  for (auto const &o : outcomes_node)
  {
    outcomes.labels.push_back(scalar(o, "outcome label"));
  }
  std::size_t const Y   = outcomes.size();
  auto const        scf = rows_by_state(child(root, "scf"), states.labels, Y, "scf");

  YAML::Node const agents = child(root, "agents");
  if (!agents.IsSequence() || agents.size() != kAgents)
  {
    fail_at(agents, "agents must list exactly two agents");
  }
  std::array<AgentPayoff, kAgents> payoffs;
  for (std::size_t a = 0; a < kAgents; ++a)
  {
    YAML::Node const agent = agents[a];
    payoffs[a].cost        = number(child(agent, "cost"), "cost");
    if (auto u = agent["u"])
    {
      payoffs[a].u = rows_by_state(u, states.labels, Y, "u");
    }
    else
    {
      payoffs[a].u.assign(states.size(), std::vector<Rational>(Y, Rational(0)));
    }
  }

  ScenarioFile out;
  try
  {
    out.scenario = Scenario::create(states, outcomes, scf, payoffs);
  }
  catch (Error const &e)
  {
    fail_at(states_node, e.what());
  }
  if (auto p = root["perturbation"])
  {
    try
    {
      out.perturbation = parse_perturbation(p, out.scenario);
    }
    catch (Error const &e)
    {
      if (e.code() == ErrorCode::kParse)
      {
        throw;
      }
      fail_at(p, e.what());
    }
  }
  if (auto g = root["eta_grid"])
  {
    out.eta_grid = numbers(g, "eta_grid");
  }
  if (auto s = root["seed"])
  {
    out.seed = count(s, "seed");
  }
  return out;
}

std::vector<std::string> split_ws(std::string const &line)
{
  std::istringstream       in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;)
  {
    out.push_back(tok);
  }
  return out;
}

}  // namespace

std::string read_file(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ScenarioFile parse_scenario(std::string const &text)
{
  YAML::Node root;
  try
  {
    root = YAML::Load(text);
  }
  catch (YAML::Exception const &e)
  {
    fail(ErrorCode::kParse, "line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  try
  {
    return parse_document(root);
  }
  catch (YAML::Exception const &e)
  {
    fail(ErrorCode::kParse, "line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
}

ScenarioFile load_scenario(std::string const &path)
{
  return parse_scenario(read_file(path));
}

std::string write_mechanism_table(Mechanism const &mechanism, Scenario const &scenario)
{
  std::ostringstream out;
  out << "# kind " << mechanism_kind_name(mechanism.kind()) << "\n";
  out << "m1 m2";
  for (auto const &label : scenario.outcomes().labels)
  {
    out << ' ' << label;
  }
  out << " t1 t2\n";
  for (std::size_t i1 = 0; i1 < mechanism.num_messages(0); ++i1)
  {
    for (std::size_t i2 = 0; i2 < mechanism.num_messages(1); ++i2)
    {
      out << mechanism.messages(0)[i1] << ' ' << mechanism.messages(1)[i2];
      for (auto const &p : mechanism.outcome_at(i1, i2))
      {
        out << ' ' << to_string(p);
      }
      out << ' ' << to_string(mechanism.transfer_at(0, i1, i2)) << ' ' << to_string(mechanism.transfer_at(1, i1, i2))
          << "\n";
    }
  }
  return out.str();
}

Mechanism parse_mechanism_table(std::string const &text, std::size_t num_outcomes)
{
  std::istringstream in(text);
  MechanismKind      kind = MechanismKind::kTable;
  bool               header = false;
  struct Row
  {
    int                   m1;
    int                   m2;
    Lottery               p;
    std::array<Rational, 2> t;
  };
  std::vector<Row>                      rows;
  std::array<std::vector<int>, kAgents> messages;
  std::size_t                           line_no = 0;
  for (std::string line; std::getline(in, line);)
  {
    ++line_no;
    auto const where = "line " + std::to_string(line_no) + ": ";
    auto const toks  = split_ws(line);
    if (toks.empty())
    {
      continue;
    }
    if (toks.front().starts_with('#'))
    {
      if (toks.size() == 3 && toks[0] == "#" && toks[1] == "kind")
      {
        kind = parse_mechanism_kind(toks[2]);
      }
      continue;
    }
    if (!header)
    {
      require(toks.size() == num_outcomes + 4 && toks[0] == "m1" && toks[1] == "m2", ErrorCode::kParse,
              where + "expected header 'm1 m2 <outcomes> t1 t2'");
      header = true;
      continue;
    }
    require(toks.size() == num_outcomes + 4, ErrorCode::kParse,
            where + "expected " + std::to_string(num_outcomes + 4) + " columns");
    Row row;
    try
    {
      row.m1 = std::stoi(toks[0]);
      row.m2 = std::stoi(toks[1]);
      for (std::size_t y = 0; y < num_outcomes; ++y)
      {
        row.p.push_back(parse_rational(toks[2 + y]));
      }
      row.t = {parse_rational(toks[2 + num_outcomes]), parse_rational(toks[3 + num_outcomes])};
    }
    catch (std::exception const &e)
    {
      fail(ErrorCode::kParse, where + e.what());
    }
    try
    {
      validate_lottery(row.p, num_outcomes, "outcome lottery");
    }
    catch (Error const &e)
    {
      fail(ErrorCode::kParse, where + e.what());
    }
    for (std::size_t a = 0; a < kAgents; ++a)
    {
      int const m = a == 0 ? row.m1 : row.m2;
      if (std::find(messages[a].begin(), messages[a].end(), m) == messages[a].end())
      {
        messages[a].push_back(m);
      }
    }
    rows.push_back(std::move(row));
  }
  require(header, ErrorCode::kParse, "mechanism table has no header");
  std::size_t const M1 = messages[0].size();
  std::size_t const M2 = messages[1].size();
  require(rows.size() == M1 * M2, ErrorCode::kParse, "mechanism table must list every message pair exactly once");
  std::vector<std::optional<Row>> grid(M1 * M2);
  for (auto &row : rows)
  {
    auto const i1 = static_cast<std::size_t>(std::find(messages[0].begin(), messages[0].end(), row.m1) -
                                              messages[0].begin());
    auto const i2 = static_cast<std::size_t>(std::find(messages[1].begin(), messages[1].end(), row.m2) -
                                              messages[1].begin());
    require(!grid[i1 * M2 + i2], ErrorCode::kParse,
            "duplicate row for (" + std::to_string(row.m1) + ", " + std::to_string(row.m2) + ")");
    grid[i1 * M2 + i2] = std::move(row);
  }
  std::vector<Lottery>                       outcomes;
  std::array<std::vector<Rational>, kAgents> transfers;
  for (auto &cell : grid)
  {
    outcomes.push_back(std::move(cell->p));
    transfers[0].push_back(cell->t[0]);
    transfers[1].push_back(cell->t[1]);
  }
  return Mechanism(kind, std::move(messages), std::move(outcomes), std::move(transfers));
}

}  // namespace robimp
