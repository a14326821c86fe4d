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

#include "robimp/experiments.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace robimp {

/// Contents of a scenario file.
struct ScenarioFile
{
  Scenario                        scenario;
  std::optional<PerturbationSpec> perturbation;
  std::vector<Rational>           eta_grid;
  std::optional<std::uint64_t>    seed;
};

/// Parses a YAML scenario document. Errors carry "line N: " prefixes.
ScenarioFile parse_scenario(std::string const &text);
ScenarioFile load_scenario(std::string const &path);

/// Whitespace separated table: a header "m1 m2 <outcome labels...> t1 t2",
/// then one row per message pair. Lines starting with '#' are comments;
/// "# kind <name>" sets the mechanism kind.
std::string write_mechanism_table(Mechanism const &mechanism, Scenario const &scenario);
Mechanism   parse_mechanism_table(std::string const &text, std::size_t num_outcomes);

std::string read_file(std::string const &path);

}  // namespace robimp
