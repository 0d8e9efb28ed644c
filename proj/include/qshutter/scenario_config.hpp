// Copyright 2026 The qshutter authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSHUTTER_SCENARIO_CONFIG_HPP
#define QSHUTTER_SCENARIO_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qshutter/types.hpp"

namespace qshutter {

enum class ScenarioKind { Single, Dual, Correlated, Leak, Cascade };
enum class OutputFormat { Text, Json };

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_from_string(const std::string& name);

// One runnable experiment point.  `alphas` empty means "draw from seed".
// For the cascade, explicit alphas describe the bunched (correlated) input
// while a random draw produces a generic entangled K-photon tensor.
struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::Single;
  int slit_count = 2;   // N
  int photon_count = 1; // K
  std::vector<Complex> alphas;
  bool random_alphas = true;
  std::uint64_t seed = 0;
  bool normalize_input = false;
  double tolerance = 1e-10;
  bool oracle = false;
  int slit_j = 1;  // leak pair
  int slit_k = 2;
  OutputFormat output_format = OutputFormat::Text;

  // Scenario-implied defaults: the leak experiment always runs two
  // photons, so an unset K resolves to 2 there.
  ScenarioConfig normalized() const;

  // Throws ConfigError naming the violated constraint.
  void validate() const;

  // The resolved photon input: per-slit amplitudes, or for a cascade with
  // random input the full N^K coefficient tensor.  Deterministic in seed.
  std::vector<Complex> resolve_input_coefficients() const;
};

// Default tolerance, honoring the QSHUTTER_TOLERANCE environment variable.
double default_tolerance();

// JSON round-trip; complex numbers travel as [re, im] pairs.
nlohmann::ordered_json config_to_json(const ScenarioConfig& config);
ScenarioConfig config_from_json(const nlohmann::json& source);

// Grid file: a JSON array of config objects.
std::vector<ScenarioConfig> grid_from_json(const nlohmann::json& source);

}  // namespace qshutter

#endif  // QSHUTTER_SCENARIO_CONFIG_HPP
