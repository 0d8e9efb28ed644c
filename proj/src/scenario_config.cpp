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

#include "qshutter/scenario_config.hpp"

#include <cmath>
#include <cstdlib>

#include "qshutter/random.hpp"

namespace qshutter {

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Single:
      return "single";
    case ScenarioKind::Dual:
      return "dual";
    case ScenarioKind::Correlated:
      return "correlated";
    case ScenarioKind::Leak:
      return "leak";
    case ScenarioKind::Cascade:
      return "cascade";
  }
  return "?";
}

ScenarioKind scenario_from_string(const std::string& name) {
  if (name == "single") return ScenarioKind::Single;
  if (name == "dual") return ScenarioKind::Dual;
  if (name == "correlated") return ScenarioKind::Correlated;
  if (name == "leak") return ScenarioKind::Leak;
  if (name == "cascade") return ScenarioKind::Cascade;
  throw ConfigError("unknown scenario '" + name +
                    "'; expected single|dual|correlated|leak|cascade");
}

double default_tolerance() {
  if (const char* env = std::getenv("QSHUTTER_TOLERANCE")) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || value <= 0.0)
      throw ConfigError("QSHUTTER_TOLERANCE must be a positive number");
    return value;
  }
  return 1e-10;
}

ScenarioConfig ScenarioConfig::normalized() const {
  ScenarioConfig config = *this;
  if (config.scenario == ScenarioKind::Leak && config.photon_count == 1)
    config.photon_count = 2;
  return config;
}

void ScenarioConfig::validate() const {
  if (slit_count < 2) throw ConfigError("N must be at least 2");
  if (tolerance <= 0.0) throw ConfigError("tolerance must be positive");

  switch (scenario) {
    case ScenarioKind::Single:
    case ScenarioKind::Dual:
      if (photon_count != 1)
        throw ConfigError(to_string(scenario) +
                          " scenario runs exactly one photon (K = 1)");
      break;
    case ScenarioKind::Correlated:
      if (photon_count < 1) throw ConfigError("K must be at least 1");
      break;
    case ScenarioKind::Leak:
      if (photon_count != 2)
        throw ConfigError("leak scenario runs exactly two photons (K = 2)");
      if (slit_j < 1 || slit_j > slit_count || slit_k < 1 ||
          slit_k > slit_count)
        throw ConfigError("slit pair outside [1, N]");
      if (slit_j == slit_k)
        throw ConfigError("slit pair must name two distinct slits");
      if (!random_alphas && !alphas.empty())
        throw ConfigError("leak scenario takes --slit-pair, not --alphas");
      break;
    case ScenarioKind::Cascade:
      if (photon_count < 1) throw ConfigError("K must be at least 1");
      if (photon_count > slit_count) throw ConfigError("K must not exceed N");
      break;
  }

  if (!random_alphas && scenario != ScenarioKind::Leak) {
    const std::size_t expected =
        static_cast<std::size_t>(slit_count);  // per-slit amplitudes
    if (alphas.size() != expected)
      throw ConfigError("expected " + std::to_string(expected) +
                        " photon amplitudes, got " +
                        std::to_string(alphas.size()));
    double total = 0.0;
    for (const Complex& value : alphas) total += std::norm(value);
    if (total <= 0.0) throw ConfigError("photon amplitudes are all zero");
    if (!normalize_input && std::abs(total - 1.0) > kInputNormTolerance)
      throw ConfigError("photon amplitudes have squared norm " +
                        std::to_string(total) +
                        "; pass --normalize or provide a unit vector");
  }
}

std::vector<Complex> ScenarioConfig::resolve_input_coefficients() const {
  if (scenario == ScenarioKind::Leak) return {};

  if (!random_alphas) {
    std::vector<Complex> values = alphas;
    double total = 0.0;
    for (const Complex& value : values) total += std::norm(value);
    if (normalize_input) {
      const double inv = 1.0 / std::sqrt(total);
      for (Complex& value : values) value *= inv;
    }
    return values;
  }

  std::size_t count = static_cast<std::size_t>(slit_count);
  if (scenario == ScenarioKind::Cascade)
    for (int k = 1; k < photon_count; ++k) count *= slit_count;
  return random_unit_vector(seed, count);
}

namespace {

nlohmann::ordered_json complex_to_json(const Complex& value) {
  return nlohmann::ordered_json::array({value.real(), value.imag()});
}

Complex complex_from_json(const nlohmann::json& source) {
  if (source.is_number()) return Complex{source.get<double>(), 0.0};
  if (source.is_array() && source.size() == 2)
    return Complex{source[0].get<double>(), source[1].get<double>()};
  throw ConfigError("complex values must be numbers or [re, im] pairs");
}

}  // namespace

nlohmann::ordered_json config_to_json(const ScenarioConfig& config) {
  nlohmann::ordered_json out;
  out["scenario"] = to_string(config.scenario);
  out["slits"] = config.slit_count;
  out["photons"] = config.photon_count;
  if (config.random_alphas) {
    out["alphas"] = "random";
  } else {
    auto list = nlohmann::ordered_json::array();
    for (const Complex& value : config.alphas)
      list.push_back(complex_to_json(value));
    out["alphas"] = list;
  }
  out["seed"] = config.seed;
  out["normalize"] = config.normalize_input;
  out["tolerance"] = config.tolerance;
  out["oracle"] = config.oracle;
  if (config.scenario == ScenarioKind::Leak)
    out["slit_pair"] = nlohmann::ordered_json::array(
        {config.slit_j, config.slit_k});
  out["format"] = config.output_format == OutputFormat::Json ? "json" : "text";
  return out;
}

ScenarioConfig config_from_json(const nlohmann::json& source) {
  if (!source.is_object()) throw ConfigError("config must be a JSON object");
  ScenarioConfig config;
  config.tolerance = default_tolerance();
  for (const auto& [key, value] : source.items()) {
    if (key == "scenario")
      config.scenario = scenario_from_string(value.get<std::string>());
    else if (key == "slits")
      config.slit_count = value.get<int>();
    else if (key == "photons")
      config.photon_count = value.get<int>();
    else if (key == "alphas") {
      if (value.is_string()) {
        if (value.get<std::string>() != "random")
          throw ConfigError("alphas must be an array or \"random\"");
        config.random_alphas = true;
        config.alphas.clear();
      } else if (value.is_array()) {
        config.random_alphas = false;
        config.alphas.clear();
        for (const auto& item : value)
          config.alphas.push_back(complex_from_json(item));
      } else {
        throw ConfigError("alphas must be an array or \"random\"");
      }
    } else if (key == "seed")
      config.seed = value.get<std::uint64_t>();
    else if (key == "normalize")
      config.normalize_input = value.get<bool>();
    else if (key == "tolerance")
      config.tolerance = value.get<double>();
    else if (key == "oracle")
      config.oracle = value.get<bool>();
    else if (key == "slit_pair") {
      if (!value.is_array() || value.size() != 2)
        throw ConfigError("slit_pair must be [j, k]");
      config.slit_j = value[0].get<int>();
      config.slit_k = value[1].get<int>();
    } else if (key == "format") {
      const std::string format = value.get<std::string>();
      if (format == "json")
        config.output_format = OutputFormat::Json;
      else if (format == "text")
        config.output_format = OutputFormat::Text;
      else
        throw ConfigError("format must be json or text");
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return config;
}

std::vector<ScenarioConfig> grid_from_json(const nlohmann::json& source) {
  if (!source.is_array())
    throw ConfigError("grid file must hold a JSON array of configs");
  std::vector<ScenarioConfig> configs;
  configs.reserve(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    try {
      configs.push_back(config_from_json(source[i]));
    } catch (const ConfigError& error) {
      throw ConfigError("grid entry " + std::to_string(i) + ": " +
                        error.what());
    }
  }
  return configs;
}

}  // namespace qshutter
