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

#include "qshutter/cli_app.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qshutter/batch.hpp"
#include "qshutter/oracle.hpp"
#include "qshutter/report.hpp"

namespace qshutter {

namespace {

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream stream(path);
  if (!stream) throw ConfigError("cannot open file '" + path + "'");
  nlohmann::json parsed;
  try {
    stream >> parsed;
  } catch (const nlohmann::json::exception& error) {
    throw ConfigError("invalid JSON in '" + path + "': " + error.what());
  }
  return parsed;
}

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(what + ": '" + text + "' is not a number");
  }
  if (used != text.size())
    throw ConfigError(what + ": '" + text + "' is not a number");
  return value;
}

std::pair<int, int> parse_slit_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw ConfigError("--slit-pair expects j,k");
  try {
    return {std::stoi(text.substr(0, comma)),
            std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ConfigError("--slit-pair expects two integers j,k");
  }
}

struct RunFlags {
  std::optional<std::string> scenario;
  std::optional<int> slits;
  std::optional<int> photons;
  std::optional<std::string> alphas;
  std::optional<std::string> slit_pair;
  std::optional<std::uint64_t> seed;
  bool normalize = false;
  std::optional<double> tolerance;
  bool oracle = false;
  bool oracle_table = false;
  bool json = false;
  std::optional<std::string> config_file;
};

// Precedence: built-in defaults < QSHUTTER_TOLERANCE < config file < flags.
ScenarioConfig merge_config(const RunFlags& flags) {
  ScenarioConfig config;
  config.tolerance = default_tolerance();
  if (flags.config_file)
    config = config_from_json(load_json_file(*flags.config_file));

  if (flags.scenario) config.scenario = scenario_from_string(*flags.scenario);
  if (flags.slits) config.slit_count = *flags.slits;
  if (flags.photons) config.photon_count = *flags.photons;
  if (flags.alphas) {
    bool is_random = false;
    std::vector<Complex> values = parse_alpha_list(*flags.alphas, is_random);
    config.random_alphas = is_random;
    config.alphas = std::move(values);
  }
  if (flags.slit_pair) {
    const auto [j, k] = parse_slit_pair(*flags.slit_pair);
    config.slit_j = j;
    config.slit_k = k;
  }
  if (flags.seed) config.seed = *flags.seed;
  if (flags.normalize) config.normalize_input = true;
  if (flags.tolerance) config.tolerance = *flags.tolerance;
  if (flags.oracle) config.oracle = true;
  if (flags.json) config.output_format = OutputFormat::Json;
  return config;
}

void emit_report(const RunReport& report, std::ostream& out) {
  if (report.config.output_format == OutputFormat::Json)
    out << report_json(report).dump(2) << "\n";
  else
    out << report_text(report);
}

int do_run(const RunFlags& flags, std::ostream& out) {
  ScenarioConfig config = merge_config(flags).normalized();
  config.validate();

  if (flags.oracle_table) {
    out << oracle::branch_table_tsv(config.slit_count, config.photon_count);
    return kStatusOk;
  }

  const RunReport report = run_scenario(config);
  emit_report(report, out);
  return report.status;
}

int do_sweep(const std::string& grid_path, bool json, bool serial,
             int threads, std::ostream& out) {
  const std::vector<ScenarioConfig> points =
      grid_from_json(load_json_file(grid_path));
  const std::vector<RunReport> reports = run_batch(
      points, serial ? ExecutionMode::Serial : ExecutionMode::Parallel,
      threads);

  if (json) {
    auto list = nlohmann::ordered_json::array();
    for (const RunReport& report : reports) list.push_back(report_json(report));
    out << list.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      out << "# point " << i << "\n";
      out << report_text(reports[i]);
    }
  }
  return batch_status(reports);
}

}  // namespace

std::vector<Complex> parse_alpha_list(const std::string& text,
                                      bool& is_random) {
  if (text == "random") {
    is_random = true;
    return {};
  }
  is_random = false;
  std::vector<Complex> values;
  std::stringstream stream(text);
  std::string component;
  while (std::getline(stream, component, ';')) {
    if (component.empty())
      throw ConfigError("--alphas: empty component in '" + text + "'");
    const auto comma = component.find(',');
    if (comma == std::string::npos) {
      values.emplace_back(parse_double(component, "--alphas"), 0.0);
    } else {
      values.emplace_back(
          parse_double(component.substr(0, comma), "--alphas"),
          parse_double(component.substr(comma + 1), "--alphas"));
    }
  }
  if (values.empty()) throw ConfigError("--alphas: no components given");
  return values;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Pre/post-selected quantum shutter scenarios"};
  app.require_subcommand(1);

  RunFlags flags;
  CLI::App* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("--scenario", flags.scenario,
                  "single|dual|correlated|leak|cascade");
  run->add_option("--slits", flags.slits, "Number of slits N (>= 2)");
  run->add_option("--photons", flags.photons, "Number of photons K");
  run->add_option("--alphas", flags.alphas,
                  "Photon amplitudes 're,im;re,im;...' or 'random'");
  run->add_option("--slit-pair", flags.slit_pair,
                  "Distinct slits 'j,k' for the leak scenario");
  run->add_option("--seed", flags.seed, "Seed for random inputs");
  run->add_flag("--normalize", flags.normalize,
                "Rescale explicit amplitudes to unit norm");
  run->add_option("--tolerance", flags.tolerance, "Claim tolerance");
  run->add_flag("--oracle", flags.oracle,
                "Cross-check against the dense reference");
  run->add_flag("--oracle-table", flags.oracle_table,
                "Print the branch table as TSV and exit");
  run->add_flag("--json", flags.json, "Emit the JSON report");
  run->add_option("--config", flags.config_file, "JSON config file");

  std::string grid_path;
  bool sweep_json = false;
  bool sweep_serial = false;
  int sweep_threads = 0;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a grid of scenarios");
  sweep->add_option("--grid", grid_path, "JSON array of configs")->required();
  sweep->add_flag("--json", sweep_json, "Emit one JSON array of reports");
  sweep->add_flag("--serial", sweep_serial,
                  "Reference serial execution (default: OpenMP)");
  sweep->add_option("--threads", sweep_threads, "Cap the OpenMP team size");

  // CLI11 wants mutable char pointers.
  std::vector<std::string> argv_storage = args;
  std::vector<char*> argv;
  std::string program = "qshutter";
  argv.push_back(program.data());
  for (std::string& arg : argv_storage) argv.push_back(arg.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& help) {
    out << app.help();
    return kStatusOk;
  } catch (const CLI::ParseError& error) {
    err << "config error: " << error.what() << "\n";
    return kStatusConfigError;
  }

  try {
    if (run->parsed()) return do_run(flags, out);
    return do_sweep(grid_path, sweep_json, sweep_serial, sweep_threads, out);
  } catch (const ConfigError& error) {
    err << "config error: " << error.what() << "\n";
    return kStatusConfigError;
  }
}

}  // namespace qshutter
