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

#ifndef QSHUTTER_REPORT_HPP
#define QSHUTTER_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qshutter/scenario_config.hpp"
#include "qshutter/scenarios.hpp"

namespace qshutter {

// Agreement threshold for the sparse-vs-dense cross-check.
inline constexpr double kOracleAgreementTolerance = 1e-12;

// One verified statement about a scenario outcome.
struct Claim {
  std::string name;
  nlohmann::ordered_json expected;  // number for equality, string for bounds
  double observed = 0.0;
  bool pass = false;
};

// Exit statuses shared by the CLI.
enum ExitStatus : int {
  kStatusOk = 0,
  kStatusClaimFailed = 1,
  kStatusConfigError = 2,
  kStatusPostSelectionImpossible = 3,
};

struct RunReport {
  ScenarioConfig config;
  std::optional<ScenarioResult> result;
  std::vector<Claim> claims;
  int status = kStatusOk;
  std::string error;      // status 3: what failed
  int failed_stage = 0;   // status 3: which cascade stage
};

// Validates, resolves the seeded input, runs the pipeline, evaluates the
// scenario claims and (optionally) the dense-oracle cross-check.  A failed
// post-selection becomes a status-3 report, not an exception.
RunReport run_scenario(const ScenarioConfig& config);

nlohmann::ordered_json report_json(const RunReport& report);

// Human-readable rendering of exactly the same data.
std::string report_text(const RunReport& report);

}  // namespace qshutter

#endif  // QSHUTTER_REPORT_HPP
