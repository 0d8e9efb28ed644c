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

#include "qshutter/batch.hpp"

#include <algorithm>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qshutter {

namespace {

RunReport run_point(const ScenarioConfig& config) {
  try {
    return run_scenario(config);
  } catch (const ConfigError& error) {
    // Pre-validation should have caught this; keep the batch alive anyway.
    RunReport report;
    report.config = config;
    report.status = kStatusConfigError;
    report.error = error.what();
    return report;
  }
}

}  // namespace

std::vector<RunReport> run_batch(const std::vector<ScenarioConfig>& points,
                                 ExecutionMode mode, int max_threads) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      points[i].normalized().validate();
    } catch (const ConfigError& error) {
      throw ConfigError("grid point " + std::to_string(i) + ": " +
                        error.what());
    }
  }

  std::vector<RunReport> reports(points.size());
  const std::int64_t count = static_cast<std::int64_t>(points.size());

  if (mode == ExecutionMode::Parallel) {
#ifdef _OPENMP
    if (max_threads > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(max_threads)
      for (std::int64_t i = 0; i < count; ++i)
        reports[i] = run_point(points[i]);
    } else {
#pragma omp parallel for schedule(dynamic)
      for (std::int64_t i = 0; i < count; ++i)
        reports[i] = run_point(points[i]);
    }
    return reports;
#endif
  }

  for (std::int64_t i = 0; i < count; ++i) reports[i] = run_point(points[i]);
  return reports;
}

int batch_status(const std::vector<RunReport>& reports) {
  int worst = kStatusOk;
  for (const RunReport& report : reports)
    worst = std::max(worst, report.status);
  return worst;
}

}  // namespace qshutter
