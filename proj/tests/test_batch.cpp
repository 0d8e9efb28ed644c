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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qshutter/batch.hpp"

using namespace qshutter;

namespace {

std::vector<ScenarioConfig> mixed_grid() {
  std::vector<ScenarioConfig> grid;
  for (int n = 2; n <= 4; ++n) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      ScenarioConfig single;
      single.scenario = ScenarioKind::Single;
      single.slit_count = n;
      single.seed = seed;
      grid.push_back(single);

      ScenarioConfig dual = single;
      dual.scenario = ScenarioKind::Dual;
      grid.push_back(dual);

      ScenarioConfig leak;
      leak.scenario = ScenarioKind::Leak;
      leak.slit_count = n;
      leak.photon_count = 2;
      leak.slit_k = n;
      grid.push_back(leak);

      ScenarioConfig cascade;
      cascade.scenario = ScenarioKind::Cascade;
      cascade.slit_count = n;
      cascade.photon_count = 2;
      cascade.seed = seed;
      grid.push_back(cascade);
    }
  }
  return grid;
}

}  // namespace

TEST_CASE("parallel and serial batches produce identical reports") {
  const std::vector<ScenarioConfig> grid = mixed_grid();
  const auto serial = run_batch(grid, ExecutionMode::Serial);
  const auto parallel = run_batch(grid, ExecutionMode::Parallel);
  REQUIRE(serial.size() == grid.size());
  REQUIRE(parallel.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(serial[i].status == kStatusOk);
    CHECK(report_json(serial[i]) == report_json(parallel[i]));
  }
}

TEST_CASE("reports come back in grid order") {
  const std::vector<ScenarioConfig> grid = mixed_grid();
  const auto reports = run_batch(grid, ExecutionMode::Parallel, 4);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(reports[i].config.scenario == grid[i].scenario);
    CHECK(reports[i].config.slit_count == grid[i].slit_count);
    CHECK(reports[i].config.seed == grid[i].seed);
  }
}

TEST_CASE("batch status aggregates the worst point") {
  std::vector<ScenarioConfig> grid = mixed_grid();
  CHECK(batch_status(run_batch(grid, ExecutionMode::Serial)) == kStatusOk);

  ScenarioConfig strict;
  strict.scenario = ScenarioKind::Single;
  strict.slit_count = 2;
  strict.tolerance = 1e-30;  // unreachable: forces a claim failure
  grid.push_back(strict);
  CHECK(batch_status(run_batch(grid, ExecutionMode::Parallel)) ==
        kStatusClaimFailed);
}

TEST_CASE("invalid grid points are rejected up front with their index") {
  std::vector<ScenarioConfig> grid = mixed_grid();
  ScenarioConfig bad;
  bad.scenario = ScenarioKind::Cascade;
  bad.slit_count = 2;
  bad.photon_count = 9;
  grid.push_back(bad);
  try {
    (void)run_batch(grid, ExecutionMode::Serial);
    FAIL("expected ConfigError");
  } catch (const ConfigError& error) {
    const std::string what = error.what();
    CHECK(what.find("grid point " + std::to_string(grid.size() - 1)) !=
          std::string::npos);
    CHECK(what.find("K must not exceed N") != std::string::npos);
  }
}
