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

#ifndef QSHUTTER_BATCH_HPP
#define QSHUTTER_BATCH_HPP

#include <vector>

#include "qshutter/report.hpp"

namespace qshutter {

//============================================================================
// Grid execution
//============================================================================
//
// Scenario points are pure and independent, so a grid fans out across
// OpenMP threads; the serial path is the reference the parallel one is
// tested against (results must match bit for bit).  Reports come back in
// grid order either way.

enum class ExecutionMode { Serial, Parallel };

// Runs every point.  Configs are validated up front; validation problems
// throw ConfigError before anything executes.  `max_threads` caps the
// OpenMP team (0 = library default).
std::vector<RunReport> run_batch(const std::vector<ScenarioConfig>& points,
                                 ExecutionMode mode, int max_threads = 0);

// Worst status across a batch; the sweep exit code.
int batch_status(const std::vector<RunReport>& reports);

}  // namespace qshutter

#endif  // QSHUTTER_BATCH_HPP
