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

#ifndef QSHUTTER_SCENARIOS_HPP
#define QSHUTTER_SCENARIOS_HPP

#include <optional>
#include <vector>

#include "qshutter/model.hpp"
#include "qshutter/sparse_state.hpp"

namespace qshutter {

//============================================================================
// Scenario pipelines
//============================================================================
//
// Each pipeline composes builders, the controlled reflection and the final
// post-selection, then splits the surviving photon state into transmitted /
// reflected / mixed weight.  Pipelines are pure: same inputs, same result.

// How the probability of a photon-only state distributes over basis labels
// with every photon incoming, every photon reflected, or some of each.
// The three entries partition the squared norm.
struct ProbabilitySplit {
  double all_transmitted = 0.0;
  double all_reflected = 0.0;
  double mixed = 0.0;
};

// Extra figures for the symmetric-pair scenario, where post-selection can
// succeed with both photons slipping through.
struct LeakInfo {
  double conditional_both_transmitted = 0.0;    // given post-selection success
  double unconditional_both_transmitted = 0.0;  // joint with success
  double undisturbed_weight = 0.0;   // probability the pair passed untouched
  Complex residual_overlap{0.0, 0.0};  // <post | shutter residual>, residual
                                       // = shutter state correlated with the
                                       // untouched pair, normalized
};

struct ScenarioResult {
  double success_probability = 0.0;

  // Probability, conditional on every post-selection succeeding, that at
  // least one photon is still in an incoming mode (= all_transmitted +
  // mixed).  The strict reading of "the photon got through".
  double transmitted_probability = 0.0;
  double all_transmitted_probability = 0.0;
  double reflected_probability = 0.0;
  double mixed_probability = 0.0;

  SparseState conditional_photon_state;
  std::vector<double> per_stage_probabilities;
  bool oracle_checked = false;
  double oracle_max_deviation = 0.0;
  std::optional<LeakInfo> leak;
};

// Classifies a state over photon subsystems only.
ProbabilitySplit transmitted_reflected_split(const SparseState& photon_state);

// Relabels every incoming photon mode as reflected at `stage`; used to
// phrase "everything bounced back" expectations.
SparseState reflect_all_photons(const SparseState& photon_state, int stage);

// One photon, one pre/post-selected shutter that closes all N slits: the
// conditional photon state carries reflected components only.
ScenarioResult run_single_shutter(int slit_count,
                                  const PhotonAmplitudes& alphas);

// N two-level shutters closing at least N-1 slits, pre/post-selected so a
// single photon passes as if the screen were empty.
ScenarioResult run_dual(int slit_count, const PhotonAmplitudes& alphas);

// K photons bunched on a common slit against the single shutter: all of
// them reflect.
ScenarioResult run_correlated(int slit_count, int photon_count,
                              const PhotonAmplitudes& alphas);

// Two photons through distinct slits j,k against the single shutter: the
// shutter residual correlated with the untouched pair is not orthogonal to
// the post-selected state, so both photons can slip through.
ScenarioResult run_two_photon_leak(int slit_count, int slit_j, int slit_k);

// K staged shutters (peel indices K..1) against an arbitrary state of at
// most K photons: conditional on all stage post-selections, nothing is
// transmitted.  `photon_state` must contain only incoming modes, with
// stage capacity >= K on every photon.  A stage whose post-selection hits
// zero probability raises PostSelectionImpossible carrying the stage.
ScenarioResult run_cascade(int slit_count, int photon_capacity,
                           const SparseState& photon_state);

}  // namespace qshutter

#endif  // QSHUTTER_SCENARIOS_HPP
