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

#include "qshutter/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qshutter {

ProbabilitySplit transmitted_reflected_split(const SparseState& photon_state) {
  if (photon_state.layout().empty())
    throw ConfigError("split: state has no photon subsystems");
  for (const SubsystemInfo& info : photon_state.layout())
    if (info.role != SubsystemRole::Photon)
      throw ConfigError("split: subsystem " + std::to_string(info.id) +
                        " is not a photon");

  ProbabilitySplit split;
  for (const auto& [basis, value] : photon_state.amplitudes()) {
    std::size_t incoming = 0;
    for (const ModeLabel& label : basis)
      if (label.kind == ModeKind::PhotonIn) ++incoming;
    const double weight = std::norm(value);
    if (incoming == basis.size())
      split.all_transmitted += weight;
    else if (incoming == 0)
      split.all_reflected += weight;
    else
      split.mixed += weight;
  }
  return split;
}

SparseState reflect_all_photons(const SparseState& photon_state, int stage) {
  SparseState result(photon_state.layout());
  for (const auto& [basis, value] : photon_state.amplitudes()) {
    BasisLabel image = basis;
    for (ModeLabel& label : image) {
      if (label.kind != ModeKind::PhotonIn)
        throw ConfigError("reflect_all_photons: state has non-incoming modes");
      label = photon_ref(label.subsystem, label.slit, stage);
    }
    result.accumulate(image, value);
  }
  return result;
}

namespace {

void fill_split(ScenarioResult& result) {
  const ProbabilitySplit split =
      transmitted_reflected_split(result.conditional_photon_state);
  result.all_transmitted_probability = split.all_transmitted;
  result.reflected_probability = split.all_reflected;
  result.mixed_probability = split.mixed;
  result.transmitted_probability = split.all_transmitted + split.mixed;
}

void require_alpha_count(const PhotonAmplitudes& alphas, int slit_count) {
  if (alphas.slit_count() != slit_count)
    throw ConfigError("expected " + std::to_string(slit_count) +
                      " photon amplitudes, got " +
                      std::to_string(alphas.slit_count()));
}

}  // namespace

ScenarioResult run_single_shutter(int slit_count,
                                  const PhotonAmplitudes& alphas) {
  require_alpha_count(alphas, slit_count);
  const int shutter_id = 1;
  const int photon_id = 2;
  const ShutterSpec pre{slit_count, 1, SelectionSign::Pre};
  const ShutterSpec post{slit_count, 1, SelectionSign::Post};

  SparseState joint = tensor(build_shutter_state(pre, shutter_id),
                             build_photon_state(alphas, photon_id));
  const int photons[] = {photon_id};
  joint = apply_reflection_interaction(joint, shutter_id, photons, 1);

  auto [probability, conditional] =
      project_subsystem(joint, shutter_id, build_shutter_state(post, shutter_id));

  ScenarioResult result;
  result.success_probability = probability;
  result.per_stage_probabilities = {probability};
  result.conditional_photon_state = std::move(conditional);
  fill_split(result);
  return result;
}

ScenarioResult run_dual(int slit_count, const PhotonAmplitudes& alphas) {
  require_alpha_count(alphas, slit_count);
  const int photon_id = slit_count + 1;

  SparseState joint =
      tensor(build_dual_state(slit_count, SelectionSign::Pre, 1),
             build_photon_state(alphas, photon_id));
  std::vector<int> shutters(slit_count);
  std::iota(shutters.begin(), shutters.end(), 1);
  const int photons[] = {photon_id};
  joint = apply_dual_reflection_interaction(joint, shutters, photons, 1);

  auto [probability, conditional] =
      post_select(joint, build_dual_state(slit_count, SelectionSign::Post, 1));

  ScenarioResult result;
  result.success_probability = probability;
  result.per_stage_probabilities = {probability};
  result.conditional_photon_state = std::move(conditional);
  fill_split(result);
  return result;
}

ScenarioResult run_correlated(int slit_count, int photon_count,
                              const PhotonAmplitudes& alphas) {
  require_alpha_count(alphas, slit_count);
  if (photon_count < 1)
    throw ConfigError("run_correlated: need at least one photon");
  const int shutter_id = 1;
  const int first_photon_id = 2;
  const ShutterSpec pre{slit_count, 1, SelectionSign::Pre};
  const ShutterSpec post{slit_count, 1, SelectionSign::Post};

  SparseState joint =
      tensor(build_shutter_state(pre, shutter_id),
             build_correlated_photons(alphas, photon_count, first_photon_id));
  std::vector<int> photons(photon_count);
  std::iota(photons.begin(), photons.end(), first_photon_id);
  joint = apply_reflection_interaction(joint, shutter_id, photons, 1);

  auto [probability, conditional] =
      project_subsystem(joint, shutter_id, build_shutter_state(post, shutter_id));

  ScenarioResult result;
  result.success_probability = probability;
  result.per_stage_probabilities = {probability};
  result.conditional_photon_state = std::move(conditional);
  fill_split(result);
  return result;
}

ScenarioResult run_two_photon_leak(int slit_count, int slit_j, int slit_k) {
  const int shutter_id = 1;
  const ShutterSpec pre{slit_count, 1, SelectionSign::Pre};
  const ShutterSpec post{slit_count, 1, SelectionSign::Post};

  const SparseState pair = build_symmetric_pair(slit_j, slit_k, slit_count, 2);
  SparseState joint = tensor(build_shutter_state(pre, shutter_id), pair);
  const int photons[] = {2, 3};
  joint = apply_reflection_interaction(joint, shutter_id, photons, 1);

  // Shutter component correlated with the pair passing untouched: project
  // the photons onto the input.  Reflected labels are orthogonal to the
  // input, so only the undisturbed branch survives.
  auto [undisturbed_weight, residual] = post_select(joint, pair);
  const Complex overlap = inner_product(
      build_shutter_state(post, shutter_id), residual);

  auto [probability, conditional] =
      project_subsystem(joint, shutter_id, build_shutter_state(post, shutter_id));

  ScenarioResult result;
  result.success_probability = probability;
  result.per_stage_probabilities = {probability};
  result.conditional_photon_state = std::move(conditional);
  fill_split(result);

  LeakInfo leak;
  leak.conditional_both_transmitted = result.all_transmitted_probability;
  leak.unconditional_both_transmitted =
      probability * result.all_transmitted_probability;
  leak.undisturbed_weight = undisturbed_weight;
  leak.residual_overlap = overlap;
  result.leak = leak;
  return result;
}

ScenarioResult run_cascade(int slit_count, int photon_capacity,
                           const SparseState& photon_state) {
  const CascadeLayout cascade = build_cascade(slit_count, photon_capacity);

  if (photon_state.layout().empty())
    throw ConfigError("run_cascade: photon state is empty");
  if (static_cast<int>(photon_state.layout().size()) > photon_capacity)
    throw ConfigError("run_cascade: more photons than the cascade can stop");
  int max_photon_id = 0;
  for (const SubsystemInfo& info : photon_state.layout()) {
    if (info.role != SubsystemRole::Photon)
      throw ConfigError("run_cascade: subsystem " + std::to_string(info.id) +
                        " is not a photon");
    if (info.slit_count != slit_count)
      throw ConfigError("run_cascade: photon " + std::to_string(info.id) +
                        " has a different slit count");
    if (info.stage_count < photon_capacity)
      throw ConfigError("run_cascade: photon " + std::to_string(info.id) +
                        " needs stage capacity >= " +
                        std::to_string(photon_capacity));
    max_photon_id = std::max(max_photon_id, info.id);
  }
  for (const auto& [basis, value] : photon_state.amplitudes())
    for (const ModeLabel& label : basis)
      if (label.kind != ModeKind::PhotonIn)
        throw ConfigError("run_cascade: input photons must be incoming");
  if (std::abs(photon_state.norm() - 1.0) > kNormTolerance)
    throw ConfigError("run_cascade: photon state is not normalized");

  std::vector<int> photon_ids;
  for (const SubsystemInfo& info : photon_state.layout())
    photon_ids.push_back(info.id);
  const auto shutter_id = [&](int stage) { return max_photon_id + stage; };

  // Shutters first (stage order), then the photons, as one joint ket.
  SparseState joint = photon_state;
  for (int stage = static_cast<int>(cascade.stages.size()); stage >= 1; --stage)
    joint = tensor(build_shutter_state(cascade.stages[stage - 1], shutter_id(stage)),
                   joint);

  ScenarioResult result;
  for (int stage = 1; stage <= static_cast<int>(cascade.stages.size());
       ++stage) {
    joint = apply_reflection_interaction(joint, shutter_id(stage), photon_ids,
                                         stage);
    ShutterSpec post = cascade.stages[stage - 1];
    post.sign = SelectionSign::Post;
    try {
      auto [probability, remainder] = project_subsystem(
          joint, shutter_id(stage), build_shutter_state(post, shutter_id(stage)));
      result.per_stage_probabilities.push_back(probability);
      joint = std::move(remainder);
    } catch (const PostSelectionImpossible& failure) {
      throw PostSelectionImpossible(
          failure.raw_probability(),
          "run_cascade: post-selection failed at stage " +
              std::to_string(stage),
          stage);
    }
  }

  result.success_probability =
      std::accumulate(result.per_stage_probabilities.begin(),
                      result.per_stage_probabilities.end(), 1.0,
                      std::multiplies<double>());
  result.conditional_photon_state = std::move(joint);
  fill_split(result);
  return result;
}

}  // namespace qshutter
