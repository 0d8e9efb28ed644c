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

#include "qshutter/model.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <unordered_map>

namespace qshutter {

void ShutterSpec::validate() const {
  if (slit_count < 2)
    throw ConfigError("ShutterSpec: need at least 2 slits, got " +
                      std::to_string(slit_count));
  if (peel_index < 1 || peel_index > slit_count)
    throw ConfigError("ShutterSpec: peel index " + std::to_string(peel_index) +
                      " outside [1, " + std::to_string(slit_count) + "]");
}

PhotonAmplitudes PhotonAmplitudes::normalized(std::vector<Complex> values) {
  double total = 0.0;
  for (const Complex& value : values) total += std::norm(value);
  if (total <= 0.0)
    throw ConfigError("PhotonAmplitudes: cannot normalize a zero vector");
  const double inv = 1.0 / std::sqrt(total);
  for (Complex& value : values) value *= inv;
  return PhotonAmplitudes{std::move(values)};
}

void PhotonAmplitudes::validate() const {
  if (alphas.size() < 2)
    throw ConfigError("PhotonAmplitudes: need amplitudes for at least 2 slits");
  double total = 0.0;
  for (const Complex& value : alphas) total += std::norm(value);
  if (std::abs(total - 1.0) > kInputNormTolerance)
    throw ConfigError(
        "PhotonAmplitudes: squared norm " + std::to_string(total) +
        " is not 1; pass normalize explicitly if this is intended");
}

SparseState build_shutter_state(const ShutterSpec& spec, int subsystem_id) {
  spec.validate();
  const int n = spec.slit_count;
  const int m = spec.peel_index;
  const double inv_norm = 1.0 / std::sqrt(static_cast<double>(2 * n - m));

  SparseState state({shutter_subsystem(subsystem_id, n)});
  for (int slot = 1; slot <= n; ++slot)
    state.accumulate({shutter_at(subsystem_id, slot)}, Complex{inv_norm, 0.0});
  if (m < n) {
    const double side = std::sqrt(static_cast<double>(n - m)) * inv_norm;
    const double signed_side = spec.sign == SelectionSign::Pre ? side : -side;
    state.accumulate({shutter_at(subsystem_id, n + 1)},
                     Complex{signed_side, 0.0});
  }
  return state;
}

SparseState build_photon_state(const PhotonAmplitudes& alphas, int photon_id,
                               int stage_count) {
  alphas.validate();
  const int n = alphas.slit_count();
  SparseState state({photon_subsystem(photon_id, n, stage_count)});
  for (int slit = 1; slit <= n; ++slit)
    state.accumulate({photon_in(photon_id, slit)}, alphas.alphas[slit - 1]);
  return state;
}

SparseState build_correlated_photons(const PhotonAmplitudes& alphas,
                                     int photon_count, int first_photon_id,
                                     int stage_count) {
  alphas.validate();
  if (photon_count < 1)
    throw ConfigError("build_correlated_photons: need at least one photon");
  const int n = alphas.slit_count();

  std::vector<SubsystemInfo> layout;
  for (int k = 0; k < photon_count; ++k)
    layout.push_back(photon_subsystem(first_photon_id + k, n, stage_count));
  SparseState state(std::move(layout));
  for (int slit = 1; slit <= n; ++slit) {
    BasisLabel basis;
    for (int k = 0; k < photon_count; ++k)
      basis.push_back(photon_in(first_photon_id + k, slit));
    state.accumulate(basis, alphas.alphas[slit - 1]);
  }
  return state;
}

SparseState build_symmetric_pair(int slit_j, int slit_k, int slit_count,
                                 int first_photon_id, int stage_count) {
  if (slit_j == slit_k)
    throw ConfigError(
        "build_symmetric_pair: slits coincide; a bunched pair is a "
        "correlated state");
  if (slit_j < 1 || slit_j > slit_count || slit_k < 1 || slit_k > slit_count)
    throw ConfigError("build_symmetric_pair: slits outside [1, " +
                      std::to_string(slit_count) + "]");
  const int lo = std::min(slit_j, slit_k);
  const int hi = std::max(slit_j, slit_k);
  const int id0 = first_photon_id;
  const int id1 = first_photon_id + 1;

  SparseState state({photon_subsystem(id0, slit_count, stage_count),
                     photon_subsystem(id1, slit_count, stage_count)});
  const Complex amp{1.0 / std::sqrt(2.0), 0.0};
  state.accumulate({photon_in(id0, lo), photon_in(id1, hi)}, amp);
  state.accumulate({photon_in(id0, hi), photon_in(id1, lo)}, amp);
  return state;
}

SparseState build_general_photons(std::span<const Complex> coefficients,
                                  int slit_count, int photon_count,
                                  int first_photon_id, int stage_count) {
  if (photon_count < 1)
    throw ConfigError("build_general_photons: need at least one photon");
  std::size_t expected = 1;
  for (int k = 0; k < photon_count; ++k) expected *= slit_count;
  if (coefficients.size() != expected)
    throw ConfigError("build_general_photons: expected " +
                      std::to_string(expected) + " coefficients, got " +
                      std::to_string(coefficients.size()));
  double total = 0.0;
  for (const Complex& value : coefficients) total += std::norm(value);
  if (std::abs(total - 1.0) > kInputNormTolerance)
    throw ConfigError("build_general_photons: coefficients are not normalized");

  std::vector<SubsystemInfo> layout;
  for (int k = 0; k < photon_count; ++k)
    layout.push_back(photon_subsystem(first_photon_id + k, slit_count,
                                      stage_count));
  SparseState state(std::move(layout));
  for (std::size_t flat = 0; flat < coefficients.size(); ++flat) {
    if (coefficients[flat] == Complex{0.0, 0.0}) continue;
    BasisLabel basis(photon_count);
    std::size_t rest = flat;
    for (int k = photon_count - 1; k >= 0; --k) {
      basis[k] = photon_in(first_photon_id + k,
                           static_cast<int>(rest % slit_count) + 1);
      rest /= slit_count;
    }
    state.accumulate(basis, coefficients[flat]);
  }
  return state;
}

SparseState build_dual_state(int slit_count, SelectionSign sign,
                             int first_shutter_id) {
  if (slit_count < 2)
    throw ConfigError("build_dual_state: need at least 2 slits");
  const int n = slit_count;
  const double inv_norm = 1.0 / std::sqrt(static_cast<double>(2 * n - 1));

  std::vector<SubsystemInfo> layout;
  for (int i = 0; i < n; ++i)
    layout.push_back(dual_shutter_subsystem(first_shutter_id + i, n, i + 1));
  SparseState state(std::move(layout));

  // One open slit, all others closed.
  for (int open = 0; open < n; ++open) {
    BasisLabel basis;
    for (int i = 0; i < n; ++i)
      basis.push_back(i == open ? shutter_open(first_shutter_id + i)
                                : shutter_closed(first_shutter_id + i));
    state.accumulate(basis, Complex{inv_norm, 0.0});
  }
  // Everything closed.
  BasisLabel all_closed;
  for (int i = 0; i < n; ++i)
    all_closed.push_back(shutter_closed(first_shutter_id + i));
  const double side = std::sqrt(static_cast<double>(n - 1)) * inv_norm;
  state.accumulate(all_closed,
                   Complex{sign == SelectionSign::Pre ? side : -side, 0.0});
  return state;
}

CascadeLayout build_cascade(int slit_count, int photon_capacity) {
  if (photon_capacity < 1)
    throw ConfigError("build_cascade: need at least one photon stage");
  if (photon_capacity > slit_count)
    throw ConfigError("build_cascade: K must not exceed N");
  CascadeLayout layout;
  layout.photon_capacity = photon_capacity;
  for (int m = photon_capacity; m >= 1; --m)
    layout.stages.push_back(ShutterSpec{slit_count, m, SelectionSign::Pre});
  return layout;
}

namespace {

// Shared permutation core.  `control` maps a composite label to the set of
// reflecting slits via a predicate evaluated per photon slit.
SparseState apply_controlled_reflection(
    const SparseState& state, std::span<const int> photon_subsystem_ids,
    int stage, StageReuse reuse,
    const std::function<bool(const BasisLabel&, int)>& reflects_slit) {
  if (stage < 1)
    throw ConfigError("reflection: stage must be >= 1");

  std::vector<int> photon_positions;
  photon_positions.reserve(photon_subsystem_ids.size());
  for (int id : photon_subsystem_ids) {
    const int pos = state.subsystem_position(id);
    if (pos < 0)
      throw ConfigError("reflection: photon subsystem " + std::to_string(id) +
                        " not present in state");
    const SubsystemInfo& info = state.layout()[pos];
    if (info.role != SubsystemRole::Photon)
      throw ConfigError("reflection: subsystem " + std::to_string(id) +
                        " is not a photon");
    if (stage > info.stage_count)
      throw ConfigError("reflection: stage " + std::to_string(stage) +
                        " exceeds the stage capacity of photon " +
                        std::to_string(id));
    photon_positions.push_back(pos);
  }

  if (reuse == StageReuse::Forbid) {
    for (const auto& [basis, value] : state.amplitudes()) {
      for (int pos : photon_positions) {
        const ModeLabel& label = basis[pos];
        if (label.kind == ModeKind::PhotonRef && label.stage == stage)
          throw ConfigError("reflection: stage " + std::to_string(stage) +
                            " already used on photon " +
                            std::to_string(label.subsystem));
      }
    }
  }

  SparseState result(state.layout());
  for (const auto& [basis, value] : state.amplitudes()) {
    BasisLabel image = basis;
    for (int pos : photon_positions) {
      ModeLabel& label = image[pos];
      if (label.kind == ModeKind::PhotonIn) {
        if (reflects_slit(basis, label.slit))
          label = photon_ref(label.subsystem, label.slit, stage);
      } else if (label.kind == ModeKind::PhotonRef && label.stage == stage) {
        if (reflects_slit(basis, label.slit))
          label = photon_in(label.subsystem, label.slit);
      }
    }
    result.accumulate(image, value);
  }
  return result;
}

}  // namespace

SparseState apply_reflection_interaction(
    const SparseState& state, int shutter_subsystem_id,
    std::span<const int> photon_subsystem_ids, int stage, StageReuse reuse) {
  const int shutter_pos = state.subsystem_position(shutter_subsystem_id);
  if (shutter_pos < 0)
    throw ConfigError("reflection: shutter subsystem " +
                      std::to_string(shutter_subsystem_id) +
                      " not present in state");
  if (state.layout()[shutter_pos].role != SubsystemRole::ShutterLocation)
    throw ConfigError("reflection: subsystem " +
                      std::to_string(shutter_subsystem_id) +
                      " is not a location shutter");
  const int slit_count = state.layout()[shutter_pos].slit_count;

  return apply_controlled_reflection(
      state, photon_subsystem_ids, stage, reuse,
      [shutter_pos, slit_count](const BasisLabel& basis, int slit) {
        const ModeLabel& shutter = basis[shutter_pos];
        return shutter.slit <= slit_count && shutter.slit == slit;
      });
}

SparseState apply_dual_reflection_interaction(
    const SparseState& state, std::span<const int> shutter_subsystem_ids,
    std::span<const int> photon_subsystem_ids, int stage, StageReuse reuse) {
  // slit -> layout position of the two-level shutter guarding it
  std::unordered_map<int, int> guard_position;
  for (int id : shutter_subsystem_ids) {
    const int pos = state.subsystem_position(id);
    if (pos < 0)
      throw ConfigError("dual reflection: shutter subsystem " +
                        std::to_string(id) + " not present in state");
    const SubsystemInfo& info = state.layout()[pos];
    if (info.role != SubsystemRole::DualShutter)
      throw ConfigError("dual reflection: subsystem " + std::to_string(id) +
                        " is not a two-level shutter");
    if (!guard_position.emplace(info.guarded_slit, pos).second)
      throw ConfigError("dual reflection: slit " +
                        std::to_string(info.guarded_slit) +
                        " guarded by two shutters");
  }

  return apply_controlled_reflection(
      state, photon_subsystem_ids, stage, reuse,
      [&guard_position](const BasisLabel& basis, int slit) {
        const auto it = guard_position.find(slit);
        if (it == guard_position.end()) return false;  // unguarded: open
        return basis[it->second].kind == ModeKind::ShutterClosed;
      });
}

}  // namespace qshutter
