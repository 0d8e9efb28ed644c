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

#ifndef QSHUTTER_MODEL_HPP
#define QSHUTTER_MODEL_HPP

#include <span>
#include <vector>

#include "qshutter/sparse_state.hpp"
#include "qshutter/types.hpp"

namespace qshutter {

//============================================================================
// State families
//============================================================================
//
// Every shutter state used here belongs to the one-parameter family
//
//   (sum_{i=1..N} |i> +- sqrt(N-m) |N+1>) / sqrt(2N-m)
//
// with N slits and peel index m.  m=1 is the state that closes all N
// slits for one photon; the staged variants m=2,3,... peel one photon
// off a multi-photon wavefront each.  Pre and Post differ by the sign
// of the |N+1> component.

enum class SelectionSign { Pre, Post };

struct ShutterSpec {
  int slit_count = 2;  // N >= 2
  int peel_index = 1;  // 1 <= m <= N
  SelectionSign sign = SelectionSign::Pre;

  void validate() const;
};

struct PhotonAmplitudes {
  std::vector<Complex> alphas;

  // Accepts any nonzero vector and rescales it to unit norm.
  static PhotonAmplitudes normalized(std::vector<Complex> values);

  // Unit norm within kInputNormTolerance, at least two entries.
  void validate() const;
  int slit_count() const { return static_cast<int>(alphas.size()); }
};

// Stage s of a K-photon cascade carries peel index m = K-s+1, so the
// photons meet shutters with m = K, ..., 2, 1 and the m=1 shutter sits
// farthest downstream.
struct CascadeLayout {
  int photon_capacity = 1;  // K
  std::vector<ShutterSpec> stages;
};

//============================================================================
// Builders
//============================================================================

// (sum_i |i> +- sqrt(N-m)|N+1>) / sqrt(2N-m) over a ShutterLocation
// subsystem.  The degenerate m=N case stores no |N+1> key at all.
SparseState build_shutter_state(const ShutterSpec& spec, int subsystem_id);

// sum_i alpha_i |in_i> over one photon subsystem.
SparseState build_photon_state(const PhotonAmplitudes& alphas, int photon_id,
                               int stage_count = 1);

// sum_i alpha_i |in_i>...|in_i>: all K photons bunched at the same slit.
SparseState build_correlated_photons(const PhotonAmplitudes& alphas,
                                     int photon_count, int first_photon_id,
                                     int stage_count = 1);

// (|in_j>|in_k> + |in_k>|in_j>) / sqrt(2) for two distinct slits; the
// argument order does not matter.
SparseState build_symmetric_pair(int slit_j, int slit_k, int slit_count,
                                 int first_photon_id, int stage_count = 1);

// Arbitrary (possibly entangled) K-photon state over incoming modes from a
// row-major N^K coefficient tensor; the last photon's slit varies fastest.
SparseState build_general_photons(std::span<const Complex> coefficients,
                                  int slit_count, int photon_count,
                                  int first_photon_id, int stage_count = 1);

// N two-level shutters, one per slit:
//   (sum_i |op>_i prod_{j!=i} |cl>_j +- sqrt(N-1) prod_j |cl>_j) / sqrt(2N-1)
// Shutter subsystem ids are first_shutter_id..first_shutter_id+N-1 and
// guard slits 1..N in order.
SparseState build_dual_state(int slit_count, SelectionSign sign,
                             int first_shutter_id = 1);

CascadeLayout build_cascade(int slit_count, int photon_capacity);

//============================================================================
// Controlled reflection
//============================================================================

enum class StageReuse { Forbid, Allow };

// Basis permutation of the photon subsystems, controlled by the shutter:
// on every composite label whose shutter sits at slot i <= N, each photon
// label swaps PhotonIn(i) <-> PhotonRef(i, stage).  A shutter at |N+1>
// leaves everything unchanged, as do photons reflected at other stages.
// Norm is preserved exactly (no arithmetic on amplitudes).
//
// Reusing a stage whose reflected labels are already populated would
// un-reflect photons, so it is rejected unless explicitly allowed (the
// double-application identity only makes sense in tests).
SparseState apply_reflection_interaction(const SparseState& state,
                                         int shutter_subsystem_id,
                                         std::span<const int> photon_subsystem_ids,
                                         int stage,
                                         StageReuse reuse = StageReuse::Forbid);

// Same permutation with the dual control: the two-level shutter guarding
// slit i reflects PhotonIn(i) when closed and passes it when open.
SparseState apply_dual_reflection_interaction(
    const SparseState& state, std::span<const int> shutter_subsystem_ids,
    std::span<const int> photon_subsystem_ids, int stage,
    StageReuse reuse = StageReuse::Forbid);

}  // namespace qshutter

#endif  // QSHUTTER_MODEL_HPP
