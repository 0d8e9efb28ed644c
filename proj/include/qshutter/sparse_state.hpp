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

#ifndef QSHUTTER_SPARSE_STATE_HPP
#define QSHUTTER_SPARSE_STATE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qshutter/types.hpp"

namespace qshutter {

//============================================================================
// SparseState: complex amplitudes over labeled composite basis states
//============================================================================
//
// A joint ket over an ordered list of subsystems.  Keys are tuples of
// ModeLabel, one per subsystem in layout order; a missing key is an exact
// zero.  Physical states occupy a tiny support even when the dense joint
// dimension runs into the millions, so everything is map-based; the dense
// view exists only in the oracle.
//
// States are value types.  All operations return fresh states; nothing is
// mutated after construction, which makes scenario runs safe to evaluate
// in parallel.

using BasisLabel = std::vector<ModeLabel>;

struct BasisLabelHash {
  std::size_t operator()(const BasisLabel& basis) const noexcept;
};

class SparseState {
 public:
  using AmplitudeMap = std::unordered_map<BasisLabel, Complex, BasisLabelHash>;

  SparseState() = default;
  explicit SparseState(std::vector<SubsystemInfo> layout);

  // State with no subsystems; its lone amplitude acts as a scalar.
  static SparseState scalar(Complex value);

  const std::vector<SubsystemInfo>& layout() const { return layout_; }
  const AmplitudeMap& amplitudes() const { return amplitudes_; }
  std::size_t term_count() const { return amplitudes_.size(); }
  bool empty() const { return amplitudes_.empty(); }

  // Position of a subsystem id in the layout, -1 if absent.
  int subsystem_position(int subsystem_id) const;

  // Adds `value` into the coefficient of `basis`.  The label tuple must
  // match the layout; results below the pruning threshold are dropped.
  void accumulate(const BasisLabel& basis, Complex value);

  Complex amplitude(const BasisLabel& basis) const;

  double norm_sq() const;
  double norm() const;

  // Drops every stored amplitude with magnitude < kPruneThreshold.
  void prune();

  // Terms sorted by the per-subsystem basis indices; the canonical order
  // used by rendering, serialization and equality checks.
  std::vector<std::pair<BasisLabel, Complex>> sorted_terms() const;

  void validate_basis(const BasisLabel& basis) const;

 private:
  std::vector<SubsystemInfo> layout_;
  AmplitudeMap amplitudes_;
};

//============================================================================
// Elementary operations
//============================================================================

// Kronecker juxtaposition |a>|b>.  Subsystem ids must be disjoint.
SparseState tensor(const SparseState& a, const SparseState& b);

// <a|b>, conjugate-linear in `a`.  Layouts must match exactly.
Complex inner_product(const SparseState& a, const SparseState& b);

SparseState add(const SparseState& a, const SparseState& b);
SparseState scale(const SparseState& a, Complex factor);

// Projects the named subsystem onto the normalized single-subsystem state
// `onto`.  Returns the outcome probability and the renormalized remainder
// over the other subsystems.  Throws PostSelectionImpossible when the
// probability falls below kZeroProbabilityThreshold.
std::pair<double, SparseState> project_subsystem(const SparseState& state,
                                                 int subsystem_id,
                                                 const SparseState& onto);

// Same, projecting several subsystems at once onto a joint state; `onto`'s
// layout selects which subsystems of `state` are consumed.
std::pair<double, SparseState> post_select(const SparseState& state,
                                           const SparseState& onto);

// Largest |a_k - b_k| over the union of supports.  Layouts must match.
double max_amplitude_delta(const SparseState& a, const SparseState& b);

// |<a|b>|^2; the global-phase-free comparison used for conditional states.
double fidelity(const SparseState& a, const SparseState& b);

// Canonical text rendering: one `<label-tuple> <re> <im>` line per basis
// label in canonical order, 17 significant digits.
std::string to_text(const SparseState& state);

}  // namespace qshutter

#endif  // QSHUTTER_SPARSE_STATE_HPP
