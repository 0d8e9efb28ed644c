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

#ifndef QSHUTTER_ORACLE_HPP
#define QSHUTTER_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qshutter/scenarios.hpp"

namespace qshutter::oracle {

//============================================================================
// Dense brute-force reference
//============================================================================
//
// Re-derives every scenario number on flat complex vectors: states are
// built digit-by-digit from the coefficient formulas, the interaction is
// an explicit permutation of dense indices constructed from the control
// rule, and post-selection is a dense partial inner product.  Nothing
// here calls into the sparse engine; the two sides share only the basis
// index encoding (shutter slot-1; dual open=0/closed=1; photon
// stage*N + slit-1 with stage 0 = incoming; first subsystem most
// significant).  Single-threaded, small sizes only.

inline constexpr std::int64_t kDimensionGuard = std::int64_t{1} << 20;

struct DenseState {
  std::vector<std::int64_t> dims;  // per subsystem, layout order
  std::vector<Complex> amplitudes; // mixed radix over dims

  std::int64_t dimension() const {
    std::int64_t total = 1;
    for (std::int64_t d : dims) total *= d;
    return total;
  }
};

struct DenseResult {
  double success_probability = 0.0;
  double transmitted_probability = 0.0;
  double all_transmitted_probability = 0.0;
  double reflected_probability = 0.0;
  double mixed_probability = 0.0;
  std::vector<double> per_stage_probabilities;
  DenseState conditional_photon_state;  // photon subsystems only
  std::optional<LeakInfo> leak;
};

DenseResult dense_single(int slit_count, std::span<const Complex> alphas);
DenseResult dense_dual(int slit_count, std::span<const Complex> alphas);
DenseResult dense_correlated(int slit_count, int photon_count,
                             std::span<const Complex> alphas);
DenseResult dense_leak(int slit_count, int slit_j, int slit_k);

// `coefficients` is the row-major N^K tensor of incoming-slit amplitudes.
DenseResult dense_cascade(int slit_count, int photon_count,
                          std::span<const Complex> coefficients);

// Index maps of the controlled reflection, exposed for the involution and
// bijection checks.  Layout: one location shutter then K photons with the
// given stage capacity; dual: N two-level shutters then one photon.
std::vector<std::int64_t> reflection_permutation(int slit_count,
                                                 int photon_count,
                                                 int stage_capacity,
                                                 int stage);
std::vector<std::int64_t> dual_reflection_permutation(int slit_count);

// Worst absolute disagreement between the sparse pipeline result and the
// dense one, across probabilities, per-stage values, conditional-state
// amplitudes and leak figures.
double max_deviation(const ScenarioResult& sparse, const DenseResult& dense);

//============================================================================
// Branch table
//============================================================================
//
// Expands the single-shutter interaction branch by branch: for every
// assignment of K photons to slits and every reachable reflection
// outcome, the shutter component correlated with that outcome, its
// post-selection amplitude sum(c1_i * c2_i) over contributing slots, and
// the overlap of the normalized component with the post-selected state.
// The "all passed" rows of the one-photon table carry amplitude exactly 0.

struct BranchRow {
  std::vector<int> assignment;  // slit per photon, 1-based
  std::vector<bool> reflected;  // outcome per photon
  double branch_norm = 0.0;
  double post_amplitude = 0.0;
  double normalized_overlap = 0.0;
};

std::vector<BranchRow> enumerate_branch_table(int slit_count,
                                              int photon_count);
std::string branch_table_tsv(int slit_count, int photon_count);

}  // namespace qshutter::oracle

#endif  // QSHUTTER_ORACLE_HPP
