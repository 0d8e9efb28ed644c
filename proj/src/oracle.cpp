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

#include "qshutter/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>

namespace qshutter::oracle {

namespace {

enum class AxisKind { Shutter, Dual, Photon };

struct Axis {
  AxisKind kind;
  int slit_count;
  int stage_capacity;  // photons only

  std::int64_t dim() const {
    switch (kind) {
      case AxisKind::Shutter:
        return slit_count + 1;
      case AxisKind::Dual:
        return 2;
      case AxisKind::Photon:
        return static_cast<std::int64_t>(slit_count) * (1 + stage_capacity);
    }
    return 0;
  }
};

struct System {
  std::vector<Axis> axes;
  std::vector<std::int64_t> dims;
  std::vector<std::int64_t> strides;  // row-major, axis 0 most significant
  std::int64_t total = 1;

  explicit System(std::vector<Axis> in) : axes(std::move(in)) {
    dims.reserve(axes.size());
    for (const Axis& axis : axes) dims.push_back(axis.dim());
    strides.assign(dims.size(), 1);
    for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
      strides[i] = strides[i + 1] * dims[i + 1];
    for (std::int64_t d : dims) total *= d;
    if (total > kDimensionGuard)
      throw ConfigError("oracle: joint dimension " + std::to_string(total) +
                        " exceeds the guard");
  }

  std::int64_t digit(std::int64_t index, std::size_t axis) const {
    return (index / strides[axis]) % dims[axis];
  }
};

std::vector<Complex> shutter_coefficients(int n, int m, int sign) {
  std::vector<Complex> v(n + 1, Complex{0.0, 0.0});
  const double inv_norm = 1.0 / std::sqrt(static_cast<double>(2 * n - m));
  for (int i = 0; i < n; ++i) v[i] = Complex{inv_norm, 0.0};
  v[n] = Complex{sign * std::sqrt(static_cast<double>(n - m)) * inv_norm, 0.0};
  return v;
}

std::vector<Complex> kron(std::span<const Complex> a,
                          std::span<const Complex> b) {
  std::vector<Complex> out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

// Photon digit rule: digit = stage*N + (slit-1); stage 0 = incoming.
std::int64_t photon_digit_swap(std::int64_t digit, int n, int stage,
                               std::int64_t control_slit0) {
  const std::int64_t digit_stage = digit / n;
  const std::int64_t slit0 = digit % n;
  if (slit0 != control_slit0) return digit;
  if (digit_stage == 0) return static_cast<std::int64_t>(stage) * n + slit0;
  if (digit_stage == stage) return slit0;
  return digit;
}

// Controlled-reflection index map.  `control_slit0` decides, per source
// index, which slit reflects (-1: none).
std::vector<std::int64_t> build_permutation(
    const System& system, const std::vector<std::size_t>& photon_axes,
    int stage, const std::function<std::int64_t(std::int64_t)>& control_slit0) {
  std::vector<std::int64_t> perm(system.total);
  for (std::int64_t g = 0; g < system.total; ++g) {
    const std::int64_t control = control_slit0(g);
    std::int64_t target = g;
    if (control >= 0) {
      for (std::size_t axis : photon_axes) {
        const std::int64_t d = system.digit(g, axis);
        const std::int64_t swapped =
            photon_digit_swap(d, system.axes[axis].slit_count, stage, control);
        target += (swapped - d) * system.strides[axis];
      }
    }
    perm[g] = target;
  }
  return perm;
}

std::vector<Complex> apply_permutation(const std::vector<std::int64_t>& perm,
                                       std::span<const Complex> v) {
  std::vector<Complex> out(v.size());
  for (std::size_t g = 0; g < v.size(); ++g) out[perm[g]] = v[g];
  return out;
}

// Projects the leading `count` axes onto `onto` (a joint vector over those
// axes).  Returns probability and the renormalized remainder.
std::pair<double, std::vector<Complex>> project_leading(
    const System& system, std::span<const Complex> v, std::size_t count,
    std::span<const Complex> onto) {
  std::int64_t lead = 1;
  for (std::size_t i = 0; i < count; ++i) lead *= system.dims[i];
  const std::int64_t rest = system.total / lead;

  std::vector<Complex> out(rest, Complex{0.0, 0.0});
  for (std::int64_t q = 0; q < lead; ++q) {
    const Complex weight = std::conj(onto[q]);
    if (weight == Complex{0.0, 0.0}) continue;
    for (std::int64_t r = 0; r < rest; ++r) out[r] += weight * v[q * rest + r];
  }
  double probability = 0.0;
  for (const Complex& value : out) probability += std::norm(value);
  if (probability < kZeroProbabilityThreshold)
    throw PostSelectionImpossible(probability,
                                  "oracle: post-selection probability " +
                                      std::to_string(probability) +
                                      " below threshold");
  const double inv = 1.0 / std::sqrt(probability);
  for (Complex& value : out) value *= inv;
  return {probability, std::move(out)};
}

// Projects the trailing axes (jointly) onto `onto`; used for the leak
// residual where the photons sit at the end of the layout.
std::pair<double, std::vector<Complex>> project_trailing(
    const System& system, std::span<const Complex> v, std::size_t lead_count,
    std::span<const Complex> onto) {
  std::int64_t lead = 1;
  for (std::size_t i = 0; i < lead_count; ++i) lead *= system.dims[i];
  const std::int64_t rest = system.total / lead;

  std::vector<Complex> out(lead, Complex{0.0, 0.0});
  for (std::int64_t q = 0; q < lead; ++q)
    for (std::int64_t r = 0; r < rest; ++r)
      out[q] += std::conj(onto[r]) * v[q * rest + r];
  double probability = 0.0;
  for (const Complex& value : out) probability += std::norm(value);
  if (probability < kZeroProbabilityThreshold)
    throw PostSelectionImpossible(probability,
                                  "oracle: residual probability below threshold");
  const double inv = 1.0 / std::sqrt(probability);
  for (Complex& value : out) value *= inv;
  return {probability, std::move(out)};
}

// transmitted / reflected / mixed classification of a photon-only system.
void classify(const System& photons, std::span<const Complex> v,
              DenseResult& result) {
  double all_in = 0.0, all_ref = 0.0, mixed = 0.0;
  for (std::int64_t g = 0; g < photons.total; ++g) {
    const double weight = std::norm(v[g]);
    if (weight == 0.0) continue;
    std::size_t incoming = 0;
    for (std::size_t axis = 0; axis < photons.axes.size(); ++axis)
      if (photons.digit(g, axis) / photons.axes[axis].slit_count == 0)
        ++incoming;
    if (incoming == photons.axes.size())
      all_in += weight;
    else if (incoming == 0)
      all_ref += weight;
    else
      mixed += weight;
  }
  result.all_transmitted_probability = all_in;
  result.reflected_probability = all_ref;
  result.mixed_probability = mixed;
  result.transmitted_probability = all_in + mixed;
}

DenseState to_dense_state(const System& system, std::vector<Complex> v) {
  DenseState state;
  state.dims = system.dims;
  state.amplitudes = std::move(v);
  return state;
}

}  // namespace

std::vector<std::int64_t> reflection_permutation(int slit_count,
                                                 int photon_count,
                                                 int stage_capacity,
                                                 int stage) {
  std::vector<Axis> axes{{AxisKind::Shutter, slit_count, 0}};
  std::vector<std::size_t> photon_axes;
  for (int k = 0; k < photon_count; ++k) {
    axes.push_back({AxisKind::Photon, slit_count, stage_capacity});
    photon_axes.push_back(1 + k);
  }
  const System system(std::move(axes));
  return build_permutation(system, photon_axes, stage,
                           [&system, slit_count](std::int64_t g) {
                             const std::int64_t slot0 = system.digit(g, 0);
                             return slot0 < slit_count ? slot0
                                                       : std::int64_t{-1};
                           });
}

std::vector<std::int64_t> dual_reflection_permutation(int slit_count) {
  std::vector<Axis> axes;
  for (int i = 0; i < slit_count; ++i) axes.push_back({AxisKind::Dual, slit_count, 0});
  axes.push_back({AxisKind::Photon, slit_count, 1});
  const System system(std::move(axes));
  const std::vector<std::size_t> photon_axes{
      static_cast<std::size_t>(slit_count)};

  // The photon digit itself selects which shutter is consulted, so the
  // "control slit" callback cannot be used; build the map directly.
  std::vector<std::int64_t> perm(system.total);
  for (std::int64_t g = 0; g < system.total; ++g) {
    const std::size_t axis = photon_axes[0];
    const std::int64_t d = system.digit(g, axis);
    const std::int64_t slit0 = d % slit_count;
    std::int64_t target = g;
    if (system.digit(g, slit0) == 1) {  // guarding shutter closed
      const std::int64_t swapped = photon_digit_swap(d, slit_count, 1, slit0);
      target += (swapped - d) * system.strides[axis];
    }
    perm[g] = target;
  }
  return perm;
}

namespace {

DenseResult finish_single_shutter(const System& joint, System photons,
                                  std::vector<Complex> state, int slit_count,
                                  std::optional<LeakInfo> leak = std::nullopt) {
  const std::vector<Complex> post = shutter_coefficients(slit_count, 1, -1);
  auto [probability, conditional] = project_leading(joint, state, 1, post);

  DenseResult result;
  result.success_probability = probability;
  result.per_stage_probabilities = {probability};
  classify(photons, conditional, result);
  result.conditional_photon_state = to_dense_state(photons, std::move(conditional));
  result.leak = std::move(leak);
  return result;
}

}  // namespace

DenseResult dense_single(int slit_count, std::span<const Complex> alphas) {
  const int n = slit_count;
  System joint({{AxisKind::Shutter, n, 0}, {AxisKind::Photon, n, 1}});
  System photons({{AxisKind::Photon, n, 1}});

  std::vector<Complex> photon(2 * n, Complex{0.0, 0.0});
  for (int i = 0; i < n; ++i) photon[i] = alphas[i];
  std::vector<Complex> state =
      kron(shutter_coefficients(n, 1, +1), photon);

  const auto perm = reflection_permutation(n, 1, 1, 1);
  state = apply_permutation(perm, state);
  return finish_single_shutter(joint, std::move(photons), std::move(state), n);
}

DenseResult dense_correlated(int slit_count, int photon_count,
                             std::span<const Complex> alphas) {
  const int n = slit_count;
  std::vector<Axis> axes{{AxisKind::Shutter, n, 0}};
  std::vector<Axis> photon_axes_spec;
  for (int k = 0; k < photon_count; ++k) {
    axes.push_back({AxisKind::Photon, n, 1});
    photon_axes_spec.push_back({AxisKind::Photon, n, 1});
  }
  System joint(std::move(axes));
  System photons(std::move(photon_axes_spec));

  std::vector<Complex> bunched(photons.total, Complex{0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    std::int64_t index = 0;
    for (std::size_t axis = 0; axis < photons.axes.size(); ++axis)
      index += static_cast<std::int64_t>(i) * photons.strides[axis];
    bunched[index] = alphas[i];
  }
  std::vector<Complex> state = kron(shutter_coefficients(n, 1, +1), bunched);

  const auto perm = reflection_permutation(n, photon_count, 1, 1);
  state = apply_permutation(perm, state);
  return finish_single_shutter(joint, std::move(photons), std::move(state), n);
}

DenseResult dense_leak(int slit_count, int slit_j, int slit_k) {
  const int n = slit_count;
  System joint({{AxisKind::Shutter, n, 0},
                {AxisKind::Photon, n, 1},
                {AxisKind::Photon, n, 1}});
  System photons({{AxisKind::Photon, n, 1}, {AxisKind::Photon, n, 1}});

  std::vector<Complex> pair(photons.total, Complex{0.0, 0.0});
  const double amp = 1.0 / std::sqrt(2.0);
  pair[(slit_j - 1) * photons.strides[0] + (slit_k - 1)] = Complex{amp, 0.0};
  pair[(slit_k - 1) * photons.strides[0] + (slit_j - 1)] = Complex{amp, 0.0};
  std::vector<Complex> state = kron(shutter_coefficients(n, 1, +1), pair);

  const auto perm = reflection_permutation(n, 2, 1, 1);
  state = apply_permutation(perm, state);

  // Shutter residual correlated with the pair passing untouched.
  auto [undisturbed_weight, residual] =
      project_trailing(joint, state, 1, pair);
  const std::vector<Complex> post = shutter_coefficients(n, 1, -1);
  Complex overlap{0.0, 0.0};
  for (int s = 0; s <= n; ++s) overlap += std::conj(post[s]) * residual[s];

  DenseResult result = finish_single_shutter(joint, std::move(photons),
                                             std::move(state), n);
  LeakInfo leak;
  leak.conditional_both_transmitted = result.all_transmitted_probability;
  leak.unconditional_both_transmitted =
      result.success_probability * result.all_transmitted_probability;
  leak.undisturbed_weight = undisturbed_weight;
  leak.residual_overlap = overlap;
  result.leak = leak;
  return result;
}

DenseResult dense_dual(int slit_count, std::span<const Complex> alphas) {
  const int n = slit_count;
  std::vector<Axis> axes;
  for (int i = 0; i < n; ++i) axes.push_back({AxisKind::Dual, n, 0});
  axes.push_back({AxisKind::Photon, n, 1});
  System joint(std::move(axes));
  System photons({{AxisKind::Photon, n, 1}});
  System shutters(std::vector<Axis>(n, Axis{AxisKind::Dual, n, 0}));

  // Pre/post joint shutter vectors over the N two-level axes.
  const auto dual_vector = [&](int sign) {
    std::vector<Complex> v(shutters.total, Complex{0.0, 0.0});
    const double inv_norm = 1.0 / std::sqrt(static_cast<double>(2 * n - 1));
    for (int open = 0; open < n; ++open) {
      std::int64_t index = 0;
      for (int i = 0; i < n; ++i)
        if (i != open) index += shutters.strides[i];  // closed digit = 1
      v[index] += Complex{inv_norm, 0.0};
    }
    v[shutters.total - 1] +=  // all digits 1: everything closed
        Complex{sign * std::sqrt(static_cast<double>(n - 1)) * inv_norm, 0.0};
    return v;
  };

  std::vector<Complex> photon(2 * n, Complex{0.0, 0.0});
  for (int i = 0; i < n; ++i) photon[i] = alphas[i];
  std::vector<Complex> state = kron(dual_vector(+1), photon);

  const auto perm = dual_reflection_permutation(n);
  state = apply_permutation(perm, state);

  auto [probability, conditional] =
      project_leading(joint, state, n, dual_vector(-1));

  DenseResult result;
  result.success_probability = probability;
  result.per_stage_probabilities = {probability};
  classify(photons, conditional, result);
  result.conditional_photon_state =
      to_dense_state(photons, std::move(conditional));
  return result;
}

DenseResult dense_cascade(int slit_count, int photon_count,
                          std::span<const Complex> coefficients) {
  const int n = slit_count;
  const int k = photon_count;
  if (k < 1 || k > n) throw ConfigError("oracle cascade: K must not exceed N");

  // Guard the joint dimension before any vector is materialized.
  {
    std::int64_t joint_dim = 1;
    for (int s = 0; s < k; ++s) joint_dim *= n + 1;
    for (int p = 0; p < k; ++p) joint_dim *= static_cast<std::int64_t>(n) * (1 + k);
    if (joint_dim > kDimensionGuard)
      throw ConfigError("oracle: joint dimension " + std::to_string(joint_dim) +
                        " exceeds the guard");
  }

  std::vector<Axis> photon_axes_spec;
  for (int p = 0; p < k; ++p)
    photon_axes_spec.push_back({AxisKind::Photon, n, k});
  System photons(std::move(photon_axes_spec));
  std::int64_t tensor_size = 1;
  for (int p = 0; p < k; ++p) tensor_size *= n;
  if (static_cast<std::int64_t>(coefficients.size()) != tensor_size)
    throw ConfigError("oracle cascade: coefficient tensor has wrong size");

  // Incoming coefficient tensor embedded into the staged photon space.
  std::vector<Complex> photon_state(photons.total, Complex{0.0, 0.0});
  {
    std::vector<int> digits(k, 0);
    for (std::size_t flat = 0; flat < coefficients.size(); ++flat) {
      std::size_t rest = flat;
      std::int64_t index = 0;
      for (int p = k - 1; p >= 0; --p) {
        digits[p] = static_cast<int>(rest % n);
        rest /= n;
      }
      for (int p = 0; p < k; ++p)
        index += static_cast<std::int64_t>(digits[p]) * photons.strides[p];
      photon_state[index] = coefficients[flat];
    }
  }

  // Shutters kroneckered in stage order (m = K..1), then the photons.
  std::vector<Complex> state = shutter_coefficients(n, k, +1);
  for (int s = 2; s <= k; ++s)
    state = kron(state, shutter_coefficients(n, k - s + 1, +1));
  state = kron(state, photon_state);

  DenseResult result;
  for (int stage = 1; stage <= k; ++stage) {
    // Axes still present: shutters stage..K, then the K photons.
    std::vector<Axis> current;
    for (int s = stage; s <= k; ++s) current.push_back({AxisKind::Shutter, n, 0});
    for (int p = 0; p < k; ++p) current.push_back({AxisKind::Photon, n, k});
    System system(std::move(current));

    std::vector<std::size_t> photon_axes;
    for (int p = 0; p < k; ++p)
      photon_axes.push_back(static_cast<std::size_t>(k - stage + 1 + p));
    const auto perm = build_permutation(
        system, photon_axes, stage, [&system, n](std::int64_t g) {
          const std::int64_t slot0 = system.digit(g, 0);
          return slot0 < n ? slot0 : std::int64_t{-1};
        });
    state = apply_permutation(perm, state);

    const int m = k - stage + 1;
    try {
      auto [probability, remainder] = project_leading(
          system, state, 1, shutter_coefficients(n, m, -1));
      result.per_stage_probabilities.push_back(probability);
      state = std::move(remainder);
    } catch (const PostSelectionImpossible& failure) {
      throw PostSelectionImpossible(failure.raw_probability(),
                                    "oracle cascade: stage " +
                                        std::to_string(stage) + " failed",
                                    stage);
    }
  }

  result.success_probability =
      std::accumulate(result.per_stage_probabilities.begin(),
                      result.per_stage_probabilities.end(), 1.0,
                      std::multiplies<double>());
  classify(photons, state, result);
  result.conditional_photon_state = to_dense_state(photons, std::move(state));
  return result;
}

double max_deviation(const ScenarioResult& sparse, const DenseResult& dense) {
  double worst = std::abs(sparse.success_probability - dense.success_probability);
  worst = std::max(worst, std::abs(sparse.transmitted_probability -
                                   dense.transmitted_probability));
  worst = std::max(worst, std::abs(sparse.all_transmitted_probability -
                                   dense.all_transmitted_probability));
  worst = std::max(worst, std::abs(sparse.reflected_probability -
                                   dense.reflected_probability));
  worst = std::max(worst,
                   std::abs(sparse.mixed_probability - dense.mixed_probability));

  if (sparse.per_stage_probabilities.size() !=
      dense.per_stage_probabilities.size())
    return 1.0;
  for (std::size_t i = 0; i < sparse.per_stage_probabilities.size(); ++i)
    worst = std::max(worst, std::abs(sparse.per_stage_probabilities[i] -
                                     dense.per_stage_probabilities[i]));

  // Componentwise conditional-state comparison through the shared encoding.
  const SparseState& conditional = sparse.conditional_photon_state;
  const auto& layout = conditional.layout();
  if (layout.size() != dense.conditional_photon_state.dims.size()) return 1.0;
  std::vector<std::int64_t> strides(layout.size(), 1);
  for (int i = static_cast<int>(layout.size()) - 2; i >= 0; --i)
    strides[i] =
        strides[i + 1] * dense.conditional_photon_state.dims[i + 1];
  for (std::size_t i = 0; i < layout.size(); ++i)
    if (layout[i].dimension() != dense.conditional_photon_state.dims[i])
      return 1.0;

  std::vector<Complex> sparse_dense(dense.conditional_photon_state.amplitudes.size(),
                                    Complex{0.0, 0.0});
  for (const auto& [basis, value] : conditional.amplitudes()) {
    std::int64_t index = 0;
    for (std::size_t i = 0; i < basis.size(); ++i)
      index += layout[i].basis_index(basis[i]) * strides[i];
    sparse_dense[index] = value;
  }
  for (std::size_t g = 0; g < sparse_dense.size(); ++g)
    worst = std::max(worst,
                     std::abs(sparse_dense[g] -
                              dense.conditional_photon_state.amplitudes[g]));

  if (sparse.leak.has_value() != dense.leak.has_value()) return 1.0;
  if (sparse.leak) {
    worst = std::max(worst, std::abs(sparse.leak->conditional_both_transmitted -
                                     dense.leak->conditional_both_transmitted));
    worst = std::max(worst,
                     std::abs(sparse.leak->unconditional_both_transmitted -
                              dense.leak->unconditional_both_transmitted));
    worst = std::max(worst, std::abs(sparse.leak->undisturbed_weight -
                                     dense.leak->undisturbed_weight));
    worst = std::max(worst, std::abs(sparse.leak->residual_overlap -
                                     dense.leak->residual_overlap));
  }
  return worst;
}

std::vector<BranchRow> enumerate_branch_table(int slit_count,
                                              int photon_count) {
  const int n = slit_count;
  const int k = photon_count;
  const std::vector<Complex> pre = shutter_coefficients(n, 1, +1);
  const std::vector<Complex> post = shutter_coefficients(n, 1, -1);

  std::vector<BranchRow> rows;
  std::vector<int> assignment(k, 1);
  while (true) {
    // Group the N+1 shutter slots by the reflection outcome they cause.
    std::map<std::vector<bool>, std::pair<double, double>> outcomes;
    for (int slot = 1; slot <= n + 1; ++slot) {
      std::vector<bool> reflected(k, false);
      if (slot <= n)
        for (int p = 0; p < k; ++p) reflected[p] = assignment[p] == slot;
      auto& [norm_sq, amplitude] = outcomes[reflected];
      norm_sq += std::norm(pre[slot - 1]);
      amplitude += (std::conj(post[slot - 1]) * pre[slot - 1]).real();
    }
    for (const auto& [reflected, figures] : outcomes) {
      BranchRow row;
      row.assignment = assignment;
      row.reflected = reflected;
      row.branch_norm = std::sqrt(figures.first);
      row.post_amplitude = figures.second;
      row.normalized_overlap =
          row.branch_norm > 0.0 ? figures.second / row.branch_norm : 0.0;
      rows.push_back(std::move(row));
    }
    int p = k - 1;
    while (p >= 0 && assignment[p] == n) assignment[p--] = 1;
    if (p < 0) break;
    ++assignment[p];
  }
  return rows;
}

std::string branch_table_tsv(int slit_count, int photon_count) {
  std::string out =
      "assignment\toutcome\tbranch_norm\tpost_amplitude\tnormalized_overlap\n";
  char buffer[96];
  for (const BranchRow& row : enumerate_branch_table(slit_count, photon_count)) {
    std::string assignment, outcome;
    for (std::size_t p = 0; p < row.assignment.size(); ++p) {
      if (p > 0) {
        assignment += ",";
        outcome += ",";
      }
      assignment += std::to_string(row.assignment[p]);
      outcome += row.reflected[p] ? "refl" : "pass";
    }
    std::snprintf(buffer, sizeof(buffer), "%.17g\t%.17g\t%.17g",
                  row.branch_norm, row.post_amplitude, row.normalized_overlap);
    out += assignment + "\t" + outcome + "\t" + buffer + "\n";
  }
  return out;
}

}  // namespace qshutter::oracle
