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

#include "qshutter/sparse_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

namespace qshutter {

namespace {

// 64-bit mix (splitmix64 finalizer); good enough for label tuples.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void require_same_layout(const SparseState& a, const SparseState& b,
                         const char* op) {
  if (a.layout() != b.layout())
    throw ConfigError(std::string(op) + ": subsystem layouts differ");
}

}  // namespace

std::string label_text(const ModeLabel& label) {
  switch (label.kind) {
    case ModeKind::ShutterAt:
      return "s" + std::to_string(label.subsystem) + ":" +
             std::to_string(label.slit);
    case ModeKind::ShutterOpen:
      return "s" + std::to_string(label.subsystem) + ":op";
    case ModeKind::ShutterClosed:
      return "s" + std::to_string(label.subsystem) + ":cl";
    case ModeKind::PhotonIn:
      return "p" + std::to_string(label.subsystem) + ":in" +
             std::to_string(label.slit);
    case ModeKind::PhotonRef:
      return "p" + std::to_string(label.subsystem) + ":ref" +
             std::to_string(label.slit) + "@" + std::to_string(label.stage);
  }
  return "?";
}

std::size_t BasisLabelHash::operator()(const BasisLabel& basis) const noexcept {
  std::uint64_t h = 0x6a09e667f3bcc909ull;
  for (const ModeLabel& label : basis) {
    std::uint64_t packed = static_cast<std::uint32_t>(label.subsystem);
    packed = (packed << 8) | static_cast<std::uint64_t>(label.kind);
    packed = (packed << 16) | static_cast<std::uint16_t>(label.slit);
    packed = (packed << 16) | static_cast<std::uint16_t>(label.stage);
    h = mix64(h ^ packed);
  }
  return static_cast<std::size_t>(h);
}

SparseState::SparseState(std::vector<SubsystemInfo> layout)
    : layout_(std::move(layout)) {
  std::unordered_set<int> seen;
  for (const SubsystemInfo& info : layout_) {
    if (info.slit_count < 1 && info.role != SubsystemRole::DualShutter)
      throw ConfigError("SparseState: subsystem needs at least one slit");
    if (!seen.insert(info.id).second)
      throw ConfigError("SparseState: duplicate subsystem id " +
                        std::to_string(info.id));
  }
}

SparseState SparseState::scalar(Complex value) {
  SparseState state;
  state.accumulate({}, value);
  return state;
}

int SparseState::subsystem_position(int subsystem_id) const {
  for (std::size_t i = 0; i < layout_.size(); ++i)
    if (layout_[i].id == subsystem_id) return static_cast<int>(i);
  return -1;
}

void SparseState::validate_basis(const BasisLabel& basis) const {
  if (basis.size() != layout_.size())
    throw ConfigError("SparseState: label tuple arity " +
                      std::to_string(basis.size()) + " does not match layout " +
                      std::to_string(layout_.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!layout_[i].accepts(basis[i]))
      throw ConfigError("SparseState: label " + label_text(basis[i]) +
                        " invalid for subsystem " +
                        std::to_string(layout_[i].id));
  }
}

void SparseState::accumulate(const BasisLabel& basis, Complex value) {
  validate_basis(basis);
  auto it = amplitudes_.find(basis);
  if (it == amplitudes_.end()) {
    if (std::abs(value) >= kPruneThreshold) amplitudes_.emplace(basis, value);
    return;
  }
  it->second += value;
  if (std::abs(it->second) < kPruneThreshold) amplitudes_.erase(it);
}

Complex SparseState::amplitude(const BasisLabel& basis) const {
  auto it = amplitudes_.find(basis);
  return it == amplitudes_.end() ? Complex{0.0, 0.0} : it->second;
}

double SparseState::norm_sq() const {
  double total = 0.0;
  for (const auto& [basis, value] : amplitudes_) total += std::norm(value);
  return total;
}

double SparseState::norm() const { return std::sqrt(norm_sq()); }

void SparseState::prune() {
  for (auto it = amplitudes_.begin(); it != amplitudes_.end();) {
    if (std::abs(it->second) < kPruneThreshold)
      it = amplitudes_.erase(it);
    else
      ++it;
  }
}

std::vector<std::pair<BasisLabel, Complex>> SparseState::sorted_terms() const {
  std::vector<std::pair<BasisLabel, Complex>> terms(amplitudes_.begin(),
                                                    amplitudes_.end());
  std::sort(terms.begin(), terms.end(),
            [this](const auto& lhs, const auto& rhs) {
              for (std::size_t i = 0; i < layout_.size(); ++i) {
                const std::int64_t li = layout_[i].basis_index(lhs.first[i]);
                const std::int64_t ri = layout_[i].basis_index(rhs.first[i]);
                if (li != ri) return li < ri;
              }
              return false;
            });
  return terms;
}

SparseState tensor(const SparseState& a, const SparseState& b) {
  std::unordered_set<int> ids;
  for (const SubsystemInfo& info : a.layout()) ids.insert(info.id);
  for (const SubsystemInfo& info : b.layout())
    if (ids.count(info.id))
      throw ConfigError("tensor: subsystem id " + std::to_string(info.id) +
                        " present in both factors");

  std::vector<SubsystemInfo> layout = a.layout();
  layout.insert(layout.end(), b.layout().begin(), b.layout().end());
  SparseState result(std::move(layout));
  for (const auto& [basis_a, value_a] : a.amplitudes()) {
    for (const auto& [basis_b, value_b] : b.amplitudes()) {
      BasisLabel basis = basis_a;
      basis.insert(basis.end(), basis_b.begin(), basis_b.end());
      result.accumulate(basis, value_a * value_b);
    }
  }
  return result;
}

Complex inner_product(const SparseState& a, const SparseState& b) {
  require_same_layout(a, b, "inner_product");
  // Iterate the smaller support.
  const SparseState& small = a.term_count() <= b.term_count() ? a : b;
  const SparseState& large = a.term_count() <= b.term_count() ? b : a;
  const bool small_is_a = &small == &a;
  Complex total{0.0, 0.0};
  for (const auto& [basis, value] : small.amplitudes()) {
    const Complex other = large.amplitude(basis);
    if (other == Complex{0.0, 0.0}) continue;
    total += small_is_a ? std::conj(value) * other : std::conj(other) * value;
  }
  return total;
}

SparseState add(const SparseState& a, const SparseState& b) {
  require_same_layout(a, b, "add");
  SparseState result = a;
  for (const auto& [basis, value] : b.amplitudes())
    result.accumulate(basis, value);
  result.prune();
  return result;
}

SparseState scale(const SparseState& a, Complex factor) {
  SparseState result(a.layout());
  for (const auto& [basis, value] : a.amplitudes())
    result.accumulate(basis, value * factor);
  return result;
}

std::pair<double, SparseState> post_select(const SparseState& state,
                                           const SparseState& onto) {
  if (onto.layout().empty())
    throw ConfigError("post_select: target state has no subsystems");
  if (std::abs(onto.norm() - 1.0) > kNormTolerance)
    throw ConfigError("post_select: target state is not normalized");

  // Map each projected subsystem to its position in `state`.
  std::vector<int> positions;
  positions.reserve(onto.layout().size());
  for (const SubsystemInfo& info : onto.layout()) {
    const int pos = state.subsystem_position(info.id);
    if (pos < 0)
      throw ConfigError("post_select: subsystem " + std::to_string(info.id) +
                        " not present in state");
    if (!(state.layout()[pos] == info))
      throw ConfigError("post_select: subsystem " + std::to_string(info.id) +
                        " descriptor mismatch");
    positions.push_back(pos);
  }

  std::vector<bool> keep(state.layout().size(), true);
  for (int pos : positions) keep[pos] = false;
  std::vector<SubsystemInfo> remainder_layout;
  for (std::size_t i = 0; i < state.layout().size(); ++i)
    if (keep[i]) remainder_layout.push_back(state.layout()[i]);

  // Partial inner product <onto| state>, accumulated per remainder label.
  SparseState remainder(remainder_layout);
  for (const auto& [basis, value] : state.amplitudes()) {
    BasisLabel projected;
    projected.reserve(positions.size());
    for (int pos : positions) projected.push_back(basis[pos]);
    const Complex weight = onto.amplitude(projected);
    if (weight == Complex{0.0, 0.0}) continue;
    BasisLabel reduced;
    reduced.reserve(remainder_layout.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (keep[i]) reduced.push_back(basis[i]);
    remainder.accumulate(reduced, std::conj(weight) * value);
  }

  const double probability = remainder.norm_sq();
  if (probability < kZeroProbabilityThreshold)
    throw PostSelectionImpossible(
        probability, "post_select: outcome probability " +
                         std::to_string(probability) + " below threshold");
  SparseState normalized =
      scale(remainder, Complex{1.0 / std::sqrt(probability), 0.0});
  normalized.prune();
  return {probability, std::move(normalized)};
}

std::pair<double, SparseState> project_subsystem(const SparseState& state,
                                                 int subsystem_id,
                                                 const SparseState& onto) {
  if (onto.layout().size() != 1 || onto.layout()[0].id != subsystem_id)
    throw ConfigError(
        "project_subsystem: target must be a single-subsystem state over "
        "subsystem " +
        std::to_string(subsystem_id));
  return post_select(state, onto);
}

double max_amplitude_delta(const SparseState& a, const SparseState& b) {
  require_same_layout(a, b, "max_amplitude_delta");
  double worst = 0.0;
  for (const auto& [basis, value] : a.amplitudes())
    worst = std::max(worst, std::abs(value - b.amplitude(basis)));
  for (const auto& [basis, value] : b.amplitudes())
    worst = std::max(worst, std::abs(value - a.amplitude(basis)));
  return worst;
}

double fidelity(const SparseState& a, const SparseState& b) {
  return std::norm(inner_product(a, b));
}

std::string to_text(const SparseState& state) {
  std::string out;
  for (const auto& [basis, value] : state.sorted_terms()) {
    if (basis.empty()) {
      out += "-";
    } else {
      for (std::size_t i = 0; i < basis.size(); ++i) {
        if (i > 0) out += ",";
        out += label_text(basis[i]);
      }
    }
    out += " " + format_double(value.real()) + " " +
           format_double(value.imag()) + "\n";
  }
  return out;
}

}  // namespace qshutter
