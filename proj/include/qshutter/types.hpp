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

#ifndef QSHUTTER_TYPES_HPP
#define QSHUTTER_TYPES_HPP

#include <complex>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qshutter {

using Complex = std::complex<double>;

//============================================================================
// Numerical policy
//============================================================================

// Amplitudes below this magnitude are dropped after arithmetic passes.
// Far below every tolerance used by the scenario checks (>= 1e-12).
inline constexpr double kPruneThreshold = 1e-15;

// Post-selecting onto an outcome with probability below this raises
// PostSelectionImpossible instead of renormalizing a noise vector.
inline constexpr double kZeroProbabilityThreshold = 1e-14;

// Norm agreement required from state builders and unitary application.
inline constexpr double kNormTolerance = 1e-12;

// Input photon amplitudes may deviate from unit norm by this much before
// an explicit normalize request is required.
inline constexpr double kInputNormTolerance = 1e-6;

//============================================================================
// Errors
//============================================================================

// Misconfigured states, layouts or scenario parameters.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a projection hits an (effectively) orthogonal outcome.
// Carries the raw probability so the caller can decide what failed;
// `stage` is filled by staged pipelines (0 = single projection).
class PostSelectionImpossible : public std::runtime_error {
 public:
  PostSelectionImpossible(double raw_probability, const std::string& what,
                          int stage = 0)
      : std::runtime_error(what),
        raw_probability_(raw_probability),
        stage_(stage) {}

  double raw_probability() const { return raw_probability_; }
  int stage() const { return stage_; }

 private:
  double raw_probability_;
  int stage_;
};

//============================================================================
// Basis labels
//============================================================================

// One basis label of a single subsystem.
//
//   ShutterAt(slot)       shutter localized at slot 1..N+1 (N+1 = the
//                         reference location away from the screen)
//   PhotonIn(slit)        photon heading toward slit 1..N
//   PhotonRef(slit,stage) photon bounced back from slit 1..N by the
//                         shutter of the given stage
//   ShutterOpen/Closed    two-level shutter sitting in one slit
enum class ModeKind : std::uint8_t {
  ShutterAt,
  PhotonIn,
  PhotonRef,
  ShutterOpen,
  ShutterClosed,
};

struct ModeLabel {
  std::int32_t subsystem = 0;
  ModeKind kind = ModeKind::ShutterAt;
  std::int32_t slit = 0;   // slot for ShutterAt, slit for Photon*
  std::int32_t stage = 0;  // PhotonRef only

  friend auto operator<=>(const ModeLabel&, const ModeLabel&) = default;
};

inline ModeLabel shutter_at(int subsystem, int slot) {
  return {subsystem, ModeKind::ShutterAt, slot, 0};
}
inline ModeLabel photon_in(int subsystem, int slit) {
  return {subsystem, ModeKind::PhotonIn, slit, 0};
}
inline ModeLabel photon_ref(int subsystem, int slit, int stage) {
  return {subsystem, ModeKind::PhotonRef, slit, stage};
}
inline ModeLabel shutter_open(int subsystem) {
  return {subsystem, ModeKind::ShutterOpen, 0, 0};
}
inline ModeLabel shutter_closed(int subsystem) {
  return {subsystem, ModeKind::ShutterClosed, 0, 0};
}

//============================================================================
// Subsystems
//============================================================================

enum class SubsystemRole : std::uint8_t {
  ShutterLocation,  // N+1 location states
  DualShutter,      // open/closed shutter guarding one slit
  Photon,           // N incoming modes plus N reflected modes per stage
};

// Descriptor of one tensor factor.  The basis index rule below is the
// single piece of encoding shared with the dense oracle.
struct SubsystemInfo {
  std::int32_t id = 0;
  SubsystemRole role = SubsystemRole::Photon;
  std::int32_t slit_count = 0;    // N
  std::int32_t stage_count = 0;   // Photon: how many reflection stages exist
  std::int32_t guarded_slit = 0;  // DualShutter: the slit it sits in

  friend bool operator==(const SubsystemInfo&, const SubsystemInfo&) = default;

  std::int64_t dimension() const {
    switch (role) {
      case SubsystemRole::ShutterLocation:
        return slit_count + 1;
      case SubsystemRole::DualShutter:
        return 2;
      case SubsystemRole::Photon:
        return static_cast<std::int64_t>(slit_count) * (1 + stage_count);
    }
    return 0;
  }

  bool accepts(const ModeLabel& label) const {
    if (label.subsystem != id) return false;
    switch (role) {
      case SubsystemRole::ShutterLocation:
        return label.kind == ModeKind::ShutterAt && label.slit >= 1 &&
               label.slit <= slit_count + 1 && label.stage == 0;
      case SubsystemRole::DualShutter:
        return (label.kind == ModeKind::ShutterOpen ||
                label.kind == ModeKind::ShutterClosed) &&
               label.slit == 0 && label.stage == 0;
      case SubsystemRole::Photon:
        if (label.slit < 1 || label.slit > slit_count) return false;
        if (label.kind == ModeKind::PhotonIn) return label.stage == 0;
        if (label.kind == ModeKind::PhotonRef)
          return label.stage >= 1 && label.stage <= stage_count;
        return false;
    }
    return false;
  }

  // Mixed-radix digit of a label.  Photons: stage-major, slit-minor, with
  // stage 0 = incoming.  Shutters: slot-1.  Dual shutters: open=0, closed=1.
  std::int64_t basis_index(const ModeLabel& label) const {
    switch (role) {
      case SubsystemRole::ShutterLocation:
        return label.slit - 1;
      case SubsystemRole::DualShutter:
        return label.kind == ModeKind::ShutterOpen ? 0 : 1;
      case SubsystemRole::Photon: {
        const std::int64_t stage =
            label.kind == ModeKind::PhotonIn ? 0 : label.stage;
        return stage * slit_count + (label.slit - 1);
      }
    }
    return -1;
  }

  ModeLabel label_from_index(std::int64_t index) const {
    switch (role) {
      case SubsystemRole::ShutterLocation:
        return shutter_at(id, static_cast<int>(index) + 1);
      case SubsystemRole::DualShutter:
        return index == 0 ? shutter_open(id) : shutter_closed(id);
      case SubsystemRole::Photon: {
        const int stage = static_cast<int>(index / slit_count);
        const int slit = static_cast<int>(index % slit_count) + 1;
        return stage == 0 ? photon_in(id, slit) : photon_ref(id, slit, stage);
      }
    }
    return {};
  }
};

inline SubsystemInfo shutter_subsystem(int id, int slit_count) {
  return {id, SubsystemRole::ShutterLocation, slit_count, 0, 0};
}
inline SubsystemInfo dual_shutter_subsystem(int id, int slit_count,
                                            int guarded_slit) {
  return {id, SubsystemRole::DualShutter, slit_count, 0, guarded_slit};
}
inline SubsystemInfo photon_subsystem(int id, int slit_count,
                                      int stage_count = 1) {
  return {id, SubsystemRole::Photon, slit_count, stage_count, 0};
}

// Short printable form, used by the canonical state rendering and reports.
std::string label_text(const ModeLabel& label);

}  // namespace qshutter

#endif  // QSHUTTER_TYPES_HPP
