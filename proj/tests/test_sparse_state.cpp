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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "qshutter/model.hpp"
#include "qshutter/sparse_state.hpp"
#include "test_helpers.hpp"

using namespace qshutter;
using doctest::Approx;

namespace {

SparseState single_shutter_ket(int subsystem, int slit_count, int slot) {
  SparseState state({shutter_subsystem(subsystem, slit_count)});
  state.accumulate({shutter_at(subsystem, slot)}, Complex{1.0, 0.0});
  return state;
}

}  // namespace

TEST_CASE("tensor distributes over superpositions") {
  SparseState shutter({shutter_subsystem(1, 2)});
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  shutter.accumulate({shutter_at(1, 1)}, Complex{inv_sqrt2, 0.0});
  shutter.accumulate({shutter_at(1, 2)}, Complex{inv_sqrt2, 0.0});

  SparseState photon({photon_subsystem(2, 2)});
  photon.accumulate({photon_in(2, 1)}, Complex{1.0, 0.0});

  const SparseState joint = tensor(shutter, photon);
  CHECK(joint.term_count() == 2);
  CHECK(joint.amplitude({shutter_at(1, 1), photon_in(2, 1)}).real() ==
        Approx(inv_sqrt2).epsilon(1e-15));
  CHECK(joint.amplitude({shutter_at(1, 2), photon_in(2, 1)}).real() ==
        Approx(inv_sqrt2).epsilon(1e-15));
}

TEST_CASE("tensor of two unit kets is a unit ket") {
  const SparseState shutter = single_shutter_ket(1, 2, 3);
  SparseState photon({photon_subsystem(2, 2)});
  photon.accumulate({photon_in(2, 2)}, Complex{1.0, 0.0});

  const SparseState joint = tensor(shutter, photon);
  CHECK(joint.term_count() == 1);
  CHECK(joint.amplitude({shutter_at(1, 3), photon_in(2, 2)}) ==
        Complex{1.0, 0.0});
}

TEST_CASE("tensor of a shutter family state with a two-slit photon") {
  const SparseState shutter =
      build_shutter_state({2, 1, SelectionSign::Pre}, 1);
  const SparseState photon = build_photon_state(
      PhotonAmplitudes{{Complex{0.6, 0.0}, Complex{0.8, 0.0}}}, 2);

  const SparseState joint = tensor(shutter, photon);
  CHECK(joint.term_count() == 6);
  CHECK(joint.norm() == Approx(1.0).epsilon(1e-14));
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  CHECK(joint.amplitude({shutter_at(1, 2), photon_in(2, 1)}).real() ==
        Approx(0.6 * inv_sqrt3).epsilon(1e-15));
  CHECK(joint.amplitude({shutter_at(1, 3), photon_in(2, 2)}).real() ==
        Approx(0.8 * inv_sqrt3).epsilon(1e-15));
}

TEST_CASE("tensor rejects overlapping subsystem ids") {
  const SparseState a = single_shutter_ket(1, 2, 1);
  const SparseState b = single_shutter_ket(1, 2, 2);
  CHECK_THROWS_AS(tensor(a, b), ConfigError);
}

TEST_CASE("norm of a tensor is the product of norms") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    SparseState a = testing::random_state(seed, {shutter_subsystem(1, 4)});
    SparseState b =
        testing::random_state(seed + 100, {photon_subsystem(2, 3, 2)});
    a = scale(a, Complex{1.7, -0.3});  // denormalize
    b = scale(b, Complex{0.2, 0.9});
    CHECK(tensor(a, b).norm() == Approx(a.norm() * b.norm()).epsilon(1e-12));
  }
}

TEST_CASE("overlap of the pre and post shutter states is 1/(2N-1)") {
  for (int n = 2; n <= 8; ++n) {
    const Complex overlap =
        inner_product(build_shutter_state({n, 1, SelectionSign::Pre}, 1),
                      build_shutter_state({n, 1, SelectionSign::Post}, 1));
    CHECK(std::abs(overlap - Complex{1.0 / (2.0 * n - 1), 0.0}) < 1e-12);
  }
  const Complex overlap_3 =
      inner_product(build_shutter_state({3, 1, SelectionSign::Pre}, 1),
                    build_shutter_state({3, 1, SelectionSign::Post}, 1));
  CHECK(overlap_3.real() == Approx(0.2).epsilon(1e-14));
}

TEST_CASE("builder outputs are normalized") {
  CHECK(inner_product(build_shutter_state({5, 2, SelectionSign::Post}, 1),
                      build_shutter_state({5, 2, SelectionSign::Post}, 1))
            .real() == Approx(1.0).epsilon(1e-14));
  const SparseState dual = build_dual_state(4, SelectionSign::Pre);
  CHECK(inner_product(dual, dual).real() == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("overlap with the residual pair state is -1/sqrt(15) at N=3") {
  // (|3> + sqrt(2)|4>)/sqrt(3): the shutter component left when a
  // symmetric pair through slits 1,2 passes untouched.
  SparseState residual({shutter_subsystem(1, 3)});
  residual.accumulate({shutter_at(1, 3)}, Complex{1.0 / std::sqrt(3.0), 0.0});
  residual.accumulate({shutter_at(1, 4)},
                      Complex{std::sqrt(2.0) / std::sqrt(3.0), 0.0});

  const Complex overlap = inner_product(
      build_shutter_state({3, 1, SelectionSign::Post}, 1), residual);
  CHECK(overlap.real() == Approx(-1.0 / std::sqrt(15.0)).epsilon(1e-14));
  CHECK(overlap.imag() == Approx(0.0));
}

TEST_CASE("inner product is conjugate symmetric") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::vector<SubsystemInfo> layout{shutter_subsystem(1, 3),
                                            photon_subsystem(2, 2, 1)};
    const SparseState a = testing::random_state(seed, layout);
    const SparseState b = testing::random_state(seed + 500, layout);
    const Complex ab = inner_product(a, b);
    const Complex ba = inner_product(b, a);
    CHECK(std::abs(ab - std::conj(ba)) < 1e-14);
  }
}

TEST_CASE("inner product rejects mismatched layouts") {
  const SparseState a = single_shutter_ket(1, 2, 1);
  const SparseState b = single_shutter_ket(2, 2, 1);
  CHECK_THROWS_AS(inner_product(a, b), ConfigError);
}

TEST_CASE("projecting the post state out of the pre state") {
  for (int n : {2, 3, 5}) {
    const SparseState pre = build_shutter_state({n, 1, SelectionSign::Pre}, 1);
    const SparseState post =
        build_shutter_state({n, 1, SelectionSign::Post}, 1);
    const auto [probability, remainder] = project_subsystem(pre, 1, post);
    const double expected = 1.0 / ((2.0 * n - 1) * (2.0 * n - 1));
    CHECK(probability == Approx(expected).epsilon(1e-12));
    CHECK(remainder.layout().empty());
    CHECK(remainder.norm() == Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("projection onto the state itself is idempotent") {
  const SparseState ket = single_shutter_ket(1, 2, 3);
  const auto [probability, remainder] = project_subsystem(ket, 1, ket);
  CHECK(probability == Approx(1.0).epsilon(1e-14));
  CHECK(remainder.layout().empty());
  CHECK(remainder.term_count() == 1);
}

TEST_CASE("projection after the interaction keeps only the reflected mode") {
  const SparseState joint =
      tensor(build_shutter_state({2, 1, SelectionSign::Pre}, 1),
             build_photon_state(
                 PhotonAmplitudes{{Complex{1.0, 0.0}, Complex{0.0, 0.0}}}, 2));
  const int photons[] = {2};
  const SparseState after = apply_reflection_interaction(joint, 1, photons, 1);

  const auto [probability, conditional] = project_subsystem(
      after, 1, build_shutter_state({2, 1, SelectionSign::Post}, 1));
  CHECK(probability == Approx(1.0 / 9.0).epsilon(1e-12));
  CHECK(conditional.term_count() == 1);
  CHECK(std::abs(conditional.amplitude({photon_ref(2, 1, 1)}) -
                 Complex{1.0, 0.0}) < 1e-12);
}

TEST_CASE("projection onto an orthogonal outcome is refused") {
  const SparseState ket = single_shutter_ket(1, 2, 1);
  const SparseState other = single_shutter_ket(1, 2, 2);
  CHECK_THROWS_AS((void)project_subsystem(ket, 1, other),
                  PostSelectionImpossible);
  try {
    (void)project_subsystem(ket, 1, other);
    FAIL("expected PostSelectionImpossible");
  } catch (const PostSelectionImpossible& failure) {
    CHECK(failure.raw_probability() < kZeroProbabilityThreshold);
  }
}

TEST_CASE("projection probabilities over an orthonormal basis sum to one") {
  const std::vector<SubsystemInfo> layout{shutter_subsystem(1, 4),
                                          photon_subsystem(2, 3, 1)};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SparseState state = testing::random_state(seed, layout);
    double total = 0.0;
    for (int slot = 1; slot <= 5; ++slot) {
      const auto [probability, remainder] =
          project_subsystem(state, 1, single_shutter_ket(1, 4, slot));
      total += probability;
      (void)remainder;
    }
    CHECK(total == Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("projection requires a normalized target") {
  const SparseState pre = build_shutter_state({2, 1, SelectionSign::Pre}, 1);
  const SparseState bad = scale(pre, Complex{0.5, 0.0});
  CHECK_THROWS_AS((void)project_subsystem(pre, 1, bad), ConfigError);
}

TEST_CASE("adding a state to its negation cancels exactly") {
  const SparseState state =
      testing::random_state(3, {photon_subsystem(1, 4, 2)});
  const SparseState zero = add(state, scale(state, Complex{-1.0, 0.0}));
  CHECK(zero.term_count() == 0);
  CHECK(zero.norm() == 0.0);
}

TEST_CASE("scaling by i preserves the norm") {
  const SparseState state = testing::random_state(5, {shutter_subsystem(1, 5)});
  CHECK(scale(state, Complex{0.0, 1.0}).norm() ==
        Approx(state.norm()).epsilon(1e-15));
}

TEST_CASE("pre plus post has no weight at the reference location") {
  for (int n : {2, 3, 6}) {
    const SparseState sum =
        add(build_shutter_state({n, 1, SelectionSign::Pre}, 1),
            build_shutter_state({n, 1, SelectionSign::Post}, 1));
    CHECK(sum.amplitude({shutter_at(1, n + 1)}) == Complex{0.0, 0.0});
    CHECK(sum.term_count() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("amplitudes below the pruning threshold are dropped") {
  const SparseState state = testing::random_state(11, {shutter_subsystem(1, 3)});
  const SparseState shrunk = scale(state, Complex{1e-20, 0.0});
  CHECK(shrunk.term_count() == 0);
}

TEST_CASE("canonical text rendering") {
  SparseState photon({photon_subsystem(1, 2)});
  photon.accumulate({photon_in(1, 2)}, Complex{0.0, 0.8});
  photon.accumulate({photon_in(1, 1)}, Complex{0.6, 0.0});
  CHECK(to_text(photon) ==
        "p1:in1 0.59999999999999998 0\n"
        "p1:in2 0 0.80000000000000004\n");

  SparseState joint({shutter_subsystem(1, 2), photon_subsystem(2, 2, 1)});
  joint.accumulate({shutter_at(1, 3), photon_ref(2, 1, 1)}, Complex{1.0, 0.0});
  CHECK(to_text(joint) == "s1:3,p2:ref1@1 1 0\n");
}

TEST_CASE("labels are validated against the layout") {
  SparseState state({photon_subsystem(1, 2, 1)});
  CHECK_THROWS_AS(state.accumulate({photon_in(1, 3)}, Complex{1.0, 0.0}),
                  ConfigError);
  CHECK_THROWS_AS(state.accumulate({photon_ref(1, 1, 2)}, Complex{1.0, 0.0}),
                  ConfigError);
  CHECK_THROWS_AS(state.accumulate({shutter_at(1, 1)}, Complex{1.0, 0.0}),
                  ConfigError);
  CHECK_THROWS_AS(
      state.accumulate({photon_in(1, 1), photon_in(2, 1)}, Complex{1.0, 0.0}),
      ConfigError);
}
