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
#include <numeric>

#include "qshutter/model.hpp"
#include "test_helpers.hpp"

using namespace qshutter;
using doctest::Approx;

TEST_CASE("shutter state for two slits is the uniform three-way split") {
  const SparseState state = build_shutter_state({2, 1, SelectionSign::Pre}, 1);
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  CHECK(state.term_count() == 3);
  for (int slot = 1; slot <= 3; ++slot)
    CHECK(state.amplitude({shutter_at(1, slot)}).real() ==
          Approx(inv_sqrt3).epsilon(1e-15));
}

TEST_CASE("post-selected shutter state carries the negative side amplitude") {
  const SparseState state = build_shutter_state({3, 1, SelectionSign::Post}, 1);
  const double inv_sqrt5 = 1.0 / std::sqrt(5.0);
  for (int slot = 1; slot <= 3; ++slot)
    CHECK(state.amplitude({shutter_at(1, slot)}).real() ==
          Approx(inv_sqrt5).epsilon(1e-15));
  CHECK(state.amplitude({shutter_at(1, 4)}).real() ==
        Approx(-std::sqrt(2.0) * inv_sqrt5).epsilon(1e-15));
}

TEST_CASE("degenerate peel index stores no reference-location key") {
  const SparseState state = build_shutter_state({2, 2, SelectionSign::Pre}, 1);
  CHECK(state.term_count() == 2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(state.amplitude({shutter_at(1, 1)}).real() ==
        Approx(inv_sqrt2).epsilon(1e-15));
  CHECK(state.amplitude({shutter_at(1, 3)}) == Complex{0.0, 0.0});
}

TEST_CASE("shutter spec rejects bad parameters") {
  CHECK_THROWS_AS(build_shutter_state({1, 1, SelectionSign::Pre}, 1),
                  ConfigError);
  CHECK_THROWS_AS(build_shutter_state({3, 4, SelectionSign::Pre}, 1),
                  ConfigError);
  CHECK_THROWS_AS(build_shutter_state({3, 0, SelectionSign::Pre}, 1),
                  ConfigError);
}

TEST_CASE("shutter states are unit vectors for every slit count and peel") {
  for (int n = 2; n <= 8; ++n)
    for (int m = 1; m <= n; ++m) {
      const SparseState state =
          build_shutter_state({n, m, SelectionSign::Pre}, 1);
      CHECK(std::abs(state.norm() - 1.0) < 1e-15);
    }
}

TEST_CASE("photon state builders") {
  SUBCASE("one-hot input") {
    const SparseState state = build_photon_state(
        PhotonAmplitudes{{Complex{1.0, 0.0}, Complex{0.0, 0.0}}}, 1);
    CHECK(state.term_count() == 1);
    CHECK(state.amplitude({photon_in(1, 1)}) == Complex{1.0, 0.0});
  }
  SUBCASE("uniform superposition") {
    const int n = 5;
    std::vector<Complex> alphas(n, Complex{1.0 / std::sqrt(double(n)), 0.0});
    const SparseState state = build_photon_state(PhotonAmplitudes{alphas}, 1);
    CHECK(state.term_count() == static_cast<std::size_t>(n));
    CHECK(state.norm() == Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("complex amplitudes transcribe directly") {
    const SparseState state = build_photon_state(
        PhotonAmplitudes{{Complex{0.6, 0.0}, Complex{0.0, 0.8}}}, 1);
    CHECK(state.amplitude({photon_in(1, 1)}) == Complex{0.6, 0.0});
    CHECK(state.amplitude({photon_in(1, 2)}) == Complex{0.0, 0.8});
  }
  SUBCASE("unnormalized input is rejected unless normalized explicitly") {
    CHECK_THROWS_AS(build_photon_state(
                        PhotonAmplitudes{{Complex{1.0, 0.0}, Complex{1.0, 0.0}}}, 1),
                    ConfigError);
    const PhotonAmplitudes fixed = PhotonAmplitudes::normalized(
        {Complex{1.0, 0.0}, Complex{1.0, 0.0}});
    CHECK(build_photon_state(fixed, 1).norm() == Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("correlated photons bunch at a common slit") {
  SUBCASE("one photon reduces to the plain photon state") {
    const PhotonAmplitudes alphas{{Complex{0.6, 0.0}, Complex{0.8, 0.0}}};
    CHECK(testing::exactly_equal(build_correlated_photons(alphas, 1, 7),
                                 build_photon_state(alphas, 7)));
  }
  SUBCASE("two photons, two slits") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const SparseState state = build_correlated_photons(
        PhotonAmplitudes{{Complex{inv_sqrt2, 0.0}, Complex{inv_sqrt2, 0.0}}}, 2,
        1);
    CHECK(state.term_count() == 2);
    CHECK(state.amplitude({photon_in(1, 1), photon_in(2, 1)}).real() ==
          Approx(inv_sqrt2).epsilon(1e-15));
    CHECK(state.amplitude({photon_in(1, 2), photon_in(2, 2)}).real() ==
          Approx(inv_sqrt2).epsilon(1e-15));
  }
  SUBCASE("one-hot amplitudes give a single bunched term") {
    const SparseState state = build_correlated_photons(
        PhotonAmplitudes{{Complex{1.0, 0.0}, Complex{0.0, 0.0}}}, 2, 1);
    CHECK(state.term_count() == 1);
    CHECK(state.amplitude({photon_in(1, 1), photon_in(2, 1)}) ==
          Complex{1.0, 0.0});
  }
}

TEST_CASE("symmetric pair construction") {
  const SparseState pair = build_symmetric_pair(1, 2, 3, 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(pair.term_count() == 2);
  CHECK(pair.amplitude({photon_in(1, 1), photon_in(2, 2)}).real() ==
        Approx(inv_sqrt2).epsilon(1e-15));
  CHECK(pair.amplitude({photon_in(1, 2), photon_in(2, 1)}).real() ==
        Approx(inv_sqrt2).epsilon(1e-15));

  SUBCASE("slit order does not matter") {
    CHECK(testing::exactly_equal(pair, build_symmetric_pair(2, 1, 3, 1)));
  }
  SUBCASE("overlap with one ordered product is 1/sqrt(2)") {
    SparseState ordered(pair.layout());
    ordered.accumulate({photon_in(1, 1), photon_in(2, 2)}, Complex{1.0, 0.0});
    CHECK(inner_product(ordered, pair).real() ==
          Approx(inv_sqrt2).epsilon(1e-14));
  }
  SUBCASE("coincident slits are rejected") {
    CHECK_THROWS_AS(build_symmetric_pair(2, 2, 3, 1), ConfigError);
  }
}

TEST_CASE("general photon tensor builder") {
  const std::vector<Complex> coefficients = random_unit_vector(3, 9);
  const SparseState state = build_general_photons(coefficients, 3, 2, 1, 2);
  CHECK(state.norm() == Approx(1.0).epsilon(1e-12));
  // row-major: the last photon's slit varies fastest
  CHECK(state.amplitude({photon_in(1, 1), photon_in(2, 3)}) ==
        coefficients[2]);
  CHECK(state.amplitude({photon_in(1, 2), photon_in(2, 1)}) ==
        coefficients[3]);
  CHECK_THROWS_AS(build_general_photons(coefficients, 3, 3, 1), ConfigError);
}

TEST_CASE("dual shutter state and branch weights") {
  const SparseState state = build_dual_state(2, SelectionSign::Pre);
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  CHECK(state.term_count() == 3);
  CHECK(state.amplitude({shutter_open(1), shutter_closed(2)}).real() ==
        Approx(inv_sqrt3).epsilon(1e-15));
  CHECK(state.amplitude({shutter_closed(1), shutter_open(2)}).real() ==
        Approx(inv_sqrt3).epsilon(1e-15));
  CHECK(state.amplitude({shutter_closed(1), shutter_closed(2)}).real() ==
        Approx(inv_sqrt3).epsilon(1e-15));

  SUBCASE("all-closed and one-open weights") {
    for (int n = 2; n <= 6; ++n) {
      const SparseState phi = build_dual_state(n, SelectionSign::Pre);
      BasisLabel all_closed;
      for (int i = 1; i <= n; ++i) all_closed.push_back(shutter_closed(i));
      const double closed_weight = std::norm(phi.amplitude(all_closed));
      CHECK(std::abs(closed_weight - (n - 1.0) / (2.0 * n - 1)) < 1e-15);

      double open_weight = 0.0;
      for (const auto& [basis, value] : phi.amplitudes())
        if (basis != all_closed) open_weight += std::norm(value);
      CHECK(std::abs(open_weight - n / (2.0 * n - 1)) < 1e-15);
    }
    const SparseState phi3 = build_dual_state(3, SelectionSign::Pre);
    BasisLabel closed3{shutter_closed(1), shutter_closed(2),
                       shutter_closed(3)};
    CHECK(std::norm(phi3.amplitude(closed3)) == Approx(0.4).epsilon(1e-15));
  }
}

TEST_CASE("reflection swaps the matching incoming mode") {
  SparseState joint({shutter_subsystem(1, 2), photon_subsystem(2, 2, 1)});
  joint.accumulate({shutter_at(1, 1), photon_in(2, 1)}, Complex{1.0, 0.0});
  const int photons[] = {2};
  const SparseState after = apply_reflection_interaction(joint, 1, photons, 1);
  CHECK(after.term_count() == 1);
  CHECK(after.amplitude({shutter_at(1, 1), photon_ref(2, 1, 1)}) ==
        Complex{1.0, 0.0});
}

TEST_CASE("shutter at the reference location passes everything") {
  SparseState joint({shutter_subsystem(1, 3), photon_subsystem(2, 3, 1)});
  joint.accumulate({shutter_at(1, 4), photon_in(2, 2)}, Complex{1.0, 0.0});
  const int photons[] = {2};
  const SparseState after = apply_reflection_interaction(joint, 1, photons, 1);
  CHECK(testing::exactly_equal(after, joint));
}

TEST_CASE("double application is the identity when reuse is allowed") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::vector<SubsystemInfo> layout{shutter_subsystem(1, 3),
                                            photon_subsystem(2, 3, 2),
                                            photon_subsystem(3, 3, 2)};
    const SparseState state = testing::random_state(seed, layout);
    const int photons[] = {2, 3};
    const SparseState once = apply_reflection_interaction(
        state, 1, photons, 1, StageReuse::Allow);
    const SparseState twice = apply_reflection_interaction(
        once, 1, photons, 1, StageReuse::Allow);
    CHECK(testing::exactly_equal(twice, state));
  }
}

TEST_CASE("stage reuse is rejected by default") {
  SparseState joint({shutter_subsystem(1, 2), photon_subsystem(2, 2, 1)});
  joint.accumulate({shutter_at(1, 1), photon_ref(2, 1, 1)}, Complex{1.0, 0.0});
  const int photons[] = {2};
  CHECK_THROWS_AS(apply_reflection_interaction(joint, 1, photons, 1),
                  ConfigError);
}

TEST_CASE("stage beyond the photon capacity is rejected") {
  SparseState joint({shutter_subsystem(1, 2), photon_subsystem(2, 2, 1)});
  joint.accumulate({shutter_at(1, 1), photon_in(2, 1)}, Complex{1.0, 0.0});
  const int photons[] = {2};
  CHECK_THROWS_AS(apply_reflection_interaction(joint, 1, photons, 2),
                  ConfigError);
}

TEST_CASE("reflection preserves the norm exactly") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const std::vector<SubsystemInfo> layout{shutter_subsystem(1, 4),
                                            photon_subsystem(2, 4, 2),
                                            photon_subsystem(3, 4, 2)};
    const SparseState state = testing::random_state(seed, layout);
    const int photons[] = {2, 3};
    const SparseState after = apply_reflection_interaction(
        state, 1, photons, 2, StageReuse::Allow);
    CHECK(std::abs(after.norm() - state.norm()) < 1e-15);
  }
}

TEST_CASE("photon processing order within a stage does not matter") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::vector<SubsystemInfo> layout{shutter_subsystem(1, 3),
                                            photon_subsystem(2, 3, 1),
                                            photon_subsystem(3, 3, 1)};
    const SparseState state = testing::random_state(seed, layout);
    const int forward[] = {2, 3};
    const int backward[] = {3, 2};
    const SparseState a = apply_reflection_interaction(state, 1, forward, 1,
                                                       StageReuse::Allow);
    const SparseState b = apply_reflection_interaction(state, 1, backward, 1,
                                                       StageReuse::Allow);
    CHECK(testing::exactly_equal(a, b));
  }
}

TEST_CASE("photon passing any slit leaves the shutter orthogonal to the post state") {
  for (int n = 2; n <= 8; ++n) {
    const SparseState post = build_shutter_state({n, 1, SelectionSign::Post}, 1);
    const double inv_norm = 1.0 / std::sqrt(2.0 * n - 1);
    for (int j = 1; j <= n; ++j) {
      // Shutter component correlated with a photon passing slit j untouched.
      SparseState passed({shutter_subsystem(1, n)});
      for (int i = 1; i <= n; ++i)
        if (i != j)
          passed.accumulate({shutter_at(1, i)}, Complex{inv_norm, 0.0});
      passed.accumulate({shutter_at(1, n + 1)},
                        Complex{std::sqrt(n - 1.0) * inv_norm, 0.0});
      CHECK(std::abs(inner_product(post, passed)) < 1e-12);
    }
  }
}

TEST_CASE("dual control: reflection branch is orthogonal to the post state") {
  for (int n = 2; n <= 8; ++n) {
    std::vector<int> shutters(n);
    std::iota(shutters.begin(), shutters.end(), 1);
    const int photon_id = n + 1;
    const int photons[] = {photon_id};
    const SparseState post = build_dual_state(n, SelectionSign::Post);

    for (int j = 1; j <= n; ++j) {
      SparseState photon({photon_subsystem(photon_id, n, 1)});
      photon.accumulate({photon_in(photon_id, j)}, Complex{1.0, 0.0});
      SparseState joint =
          tensor(build_dual_state(n, SelectionSign::Pre), photon);
      joint = apply_dual_reflection_interaction(joint, shutters, photons, 1);

      // Everything correlated with |ref_j> must be invisible to the post
      // state: project the photon onto the reflected mode and compare.
      SparseState reflected({photon_subsystem(photon_id, n, 1)});
      reflected.accumulate({photon_ref(photon_id, j, 1)}, Complex{1.0, 0.0});
      const auto [weight, residual] = post_select(joint, reflected);
      CHECK(weight == Approx((2.0 * n - 2) / (2.0 * n - 1)).epsilon(1e-12));
      CHECK(std::abs(inner_product(post, residual)) < 1e-12);
    }
  }
}

TEST_CASE("dual control reflects only at closed slits") {
  // open at slit 1, closed at slit 2; photons heading to 1 and 2
  SparseState joint({dual_shutter_subsystem(1, 2, 1),
                     dual_shutter_subsystem(2, 2, 2),
                     photon_subsystem(3, 2, 1), photon_subsystem(4, 2, 1)});
  joint.accumulate(
      {shutter_open(1), shutter_closed(2), photon_in(3, 1), photon_in(4, 2)},
      Complex{1.0, 0.0});
  std::vector<int> shutters{1, 2};
  const int photons[] = {3, 4};
  const SparseState after =
      apply_dual_reflection_interaction(joint, shutters, photons, 1);
  CHECK(after.amplitude({shutter_open(1), shutter_closed(2), photon_in(3, 1),
                         photon_ref(4, 2, 1)}) == Complex{1.0, 0.0});
}

TEST_CASE("cascade layouts peel from K down to 1") {
  const CascadeLayout two = build_cascade(4, 2);
  REQUIRE(two.stages.size() == 2);
  CHECK(two.stages[0].peel_index == 2);
  CHECK(two.stages[1].peel_index == 1);

  const CascadeLayout three = build_cascade(4, 3);
  REQUIRE(three.stages.size() == 3);
  CHECK(three.stages[0].peel_index == 3);
  CHECK(three.stages[1].peel_index == 2);
  CHECK(three.stages[2].peel_index == 1);

  const CascadeLayout base = build_cascade(2, 1);
  REQUIRE(base.stages.size() == 1);
  CHECK(base.stages[0].peel_index == 1);

  CHECK_THROWS_WITH_AS(build_cascade(3, 4),
                       "build_cascade: K must not exceed N", ConfigError);
}
