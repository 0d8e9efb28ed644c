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

#ifndef QSHUTTER_RANDOM_HPP
#define QSHUTTER_RANDOM_HPP

#include <cstdint>
#include <vector>

#include "qshutter/types.hpp"

namespace qshutter {

// Seeded i.i.d. complex standard Gaussians via mt19937_64 and a hand-rolled
// Box-Muller (std::normal_distribution is implementation-defined; this
// sequence is reproducible across platforms, which keeps reports
// byte-identical for a given seed).
std::vector<Complex> random_complex_gaussians(std::uint64_t seed,
                                              std::size_t count);

// The Gaussian vector rescaled to unit norm: a Haar-ish random state.
std::vector<Complex> random_unit_vector(std::uint64_t seed, std::size_t count);

}  // namespace qshutter

#endif  // QSHUTTER_RANDOM_HPP
