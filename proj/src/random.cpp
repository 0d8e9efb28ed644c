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

#include "qshutter/random.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace qshutter {

namespace {

// 53-bit uniform in (0,1]; the +1 keeps log() finite.
double uniform_open_closed(std::mt19937_64& engine) {
  return static_cast<double>((engine() >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

std::vector<Complex> random_complex_gaussians(std::uint64_t seed,
                                              std::size_t count) {
  std::mt19937_64 engine(seed);
  std::vector<Complex> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double u1 = uniform_open_closed(engine);
    const double u2 = uniform_open_closed(engine);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    values.emplace_back(radius * std::cos(angle), radius * std::sin(angle));
  }
  return values;
}

std::vector<Complex> random_unit_vector(std::uint64_t seed,
                                        std::size_t count) {
  std::vector<Complex> values = random_complex_gaussians(seed, count);
  double total = 0.0;
  for (const Complex& value : values) total += std::norm(value);
  const double inv = 1.0 / std::sqrt(total);
  for (Complex& value : values) value *= inv;
  return values;
}

}  // namespace qshutter
