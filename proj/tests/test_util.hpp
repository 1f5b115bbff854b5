// Copyright 2026 The cdgate Authors
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

#pragma once

// Shared helpers for the unit tests.

#include <random>

#include "cdgate/numerics.hpp"

namespace cdgate::test {

inline ComplexMatrix random_matrix(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  ComplexMatrix m(dim);
  for (auto& z : m.data()) z = {n(rng), n(rng)};
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  const ComplexMatrix a = random_matrix(dim, rng);
  return Complex(0.5) * (a + dagger(a));
}

inline StateVector random_state(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  StateVector v(dim);
  for (auto& z : v.amplitudes()) z = {n(rng), n(rng)};
  const double s = 1.0 / std::sqrt(v.norm_squared());
  for (auto& z : v.amplitudes()) z *= s;
  return v;
}

}  // namespace cdgate::test
