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

#include "cdgate/observables.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <algorithm>
#include <string>

#include "cdgate/errors.hpp"

namespace cdgate {

namespace {

void require_unit(const StateVector& v, double limit, const char* who) {
  const double drift = std::abs(v.norm_squared() - 1.0);
  if (drift > limit) {
    throw NotNormalized(std::string(who) + ": |v|^2 - 1 = " + num(drift));
  }
}

StateVector excited_state(std::size_t dim, double g, double j2) {
  const auto n_qubits = static_cast<std::size_t>(std::countr_zero(dim));
  return embed_sector(sector_eigenstates(g, j2).excited, n_qubits);
}

}  // namespace

double fidelity_pure(const StateVector& psi, const StateVector& target, const Tolerances& tol) {
  // Evolved states are accepted up to the integrator's drift budget.
  require_unit(psi, std::max(tol.normalization, tol.norm_drift), "fidelity_pure");
  require_unit(target, tol.normalization, "fidelity_pure");
  return std::norm(inner(psi, target));
}

double fidelity_mixed(const DensityMatrix& rho, const StateVector& target, const Tolerances& tol) {
  require_unit(target, tol.normalization, "fidelity_mixed");
  const Complex v = inner(target, matrix_apply(rho.entries(), target));
  if (std::abs(v.imag()) > 1e-10) {
    throw InvalidDensityMatrix("fidelity_mixed: complex expectation value " + num(v.imag()));
  }
  return v.real();
}

double transition_probability(const StateVector& psi_final, const CnotParams& params, double j2_final) {
  return std::norm(inner(excited_state(psi_final.dim(), params.g, j2_final), psi_final));
}

double transition_population(const DensityMatrix& rho, const CnotParams& params, double j2_final) {
  const StateVector e2 = excited_state(rho.dim(), params.g, j2_final);
  return inner(e2, matrix_apply(rho.entries(), e2)).real();
}

double lz_formula(double g, double j2_amp, double tau) {
  return std::exp(-std::numbers::pi * g * g * tau / j2_amp);
}

StateVector all_ones_state(std::size_t n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  return StateVector::basis(dim, dim - 1);
}

}  // namespace cdgate
