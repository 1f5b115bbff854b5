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

// Figures of merit: fidelities against a pure target, transition
// probabilities and the closed-form Landau-Zener prediction.

#include "cdgate/dynamics.hpp"
#include "cdgate/model.hpp"
#include "cdgate/numerics.hpp"

namespace cdgate {

struct FidelityPoint {
  double t = 0.0;
  double value = 0.0;
};

// |<psi|target>|^2. Throws NotNormalized.
double fidelity_pure(const StateVector& psi, const StateVector& target,
                     const Tolerances& tol = kTolerances);

// <target|rho|target>. Throws NotNormalized, InvalidDensityMatrix if the
// result has an imaginary part above 1e-10.
double fidelity_mixed(const DensityMatrix& rho, const StateVector& target,
                      const Tolerances& tol = kTolerances);

// |<E2(j2_final)|psi>|^2 with E2 the excited sector eigenstate.
double transition_probability(const StateVector& psi_final, const CnotParams& params, double j2_final);
// <E2|rho|E2>.
double transition_population(const DensityMatrix& rho, const CnotParams& params, double j2_final);

// exp(-pi g^2 tau / j2_amp).
double lz_formula(double g, double j2_amp, double tau);

// |1...1> on n qubits.
StateVector all_ones_state(std::size_t n_qubits);

}  // namespace cdgate
