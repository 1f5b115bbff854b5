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

// Time evolution: Schroedinger propagation, propagators, the dephasing master
// equation and a Monte-Carlo white-noise oracle for it.

#include <cstdint>
#include <vector>

#include "cdgate/model.hpp"
#include "cdgate/numerics.hpp"

namespace cdgate {

// Integration settings for one run. Physical time runs over
// [-tau/2, +tau/2]; the integrator works on s = t + tau/2 in [0, tau].
struct EvolutionConfig {
  double tau = 1.0;
  // Tight enough that DOP853 keeps the norm drift under 1e-8 for tau up to ~1000.
  double abs_tol = 1e-12;
  double rel_tol = 1e-11;
  double max_step = 0.0;  // 0: bounded only by tau
  std::size_t sample_count = 2;
  bool use_cd = false;

  // Throws NonPositiveTau, InvalidParams.
  void validate() const;
  // sample_count equally spaced physical times, both endpoints included.
  std::vector<double> sample_times() const;
};

// Hermitian, unit-trace, positive semidefinite operator. Construction
// validates against the given tolerances and throws InvalidDensityMatrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix entries, const Tolerances& tol = kTolerances);
  static DensityMatrix from_pure(const StateVector& psi);

  const ComplexMatrix& entries() const { return rho_; }
  std::size_t dim() const { return rho_.dim(); }
  Complex operator()(std::size_t r, std::size_t c) const { return rho_(r, c); }
  double trace_real() const { return trace(rho_).real(); }
  double min_eigenvalue() const;

 private:
  ComplexMatrix rho_;
};

template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  // max | |psi|^2 - 1 | (pure) or max |tr rho - 1| (mixed) over accepted steps.
  double norm_drift = 0.0;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;

  const State& final_state() const { return states.back(); }
};

using PureTrajectory = Trajectory<StateVector>;
using MixedTrajectory = Trajectory<DensityMatrix>;

// Dephasing through a single jump operator sqrt(alpha) * jump.
struct NoiseModel {
  double alpha = 0.0;
  ComplexMatrix jump;

  // L = sqrt(alpha) sz on the last qubit of an n-qubit register.
  static NoiseModel target_dephasing(double alpha, std::size_t n_qubits = 2);

  double alpha_in_gap_units(double g) const { return alpha / (2.0 * g); }
};

// Absolute rate from a value quoted in units of the minimal gap 2g.
inline double alpha_from_gap_units(double alpha_gap_units, double g) { return alpha_gap_units * 2.0 * g; }

// d psi/dt = -i H(t) psi, no renormalization. Throws StepUnderflow,
// NormDriftExceeded, NotNormalized (initial state).
PureTrajectory schrodinger_evolve(const HamiltonianFn& h, const StateVector& psi0,
                                  const EvolutionConfig& cfg, const Tolerances& tol = kTolerances);

// Time-ordered exponential over [-tau/2, tau/2], one column per basis state.
// Throws NormDriftExceeded if the result is not unitary to tol.unitarity.
ComplexMatrix propagator(const HamiltonianFn& h, const EvolutionConfig& cfg,
                         const Tolerances& tol = kTolerances);

// d rho/dt = -i [H(t), rho] + L rho L^dagger - (1/2){L^dagger L, rho},
// symmetrized after each accepted step. Throws StepUnderflow,
// TraceDriftExceeded, PositivityViolation.
MixedTrajectory lindblad_evolve(const HamiltonianFn& h, const DensityMatrix& rho0,
                                const NoiseModel& noise, const EvolutionConfig& cfg,
                                const Tolerances& tol = kTolerances);

struct NoiseOracleConfig {
  double tau = 1.0;
  double alpha = 0.0;
  std::size_t n_samples = 1000;
  double dt = 1e-2;
  std::uint64_t seed = 0;
};

// Ensemble mean of |psi_eta><psi_eta| and the standard error of each entry
// (real and imaginary parts separately).
struct NoiseAverage {
  DensityMatrix rho;
  ComplexMatrix standard_error;
  std::size_t samples = 0;
};

// Monte-Carlo realization of H(t) + eta(t) N with N = noise.jump (must be
// diagonal): eta is piecewise constant on steps of length dt, Gaussian with
// zero mean and variance alpha/dt. Each step is the symmetric splitting
// exp(-i H dt/2) exp(-i eta N dt) exp(-i H dt/2) with H at the step midpoint.
// Throws InvalidSampleCount (n_samples < 100), InvalidParams (alpha dt >= 0.1
// or non-diagonal N).
NoiseAverage noise_trajectory_oracle(const HamiltonianFn& h, const StateVector& psi0,
                                     const ComplexMatrix& noise_operator,
                                     const NoiseOracleConfig& cfg);

// |<E1(j2)|psi>|^2 with E1 the sector ground state on the last two basis
// vectors; for two qubits this is analytic_spectrum(params, j2).states[0].
double ground_state_probability(const StateVector& psi, const CnotParams& params, double j2);
// <E1|rho|E1>.
double ground_state_population(const DensityMatrix& rho, const CnotParams& params, double j2);

}  // namespace cdgate
