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

#include "cdgate/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include "cdgate/errors.hpp"
#include "cdgate/ode.hpp"

namespace cdgate {

namespace {

StepControl step_control(const EvolutionConfig& cfg) {
  StepControl c;
  c.abs_tol = cfg.abs_tol;
  c.rel_tol = cfg.rel_tol;
  c.max_step = cfg.max_step;
  return c;
}

void require_normalized(const StateVector& psi, const Tolerances& tol, const char* who) {
  const double drift = std::abs(psi.norm_squared() - 1.0);
  if (drift > tol.normalization) {
    throw NotNormalized(std::string(who) + ": initial state has |psi|^2 - 1 = " + num(drift));
  }
}

// y <- (y + y^dagger)/2 for a row-major dim x dim block.
void symmetrize(std::vector<Complex>& y, std::size_t dim) {
  for (std::size_t i = 0; i < dim; ++i) {
    y[i * dim + i] = y[i * dim + i].real();
    for (std::size_t j = i + 1; j < dim; ++j) {
      const Complex avg = 0.5 * (y[i * dim + j] + std::conj(y[j * dim + i]));
      y[i * dim + j] = avg;
      y[j * dim + i] = std::conj(avg);
    }
  }
}

Complex block_trace(std::span<const Complex> y, std::size_t dim) {
  Complex s{};
  for (std::size_t i = 0; i < dim; ++i) s += y[i * dim + i];
  return s;
}

ComplexMatrix to_matrix(std::span<const Complex> y, std::size_t dim) {
  ComplexMatrix m(dim);
  std::copy(y.begin(), y.end(), m.data().begin());
  return m;
}

}  // namespace

// --- EvolutionConfig -----------------------------------------------------

void EvolutionConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw NonPositiveTau("EvolutionConfig: tau must be > 0, got " + num(tau));
  }
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw InvalidParams("EvolutionConfig: tolerances must be > 0");
  if (max_step < 0.0) throw InvalidParams("EvolutionConfig: max_step must be >= 0");
  if (sample_count < 2) throw InvalidParams("EvolutionConfig: sample_count must be >= 2");
}

std::vector<double> EvolutionConfig::sample_times() const {
  std::vector<double> out(sample_count);
  const double t0 = -0.5 * tau;
  for (std::size_t k = 0; k < sample_count; ++k) {
    out[k] = t0 + tau * static_cast<double>(k) / static_cast<double>(sample_count - 1);
  }
  out.back() = 0.5 * tau;
  return out;
}

// --- DensityMatrix -------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix entries, const Tolerances& tol) : rho_(std::move(entries)) {
  if (rho_.dim() == 0) throw InvalidDensityMatrix("density matrix: empty");
  const double asym = hermiticity_defect(rho_);
  if (asym > tol.dm_hermiticity) {
    throw InvalidDensityMatrix("density matrix: not Hermitian (defect " + num(asym) + ")");
  }
  const Complex tr = trace(rho_);
  if (std::abs(tr - 1.0) > tol.dm_trace) {
    throw InvalidDensityMatrix("density matrix: trace " + num(tr.real()) + " != 1");
  }
  const double lowest = min_eigenvalue();
  if (lowest < -tol.dm_min_eigenvalue) {
    throw InvalidDensityMatrix("density matrix: negative eigenvalue " + num(lowest));
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix(ComplexMatrix::outer(psi, psi));
}

double DensityMatrix::min_eigenvalue() const { return hermitian_eig(rho_).eigenvalues.front(); }

NoiseModel NoiseModel::target_dephasing(double alpha, std::size_t n_qubits) {
  if (!(alpha >= 0.0)) throw InvalidParams("NoiseModel: alpha must be >= 0");
  return NoiseModel{alpha, pauli::on_qubit(pauli::z(), n_qubits - 1, n_qubits)};
}

// --- Schroedinger --------------------------------------------------------

PureTrajectory schrodinger_evolve(const HamiltonianFn& h, const StateVector& psi0,
                                  const EvolutionConfig& cfg, const Tolerances& tol) {
  cfg.validate();
  require_normalized(psi0, tol, "schrodinger_evolve");
  const std::size_t dim = psi0.dim();
  const double half = 0.5 * cfg.tau;

  Dop853 solver(
      [&h, dim, half](double s, std::span<const Complex> y, std::span<Complex> dy) {
        const ComplexMatrix hm = h(s - half);
        for (std::size_t i = 0; i < dim; ++i) {
          Complex acc{};
          for (std::size_t j = 0; j < dim; ++j) acc += hm(i, j) * y[j];
          dy[i] = -kI * acc;
        }
      },
      dim, step_control(cfg));

  PureTrajectory traj;
  traj.times = cfg.sample_times();
  traj.states.reserve(traj.times.size());
  std::vector<Complex> y(psi0.amplitudes().begin(), psi0.amplitudes().end());
  traj.states.push_back(psi0);

  double drift = 0.0;
  const auto track = [&drift](double, std::vector<Complex>& state) {
    double n = 0.0;
    for (const auto& a : state) n += std::norm(a);
    drift = std::max(drift, std::abs(n - 1.0));
    return false;
  };

  double s = 0.0;
  for (std::size_t k = 1; k < traj.times.size(); ++k) {
    solver.advance(s, y, traj.times[k] + half, track);
    traj.states.emplace_back(y);
  }
  traj.norm_drift = drift;
  traj.accepted_steps = solver.accepted_steps();
  traj.rejected_steps = solver.rejected_steps();
  if (drift > tol.norm_drift) {
    throw NormDriftExceeded("schrodinger_evolve: norm drift " + num(drift) +
                            " exceeds " + num(tol.norm_drift));
  }
  return traj;
}

ComplexMatrix propagator(const HamiltonianFn& h, const EvolutionConfig& cfg, const Tolerances& tol) {
  cfg.validate();
  const double half = 0.5 * cfg.tau;
  const std::size_t dim = h(-half).dim();

  // Matrix ODE dU/ds = -i H U, U(0) = 1, evolved as one block.
  Dop853 solver(
      [&h, dim, half](double s, std::span<const Complex> y, std::span<Complex> dy) {
        const ComplexMatrix hm = h(s - half);
        for (std::size_t i = 0; i < dim; ++i) {
          for (std::size_t c = 0; c < dim; ++c) {
            Complex acc{};
            for (std::size_t j = 0; j < dim; ++j) acc += hm(i, j) * y[j * dim + c];
            dy[i * dim + c] = -kI * acc;
          }
        }
      },
      dim * dim, step_control(cfg));

  const ComplexMatrix id = ComplexMatrix::identity(dim);
  std::vector<Complex> y(id.data().begin(), id.data().end());
  double s = 0.0;
  solver.advance(s, y, cfg.tau);
  ComplexMatrix u = to_matrix(y, dim);
  const double defect = unitarity_defect(u);
  if (defect > tol.unitarity) {
    throw NormDriftExceeded("propagator: unitarity defect " + num(defect));
  }
  return u;
}

// --- Lindblad ------------------------------------------------------------

MixedTrajectory lindblad_evolve(const HamiltonianFn& h, const DensityMatrix& rho0,
                                const NoiseModel& noise, const EvolutionConfig& cfg,
                                const Tolerances& tol) {
  cfg.validate();
  if (!(noise.alpha >= 0.0)) throw InvalidParams("lindblad_evolve: alpha must be >= 0");
  const std::size_t dim = rho0.dim();
  const double half = 0.5 * cfg.tau;
  const bool dissipative = noise.alpha > 0.0;
  if (dissipative && noise.jump.dim() != dim) {
    throw DimensionMismatch("lindblad_evolve: jump operator dimension differs from rho");
  }

  const ComplexMatrix jump = dissipative ? std::sqrt(noise.alpha) * noise.jump : ComplexMatrix(dim);
  const ComplexMatrix jump_dag = dagger(jump);
  const ComplexMatrix jdj = matmul(jump_dag, jump);

  Dop853 solver(
      [&, dim, half, dissipative](double s, std::span<const Complex> y, std::span<Complex> dy) {
        const ComplexMatrix hm = h(s - half);
        const ComplexMatrix rho = to_matrix(y, dim);
        ComplexMatrix out = -kI * commutator(hm, rho);
        if (dissipative) {
          out += matmul(jump, matmul(rho, jump_dag));
          out -= 0.5 * (matmul(jdj, rho) + matmul(rho, jdj));
        }
        std::copy(out.data().begin(), out.data().end(), dy.begin());
      },
      dim * dim, step_control(cfg));

  Tolerances relaxed = tol;
  relaxed.dm_min_eigenvalue = tol.positivity;
  relaxed.dm_trace = tol.trace_drift;

  MixedTrajectory traj;
  traj.times = cfg.sample_times();
  traj.states.reserve(traj.times.size());
  traj.states.push_back(rho0);
  std::vector<Complex> y(rho0.entries().data().begin(), rho0.entries().data().end());

  double drift = 0.0;
  const auto hook = [&](double s, std::vector<Complex>& state) {
    symmetrize(state, dim);
    const double d = std::abs(block_trace(state, dim) - 1.0);
    drift = std::max(drift, d);
    if (d > tol.trace_drift) {
      throw TraceDriftExceeded("lindblad_evolve: trace drift " + num(d) + " at t = " +
                               num(s - half));
    }
    return true;
  };

  double s = 0.0;
  for (std::size_t k = 1; k < traj.times.size(); ++k) {
    solver.advance(s, y, traj.times[k] + half, hook);
    ComplexMatrix rho = to_matrix(y, dim);
    const double lowest = hermitian_eig(rho).eigenvalues.front();
    if (lowest < -tol.positivity) {
      throw PositivityViolation("lindblad_evolve: eigenvalue " + num(lowest) +
                                " at t = " + num(traj.times[k]));
    }
    traj.states.emplace_back(std::move(rho), relaxed);
  }
  traj.norm_drift = drift;
  traj.accepted_steps = solver.accepted_steps();
  traj.rejected_steps = solver.rejected_steps();
  return traj;
}

// --- stochastic oracle ---------------------------------------------------

NoiseAverage noise_trajectory_oracle(const HamiltonianFn& h, const StateVector& psi0,
                                     const ComplexMatrix& noise_operator,
                                     const NoiseOracleConfig& cfg) {
  if (cfg.n_samples < 100) {
    throw InvalidSampleCount("noise_trajectory_oracle: need at least 100 samples, got " +
                             num(cfg.n_samples));
  }
  if (!(cfg.tau > 0.0)) throw NonPositiveTau("noise_trajectory_oracle: tau must be > 0");
  if (!(cfg.dt > 0.0) || !(cfg.alpha >= 0.0) || cfg.alpha * cfg.dt >= 0.1) {
    throw InvalidParams("noise_trajectory_oracle: need dt > 0, alpha >= 0 and alpha*dt < 0.1");
  }
  require_normalized(psi0, kTolerances, "noise_trajectory_oracle");
  const std::size_t dim = psi0.dim();
  if (noise_operator.dim() != dim) throw DimensionMismatch("noise_trajectory_oracle: noise operator size");
  std::vector<double> noise_diag(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (i != j && noise_operator(i, j) != Complex{}) {
        throw InvalidParams("noise_trajectory_oracle: noise operator must be diagonal");
      }
    }
    noise_diag[i] = noise_operator(i, i).real();
  }

  const auto n_steps = static_cast<std::size_t>(std::ceil(cfg.tau / cfg.dt - 1e-9));
  const double dt = cfg.tau / static_cast<double>(n_steps);
  const double t0 = -0.5 * cfg.tau;

  // Deterministic half steps are shared by every realization.
  std::vector<ComplexMatrix> half_steps;
  half_steps.reserve(n_steps);
  for (std::size_t k = 0; k < n_steps; ++k) {
    const double t_mid = t0 + (static_cast<double>(k) + 0.5) * dt;
    half_steps.push_back(unitary_exponential(h(t_mid), 0.5 * dt));
  }

  std::mt19937_64 rng(cfg.seed);
  const double sigma = std::sqrt(cfg.alpha / dt);
  std::normal_distribution<double> eta(0.0, sigma > 0.0 ? sigma : 1.0);

  ComplexMatrix sum(dim);
  ComplexMatrix sum_sq(dim);  // (sum re^2, sum im^2) packed as a complex
  std::vector<Complex> psi(dim), tmp(dim);
  const auto apply = [&](const ComplexMatrix& u) {
    for (std::size_t i = 0; i < dim; ++i) {
      Complex acc{};
      for (std::size_t j = 0; j < dim; ++j) acc += u(i, j) * psi[j];
      tmp[i] = acc;
    }
    psi.swap(tmp);
  };

  for (std::size_t sample = 0; sample < cfg.n_samples; ++sample) {
    std::copy(psi0.amplitudes().begin(), psi0.amplitudes().end(), psi.begin());
    for (std::size_t k = 0; k < n_steps; ++k) {
      apply(half_steps[k]);
      if (sigma > 0.0) {
        const double kick = eta(rng) * dt;
        for (std::size_t i = 0; i < dim; ++i) psi[i] *= std::exp(-kI * (kick * noise_diag[i]));
      }
      apply(half_steps[k]);
    }
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        const Complex v = psi[i] * std::conj(psi[j]);
        sum(i, j) += v;
        sum_sq(i, j) += Complex{v.real() * v.real(), v.imag() * v.imag()};
      }
    }
  }

  const double n = static_cast<double>(cfg.n_samples);
  ComplexMatrix mean = (1.0 / n) * sum;
  ComplexMatrix err(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const Complex m = mean(i, j);
      const double var_re = std::max(0.0, sum_sq(i, j).real() / n - m.real() * m.real());
      const double var_im = std::max(0.0, sum_sq(i, j).imag() / n - m.imag() * m.imag());
      // Unbiased sample variance, then the standard error of the mean.
      err(i, j) = Complex{std::sqrt(var_re * n / (n - 1.0) / n), std::sqrt(var_im * n / (n - 1.0) / n)};
    }
  }
  Tolerances relaxed = kTolerances;
  relaxed.dm_trace = 1e-9;
  return NoiseAverage{DensityMatrix(std::move(mean), relaxed), std::move(err), cfg.n_samples};
}

// --- populations ---------------------------------------------------------

double ground_state_probability(const StateVector& psi, const CnotParams& params, double j2) {
  const auto n_qubits = static_cast<std::size_t>(std::countr_zero(psi.dim()));
  const StateVector ground = embed_sector(sector_eigenstates(params.g, j2).ground, n_qubits);
  return std::norm(inner(ground, psi));
}

double ground_state_population(const DensityMatrix& rho, const CnotParams& params, double j2) {
  const auto n_qubits = static_cast<std::size_t>(std::countr_zero(rho.dim()));
  const StateVector ground = embed_sector(sector_eigenstates(params.g, j2).ground, n_qubits);
  return inner(ground, matrix_apply(rho.entries(), ground)).real();
}

}  // namespace cdgate
