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

#include "cdgate/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cdgate/errors.hpp"

namespace cdgate {

namespace {

constexpr std::size_t kMaxQubits = 6;

void check_qubit_count(std::size_t n) {
  if (n > kMaxQubits) {
    throw DimensionTooLarge("n-qubit builders support at most 6 qubits, got " + num(n));
  }
  if (n < 2) throw InvalidParams("n-qubit builders need at least 2 qubits");
}

// Stable alpha_+- = J2 +- sqrt(g^2 + J2^2); the small root is taken from
// alpha_+ alpha_- = -g^2 to avoid cancellation at large |J2|.
std::pair<double, double> alphas(double g, double j2) {
  const double r = std::hypot(g, j2);
  if (j2 >= 0.0) {
    const double plus = j2 + r;
    return {plus, -g * g / plus};
  }
  const double minus = j2 - r;
  return {-g * g / minus, minus};
}

StateVector sector_vector(double alpha, double g) {
  const double n = std::hypot(g, alpha);
  return StateVector{-alpha / n, g / n};
}

// (1 - sz)/2 on each of the first n-1 qubits, identity on the last.
ComplexMatrix control_projector(std::size_t n) {
  const ComplexMatrix p1{{0.0, 0.0}, {0.0, 1.0}};
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (std::size_t i = 0; i + 1 < n; ++i) out = kron(out, p1);
  return out;
}

}  // namespace

// --- params and schedules ------------------------------------------------

void CnotParams::validate() const {
  if (!std::isfinite(j1) || !std::isfinite(g) || !std::isfinite(j2_amp)) {
    throw InvalidParams("CnotParams: non-finite value");
  }
  if (j1 <= 0.0) throw InvalidParams("CnotParams: j1 must be > 0");
  if (g <= 0.0) throw InvalidParams("CnotParams: g must be > 0");
  if (j2_amp == 0.0) throw InvalidParams("CnotParams: j2_amp must be nonzero");
}

std::optional<std::string> CnotParams::regime_warning() const {
  const double scale = std::max(j1, g);
  if (std::abs(j2_amp) >= 5.0 * scale) return std::nullopt;
  std::ostringstream os;
  os << "|j2_amp| = " << std::abs(j2_amp) << " is not well above max(j1, g) = " << scale
     << "; endpoint eigenstates will differ noticeably from |10> and |11>";
  return os.str();
}

DriveSchedule::DriveSchedule(Fn value, Fn derivative, double tau, DriveKind kind)
    : value_(std::move(value)), derivative_(std::move(derivative)), tau_(tau), kind_(kind) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw NonPositiveTau("drive schedule needs tau > 0, got " + num(tau));
  }
}

DriveSchedule linear_ramp(const CnotParams& params, double tau, bool full_range_ramp) {
  if (!(tau > 0.0)) throw NonPositiveTau("linear_ramp: tau must be > 0, got " + num(tau));
  const double slope = (full_range_ramp ? 2.0 : 1.0) * params.j2_amp / tau;
  return DriveSchedule([slope](double t) { return slope * t; },
                       [slope](double) { return slope; }, tau, DriveKind::linear);
}

DriveSchedule linear_phase(double tau, int n_offset) {
  if (!(tau > 0.0)) throw NonPositiveTau("linear_phase: tau must be > 0, got " + num(tau));
  const double pi = std::numbers::pi;
  const double base = 2.0 * pi * n_offset;
  return DriveSchedule([=](double t) { return base + pi * (t + 0.5 * tau) / tau; },
                       [=](double) { return pi / tau; }, tau, DriveKind::linear);
}

// --- two-qubit model -----------------------------------------------------

ComplexMatrix build_h_cnot(const CnotParams& params, double j2) {
  const double kp = params.j1 + j2;
  const double km = params.j1 - j2;
  ComplexMatrix h(4);
  h(0, 0) = kp;
  h(1, 1) = km;
  h(2, 2) = -km;
  h(3, 3) = -kp;
  h(2, 3) = -params.g;
  h(3, 2) = -params.g;
  return h;
}

SpectrumSnapshot analytic_spectrum(const CnotParams& params, double j2) {
  SpectrumSnapshot s;
  const auto [ap, am] = alphas(params.g, j2);
  s.alpha_plus = ap;
  s.alpha_minus = am;
  s.k_plus = params.j1 + j2;
  s.k_minus = params.j1 - j2;
  s.energies = {-ap - s.k_minus, ap - s.k_plus, s.k_minus, s.k_plus};
  s.states[0] = embed_sector(sector_vector(am, params.g), 2);
  s.states[1] = embed_sector(sector_vector(ap, params.g), 2);
  s.states[2] = StateVector::basis(4, 1);
  s.states[3] = StateVector::basis(4, 0);
  s.gap = 2.0 * std::hypot(params.g, j2);
  return s;
}

ComplexMatrix effective_lz(const CnotParams& params, double j2) {
  return ComplexMatrix{{j2 - params.j1, -params.g}, {-params.g, -j2 - params.j1}};
}

SectorStates sector_eigenstates(double g, double j2) {
  const auto [ap, am] = alphas(g, j2);
  return {sector_vector(am, g), sector_vector(ap, g)};
}

StateVector embed_sector(const StateVector& two_level, std::size_t n_qubits) {
  if (two_level.dim() != 2) throw DimensionMismatch("embed_sector: expected a two-level state");
  StateVector out(std::size_t{1} << n_qubits);
  out[out.dim() - 2] = two_level[0];
  out[out.dim() - 1] = two_level[1];
  return out;
}

ComplexMatrix build_h_cd_analytic(const CnotParams& params, double j2, double j2dot) {
  const double g = params.g;
  const double prefactor = -g * j2dot / (4.0 * (g * g + j2 * j2));
  const ComplexMatrix left = pauli::z() - pauli::identity();
  return prefactor * kron(left, pauli::y());
}

ComplexMatrix build_h_cd_spectral(const ComplexMatrix& h, const ComplexMatrix& hdot,
                                  double gap_tol, double elem_tol) {
  if (h.dim() != hdot.dim()) throw DimensionMismatch("build_h_cd_spectral: h and hdot differ in size");
  if (hermiticity_defect(hdot) > kTolerances.hermiticity * std::max(1.0, frobenius_norm(hdot))) {
    throw NotHermitian("build_h_cd_spectral: hdot is not Hermitian");
  }
  const EigenDecomposition eig = hermitian_eig(h);
  const std::size_t n = h.dim();

  // hdot in the eigenbasis: V^dagger hdot V.
  const ComplexMatrix hdot_eig = matmul(dagger(eig.eigenvectors), matmul(hdot, eig.eigenvectors));

  ComplexMatrix coeff(n);  // coefficients in the eigenbasis
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      if (m == k) continue;
      const Complex elem = hdot_eig(m, k);
      const double gap = eig.eigenvalues[k] - eig.eigenvalues[m];
      if (std::abs(gap) < gap_tol) {
        if (std::abs(elem) >= elem_tol) {
          std::ostringstream os;
          os << "build_h_cd_spectral: levels " << m << " and " << k << " are " << std::abs(gap)
             << " apart with coupling " << std::abs(elem);
          throw GapCollision(os.str());
        }
        continue;
      }
      coeff(m, k) = kI * elem / gap;
    }
  }
  return matmul(eig.eigenvectors, matmul(coeff, dagger(eig.eigenvectors)));
}

ComplexMatrix build_h_cd_spectral(const ComplexMatrix& h, const ComplexMatrix& hdot,
                                  const Tolerances& tol) {
  double scale = 1.0;
  for (std::size_t i = 0; i < h.dim(); ++i) scale = std::max(scale, std::abs(h(i, i)));
  scale = std::max(scale, frobenius_norm(h));
  return build_h_cd_spectral(h, hdot, tol.cd_gap_relative * scale, tol.cd_element);
}

ComplexMatrix build_inverse_engineered(double phidot) {
  const ComplexMatrix left = pauli::z() - pauli::identity();
  const ComplexMatrix right = pauli::x() - pauli::identity();
  return (-phidot / 4.0) * kron(left, right);
}

ComplexMatrix cnot_unitary() {
  return ComplexMatrix{{1.0, 0.0, 0.0, 0.0},
                       {0.0, 1.0, 0.0, 0.0},
                       {0.0, 0.0, 0.0, 1.0},
                       {0.0, 0.0, 1.0, 0.0}};
}

// --- N-qubit family ------------------------------------------------------

ComplexMatrix build_h_n(std::size_t n, double j, double j_n, double g) {
  check_qubit_count(n);
  ComplexMatrix h(std::size_t{1} << n);
  for (std::size_t i = 0; i + 1 < n; ++i) h += j * pauli::on_qubit(pauli::z(), i, n);
  h += j_n * pauli::on_qubit(pauli::z(), n - 1, n);
  h -= g * kron(control_projector(n), pauli::x());
  return h;
}

ComplexMatrix build_h_cd_n(std::size_t n, double g, double j_n, double j_n_dot) {
  check_qubit_count(n);
  const double prefactor = g * j_n_dot / (2.0 * (g * g + j_n * j_n));
  return prefactor * kron(control_projector(n), pauli::y());
}

// --- time-dependent Hamiltonians ----------------------------------------

HamiltonianFn cnot_hamiltonian(const CnotParams& params, const DriveSchedule& drive, bool with_cd) {
  return [params, drive, with_cd](double t) {
    const double j2 = drive.value(t);
    ComplexMatrix h = build_h_cnot(params, j2);
    if (with_cd) {
      // Only the sector block is nonzero: prefactor * (-2) * sy.
      const double g = params.g;
      const double c = g * drive.derivative(t) / (2.0 * (g * g + j2 * j2));
      h(2, 3) += -kI * c;
      h(3, 2) += kI * c;
    }
    return h;
  };
}

HamiltonianFn n_qubit_hamiltonian(std::size_t n, const CnotParams& params,
                                  const DriveSchedule& drive, bool with_cd) {
  check_qubit_count(n);
  const ComplexMatrix base = build_h_n(n, params.j1, 0.0, params.g);
  const ComplexMatrix z_last = pauli::on_qubit(pauli::z(), n - 1, n);
  const ComplexMatrix cd_unit = kron(control_projector(n), pauli::y());
  const double g = params.g;
  return [=](double t) {
    const double jn = drive.value(t);
    ComplexMatrix h = base + jn * z_last;
    if (with_cd) h += (g * drive.derivative(t) / (2.0 * (g * g + jn * jn))) * cd_unit;
    return h;
  };
}

HamiltonianFn inverse_engineered_hamiltonian(const DriveSchedule& phase) {
  return [phase](double t) { return build_inverse_engineered(phase.derivative(t)); };
}

}  // namespace cdgate
