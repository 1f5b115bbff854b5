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

// Hamiltonians for the driven CNOT construction: the two-qubit ZX model, its
// closed-form spectrum, the effective Landau-Zener block, counterdiabatic
// fields, the inverse-engineered gate Hamiltonian and the N-qubit family.

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "cdgate/numerics.hpp"

namespace cdgate {

// Physical constants of H_CNOT = j1 sz1 + J2(t) sz2 + (g/2)(sz1 - 1) sx2.
// Defaults are the figure parameters J1 = 1, g = 0.5, J2 = 10.
struct CnotParams {
  double j1 = 1.0;
  double g = 0.5;
  double j2_amp = 10.0;

  // Throws InvalidParams unless j1 > 0, g > 0, j2_amp != 0 (all finite).
  void validate() const;
  // Set when |j2_amp| is not well above j1 and g; advisory only.
  std::optional<std::string> regime_warning() const;

  friend bool operator==(const CnotParams&, const CnotParams&) = default;
};

enum class DriveKind { linear, custom };

// A scalar control J(t) on t in [-tau/2, +tau/2] together with dJ/dt.
class DriveSchedule {
 public:
  using Fn = std::function<double(double)>;

  DriveSchedule(Fn value, Fn derivative, double tau, DriveKind kind = DriveKind::custom);

  double value(double t) const { return value_(t); }
  double derivative(double t) const { return derivative_(t); }
  double tau() const { return tau_; }
  double t_start() const { return -0.5 * tau_; }
  double t_end() const { return 0.5 * tau_; }
  DriveKind kind() const { return kind_; }

 private:
  Fn value_;
  Fn derivative_;
  double tau_;
  DriveKind kind_;
};

// J2(t) = j2_amp t / tau, reaching +-j2_amp/2 at the endpoints. With
// full_range_ramp the slope doubles so the endpoints are +-j2_amp.
// Throws NonPositiveTau.
DriveSchedule linear_ramp(const CnotParams& params, double tau, bool full_range_ramp = false);

// phi(t) = 2 n pi + pi (t + tau/2) / tau, so phi(-tau/2) = 2 n pi and
// phi(tau/2) = (2n + 1) pi.
DriveSchedule linear_phase(double tau, int n_offset = 0);

// Instantaneous eigensystem, labelled as E1..E4 (not sorted): E1, E2 live in
// the {|10>,|11>} sector, E3 = K-, E4 = K+ belong to |01> and |00>.
struct SpectrumSnapshot {
  std::array<double, 4> energies{};
  std::array<StateVector, 4> states;
  double alpha_plus = 0.0;
  double alpha_minus = 0.0;
  double k_plus = 0.0;
  double k_minus = 0.0;
  double gap = 0.0;  // E2 - E1
};

ComplexMatrix build_h_cnot(const CnotParams& params, double j2);
SpectrumSnapshot analytic_spectrum(const CnotParams& params, double j2);

// J2 sz - g sx - j1 1 on the ordered sector basis (|10>, |11>).
ComplexMatrix effective_lz(const CnotParams& params, double j2);

// Two-level eigenvectors of the sector block: ground = (-a-, g)/n,
// excited = (-a+, g)/n. Independent of j1.
struct SectorStates {
  StateVector ground;
  StateVector excited;
};
SectorStates sector_eigenstates(double g, double j2);

// Places a two-level sector state on the last two basis vectors
// |1..10>, |1..11> of an n-qubit register.
StateVector embed_sector(const StateVector& two_level, std::size_t n_qubits);

// -[g J2' / (4 (g^2 + J2^2))] (sz1 - 1) (x) sy2.
ComplexMatrix build_h_cd_analytic(const CnotParams& params, double j2, double j2dot);

// i sum_{m != n} <m|hdot|n> / (E_n - E_m) |m><n| over the eigenbasis of h.
// A pair closer than gap_tol with |<m|hdot|n>| >= elem_tol throws
// GapCollision; closer pairs with a smaller element contribute nothing.
ComplexMatrix build_h_cd_spectral(const ComplexMatrix& h, const ComplexMatrix& hdot,
                                  double gap_tol, double elem_tol);
// Same, with gap_tol = cd_gap_relative * max(1, max |E|) and
// elem_tol = cd_element from the tolerance record.
ComplexMatrix build_h_cd_spectral(const ComplexMatrix& h, const ComplexMatrix& hdot,
                                  const Tolerances& tol = kTolerances);

// -(phi'/4)(sz1 - 1)(sx2 - 1).
ComplexMatrix build_inverse_engineered(double phidot);

// U_CNOT in the basis |00>, |01>, |10>, |11>.
ComplexMatrix cnot_unitary();

// J sum_{i<n} sz_i + j_n sz_n - g [prod_{i<n} (1 - sz_i)/2] sx_n.
// Throws DimensionTooLarge for n > 6, InvalidParams for n < 2.
ComplexMatrix build_h_n(std::size_t n, double j, double j_n, double g);

// [g J_n' / (2 (g^2 + J_n^2))] [prod_{i<n} (1 - sz_i)/2] sy_n.
ComplexMatrix build_h_cd_n(std::size_t n, double g, double j_n, double j_n_dot);

using HamiltonianFn = std::function<ComplexMatrix(double)>;

// H(t) = H_CNOT(J2(t)) [+ H_CD(J2(t), J2'(t))].
HamiltonianFn cnot_hamiltonian(const CnotParams& params, const DriveSchedule& drive, bool with_cd);

// H(t) = H^(N)(J_N(t)) [+ H_CD^(N)], with J = params.j1.
HamiltonianFn n_qubit_hamiltonian(std::size_t n, const CnotParams& params,
                                  const DriveSchedule& drive, bool with_cd);

// H(t) = build_inverse_engineered(phi'(t)).
HamiltonianFn inverse_engineered_hamiltonian(const DriveSchedule& phase);

}  // namespace cdgate
