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

// Dense complex linear algebra for small (2^N x 2^N, N <= 6) quantum operators.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cdgate {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

// Every numerical threshold used across the library, in one place.
struct Tolerances {
  // hermitian_eig: accepted asymmetry |h - h^dagger|_max relative to |h|_F.
  double hermiticity = 1e-10;
  // hermitian_eig: post-condition residual |H v - lambda v| relative to |H|_F.
  double eig_residual = 1e-12;
  // Propagators: |U^dagger U - 1|_max.
  double unitarity = 1e-8;
  // Pure runs: max | |psi|^2 - 1 | before the run is flagged failed.
  double norm_drift = 1e-8;
  // Mixed runs: max |tr rho - 1|.
  double trace_drift = 1e-8;
  // Mixed runs: smallest eigenvalue of rho allowed during integration.
  double positivity = 1e-6;
  // DensityMatrix validation.
  double dm_hermiticity = 1e-10;
  double dm_trace = 1e-8;
  double dm_min_eigenvalue = 1e-8;
  // Initial states and fidelity targets: | |psi|^2 - 1 |. Evolved states
  // passed to fidelities are held to norm_drift instead.
  double normalization = 1e-10;
  // Spectral counterdiabatic term: degeneracy gap relative to the energy
  // scale, and the matrix-element floor below which a degenerate pair is
  // treated as decoupled.
  double cd_gap_relative = 1e-8;
  double cd_element = 1e-10;
  // Probabilities may exceed 1 by at most this much (round-off).
  double probability_slack = 1e-10;
};

inline constexpr Tolerances kTolerances{};

// Pure state with 2^N amplitudes. Operations that need unit norm check it
// themselves; the type does not.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t dim);
  explicit StateVector(std::vector<Complex> amplitudes);
  StateVector(std::initializer_list<Complex> amplitudes);

  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  Complex operator[](std::size_t i) const { return amps_[i]; }
  Complex& operator[](std::size_t i) { return amps_[i]; }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }

  double norm_squared() const;

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::vector<Complex> amps_;
};

// Square, row-major dense matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> entries);
  static ComplexMatrix outer(const StateVector& ket, const StateVector& bra);

  std::size_t dim() const { return dim_; }
  Complex operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  std::span<const Complex> data() const { return data_; }
  std::span<Complex> data() { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);

// Kronecker product; qubit 1 is the leftmost factor.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
StateVector matrix_apply(const ComplexMatrix& m, const StateVector& v);
ComplexMatrix dagger(const ComplexMatrix& m);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
Complex trace(const ComplexMatrix& m);

// <a|b>
Complex inner(const StateVector& a, const StateVector& b);

double frobenius_norm(const ComplexMatrix& m);
double frobenius_distance(const ComplexMatrix& u, const ComplexMatrix& v);

// min over phi of |U - e^{i phi} V|_F. Equal to
// sqrt(|U|^2 + |V|^2 - 2 |tr(U^dagger V)|), but evaluated at the optimal
// phase directly so that distances near zero keep full precision.
double phase_insensitive_distance(const ComplexMatrix& u, const ComplexMatrix& v);

// Largest |m_ij|.
double max_abs(const ComplexMatrix& m);
// Largest |m_ij - conj(m_ji)|.
double hermiticity_defect(const ComplexMatrix& m);
// Largest |(U^dagger U - 1)_ij|.
double unitarity_defect(const ComplexMatrix& u);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]

  StateVector vector(std::size_t k) const;
};

// Cyclic complex Jacobi. Eigenvalues ascending; each eigenvector's
// largest-magnitude component (first one on ties) is real positive.
// Throws NotHermitian, DimensionTooLarge (dim > 64), NoConvergence.
EigenDecomposition hermitian_eig(const ComplexMatrix& h,
                                 const Tolerances& tol = kTolerances);

// exp(-i h t) for Hermitian h via its eigendecomposition.
ComplexMatrix unitary_exponential(const ComplexMatrix& h, double t);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
// Single-qubit operator acting on `qubit` (0-based, leftmost = 0) of an
// n_qubits register.
ComplexMatrix on_qubit(const ComplexMatrix& op, std::size_t qubit, std::size_t n_qubits);
}  // namespace pauli

}  // namespace cdgate
