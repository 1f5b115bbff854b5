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

#include "cdgate/numerics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "cdgate/errors.hpp"

namespace cdgate {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " + num(a) +
                            " vs " + num(b));
  }
}

void require_power_of_two(std::size_t dim) {
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw DimensionMismatch("state dimension must be a positive power of two, got " +
                            num(dim));
  }
}

}  // namespace

// --- StateVector ---------------------------------------------------------

StateVector::StateVector(std::size_t dim) : amps_(dim) { require_power_of_two(dim); }

StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  require_power_of_two(amps_.size());
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes) : amps_(amplitudes) {
  require_power_of_two(amps_.size());
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  StateVector v(dim);
  if (index >= dim) {
    throw DimensionMismatch("basis index " + num(index) + " out of range");
  }
  v[index] = 1.0;
  return v;
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

// --- ComplexMatrix -------------------------------------------------------

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()), data_() {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    require_same_dim(row.size(), dim_, "ComplexMatrix initializer (non-square)");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(const StateVector& ket, const StateVector& bra) {
  require_same_dim(ket.dim(), bra.dim(), "outer");
  ComplexMatrix m(ket.dim());
  for (std::size_t r = 0; r < ket.dim(); ++r) {
    for (std::size_t c = 0; c < bra.dim(); ++c) m(r, c) = ket[r] * std::conj(bra[c]);
  }
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(dim_, other.dim_, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(dim_, other.dim_, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& x : data_) x *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

// --- products and norms --------------------------------------------------

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < nb; ++k) {
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "matmul");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

StateVector matrix_apply(const ComplexMatrix& m, const StateVector& v) {
  require_same_dim(m.dim(), v.dim(), "matrix_apply");
  StateVector out(v.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Complex s{};
    for (std::size_t j = 0; j < m.dim(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& m) {
  ComplexMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) out(j, i) = std::conj(m(i, j));
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b) - matmul(b, a);
}

Complex trace(const ComplexMatrix& m) {
  Complex s{};
  for (std::size_t i = 0; i < m.dim(); ++i) s += m(i, i);
  return s;
}

Complex inner(const StateVector& a, const StateVector& b) {
  require_same_dim(a.dim(), b.dim(), "inner");
  Complex s{};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& x : m.data()) s += std::norm(x);
  return std::sqrt(s);
}

double frobenius_distance(const ComplexMatrix& u, const ComplexMatrix& v) {
  require_same_dim(u.dim(), v.dim(), "frobenius_distance");
  return frobenius_norm(u - v);
}

double phase_insensitive_distance(const ComplexMatrix& u, const ComplexMatrix& v) {
  require_same_dim(u.dim(), v.dim(), "phase_insensitive_distance");
  Complex overlap{};  // tr(U^dagger V)
  for (std::size_t i = 0; i < u.data().size(); ++i) overlap += std::conj(u.data()[i]) * v.data()[i];
  const double mag = std::abs(overlap);
  const Complex phase = mag > 0.0 ? std::conj(overlap) / mag : Complex{1.0, 0.0};
  return frobenius_norm(u - phase * v);
}

double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (const auto& x : m.data()) best = std::max(best, std::abs(x));
  return best;
}

double hermiticity_defect(const ComplexMatrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = i; j < m.dim(); ++j) {
      best = std::max(best, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return best;
}

double unitarity_defect(const ComplexMatrix& u) {
  return max_abs(matmul(dagger(u), u) - ComplexMatrix::identity(u.dim()));
}

// --- eigensolver ---------------------------------------------------------

StateVector EigenDecomposition::vector(std::size_t k) const {
  const std::size_t n = eigenvectors.dim();
  std::vector<Complex> col(n);
  for (std::size_t i = 0; i < n; ++i) col[i] = eigenvectors(i, k);
  return StateVector(std::move(col));
}

namespace {

constexpr std::size_t kMaxEigDim = 64;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm_sq(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = i + 1; j < a.dim(); ++j) s += std::norm(a(i, j));
  }
  return 2.0 * s;
}

// Zero a(p,q) with the unitary G = diag(1, e^{-i phi}) * R(c, s) acting on
// columns p, q, where a(p,q) = |a(p,q)| e^{i phi}.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  const Complex phase = apq / mag;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex g_pp = c;
  const Complex g_pq = s;
  const Complex g_qp = -s * std::conj(phase);
  const Complex g_qq = c * std::conj(phase);

  const std::size_t n = a.dim();
  // A <- A G (columns)
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * g_pp + akq * g_qp;
    a(k, q) = akp * g_pq + akq * g_qq;
  }
  // A <- G^dagger A (rows)
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
    a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * g_pp + vkq * g_qp;
    v(k, q) = vkp * g_pq + vkq * g_qq;
  }
}

void fix_phase(ComplexMatrix& v, std::size_t col) {
  const std::size_t n = v.dim();
  double biggest = 0.0;
  for (std::size_t i = 0; i < n; ++i) biggest = std::max(biggest, std::abs(v(i, col)));
  if (biggest == 0.0) return;
  std::size_t pick = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(v(i, col)) >= biggest * (1.0 - 1e-9)) {
      pick = i;
      break;
    }
  }
  const Complex rot = std::conj(v(pick, col)) / std::abs(v(pick, col));
  for (std::size_t i = 0; i < n; ++i) v(i, col) *= rot;
  v(pick, col) = std::abs(v(pick, col));
}

}  // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& h, const Tolerances& tol) {
  const std::size_t n = h.dim();
  if (n == 0) throw DimensionMismatch("hermitian_eig: empty matrix");
  if (n > kMaxEigDim) {
    throw DimensionTooLarge("hermitian_eig: dimension " + num(n) + " exceeds 64");
  }
  const double scale = frobenius_norm(h);
  const double asym = hermiticity_defect(h);
  if (asym > tol.hermiticity * scale) {
    throw NotHermitian("hermitian_eig: |h - h^dagger| = " + num(asym));
  }

  ComplexMatrix a = h;
  // Symmetrize so that the rotations act on an exactly Hermitian matrix.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double stop = std::pow(1e-17 * std::max(scale, 1e-300), 2);
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm_sq(a) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const double diag = std::abs(a(p, p).real()) + std::abs(a(q, q).real());
        // Below round-off relative to both diagonals: drop it.
        if (sweep > 3 && diag > 0.0 && mag <= 1e-18 * diag) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        jacobi_rotate(a, v, p, q);
      }
    }
  }
  if (sweep == kMaxSweeps && off_diagonal_norm_sq(a) > stop) {
    throw NoConvergence("hermitian_eig: off-diagonal norm " +
                        num(std::sqrt(off_diagonal_norm_sq(a))) + " after " +
                        num(kMaxSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    fix_phase(out.eigenvectors, k);
  }

  // Residual guard; the tighter 1e-12 bound is exercised by the tests.
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex hv{};
      for (std::size_t j = 0; j < n; ++j) hv += h(i, j) * out.eigenvectors(j, k);
      r += std::norm(hv - out.eigenvalues[k] * out.eigenvectors(i, k));
    }
    worst = std::max(worst, std::sqrt(r));
  }
  if (worst > 1e3 * tol.eig_residual * std::max(scale, 1.0)) {
    throw NoConvergence("hermitian_eig: residual " + num(worst));
  }
  return out;
}

ComplexMatrix unitary_exponential(const ComplexMatrix& h, double t) {
  const EigenDecomposition eig = hermitian_eig(h);
  const std::size_t n = h.dim();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex phase = std::exp(-kI * eig.eigenvalues[k] * t);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.eigenvectors(i, k) * phase;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

// --- Pauli operators -----------------------------------------------------

namespace pauli {

ComplexMatrix identity() { return ComplexMatrix::identity(2); }
ComplexMatrix x() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return ComplexMatrix{{0.0, -kI}, {kI, 0.0}}; }
ComplexMatrix z() { return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix on_qubit(const ComplexMatrix& op, std::size_t qubit, std::size_t n_qubits) {
  if (qubit >= n_qubits) {
    throw DimensionMismatch("on_qubit: qubit " + num(qubit) + " of " +
                            num(n_qubits));
  }
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (std::size_t i = 0; i < n_qubits; ++i) out = kron(out, i == qubit ? op : identity());
  return out;
}

}  // namespace pauli

}  // namespace cdgate
