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

#include <cmath>
#include <numbers>
#include <random>

#include "cdgate/errors.hpp"
#include "cdgate/model.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace cdgate {
namespace {

const CnotParams kDefault{};

// Largest |<a|b>|^2 deviation from 1 for normalized vectors, which is
// insensitive to the eigenvector phase.
double overlap_defect(const StateVector& a, const StateVector& b) {
  return std::abs(1.0 - std::norm(inner(a, b)));
}

bool sectors_decoupled(const ComplexMatrix& m) {
  for (std::size_t r : {0u, 1u}) {
    for (std::size_t c : {2u, 3u}) {
      if (m(r, c) != Complex{} || m(c, r) != Complex{}) return false;
    }
  }
  return true;
}

ComplexMatrix hdot_cnot(double j2dot) {
  return Complex(j2dot) * kron(pauli::identity(), pauli::z());
}

TEST_CASE("linear ramp values and derivative") {
  const DriveSchedule d = linear_ramp(kDefault, 20.0);
  CHECK(d.value(0.0) == 0.0);
  CHECK(d.value(10.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(d.value(-10.0) == doctest::Approx(-5.0).epsilon(1e-15));
  CHECK(d.derivative(3.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d.t_start() == -10.0);
  CHECK(d.t_end() == 10.0);
  CHECK(d.kind() == DriveKind::linear);
  const DriveSchedule full = linear_ramp(kDefault, 20.0, true);
  CHECK(full.value(10.0) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK_THROWS_AS(linear_ramp(kDefault, 0.0), NonPositiveTau);
  CHECK_THROWS_AS(linear_ramp(kDefault, -1.0), NonPositiveTau);
}

TEST_CASE("drive derivatives agree with finite differences") {
  for (const DriveSchedule& d : {linear_ramp(kDefault, 7.0), linear_ramp(kDefault, 7.0, true),
                                 linear_phase(3.0), linear_phase(3.0, 2)}) {
    for (int k = 0; k <= 20; ++k) {
      const double t = d.t_start() + (d.t_end() - d.t_start()) * k / 20.0;
      const double h = 1e-5;
      const double fd = (d.value(t + h) - d.value(t - h)) / (2 * h);
      CHECK(std::abs(fd - d.derivative(t)) <= 1e-6 * std::max(1.0, std::abs(d.derivative(t))));
    }
  }
}

TEST_CASE("linear phase endpoints") {
  const DriveSchedule p = linear_phase(2.0, 1);
  CHECK(p.value(-1.0) == doctest::Approx(2 * std::numbers::pi));
  CHECK(p.value(1.0) == doctest::Approx(3 * std::numbers::pi));
  CHECK(p.derivative(0.0) == doctest::Approx(std::numbers::pi / 2.0));
}

TEST_CASE("H_CNOT at J2 = 0") {
  const ComplexMatrix h = build_h_cnot(kDefault, 0.0);
  ComplexMatrix expected(4);
  expected(0, 0) = 1.0;
  expected(1, 1) = 1.0;
  expected(2, 2) = -1.0;
  expected(3, 3) = -1.0;
  expected(2, 3) = -0.5;
  expected(3, 2) = -0.5;
  CHECK(h == expected);
}

TEST_CASE("H_CNOT at J2 = 5") {
  const ComplexMatrix h = build_h_cnot(kDefault, 5.0);
  CHECK(h(0, 0) == Complex(6.0));
  CHECK(h(1, 1) == Complex(-4.0));
  CHECK(h(2, 2) == Complex(4.0));
  CHECK(h(3, 3) == Complex(-6.0));
  CHECK(h(2, 3) == Complex(-0.5));
  CHECK(h(0, 1) == Complex{});
}

TEST_CASE("H_CNOT matches the Pauli-operator definition") {
  for (double j2 : {-7.0, -0.3, 0.0, 2.0, 11.0}) {
    const CnotParams p{1.3, 0.4, 10.0};
    const ComplexMatrix z1 = kron(pauli::z(), pauli::identity());
    const ComplexMatrix z2 = kron(pauli::identity(), pauli::z());
    const ComplexMatrix zx = kron(pauli::z() - pauli::identity(), pauli::x());
    const ComplexMatrix ref = Complex(p.j1) * z1 + Complex(j2) * z2 + Complex(p.g / 2) * zx;
    CHECK(frobenius_distance(build_h_cnot(p, j2), ref) < 1e-15);
  }
}

TEST_CASE("every builder leaves the control sectors uncoupled") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int trial = 0; trial < 50; ++trial) {
    const double j2 = u(rng);
    const double j2dot = u(rng);
    CHECK(sectors_decoupled(build_h_cnot(kDefault, j2)));
    CHECK(sectors_decoupled(build_h_cd_analytic(kDefault, j2, j2dot)));
    CHECK(sectors_decoupled(build_inverse_engineered(j2dot)));
    CHECK(sectors_decoupled(build_h_n(2, kDefault.j1, j2, kDefault.g)));
    CHECK(sectors_decoupled(build_h_cd_n(2, kDefault.g, j2, j2dot)));
  }
}

TEST_CASE("analytic spectrum at J2 = 0") {
  const SpectrumSnapshot s = analytic_spectrum(kDefault, 0.0);
  CHECK(s.energies[0] == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(s.energies[1] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(s.energies[2] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.energies[3] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.gap == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("analytic spectrum at J2 = 5") {
  const SpectrumSnapshot s = analytic_spectrum(kDefault, 5.0);
  CHECK(s.energies[0] == doctest::Approx(-6.02494).epsilon(1e-6));
  CHECK(s.energies[1] == doctest::Approx(4.02494).epsilon(1e-6));
  CHECK(s.energies[2] == -4.0);
  CHECK(s.energies[3] == 6.0);
  CHECK(s.k_plus == 6.0);
  CHECK(s.k_minus == -4.0);
  const double p11 = std::norm(s.states[0][3]);
  CHECK(p11 == doctest::Approx(0.99752).epsilon(1e-5));
  const double am = s.alpha_minus;
  CHECK(p11 == doctest::Approx(0.25 / (0.25 + am * am)).epsilon(1e-14));
  // Numeric eigenvector cross-check.
  const EigenDecomposition e = hermitian_eig(build_h_cnot(kDefault, 5.0));
  CHECK(std::norm(e.vector(0)[3]) == doctest::Approx(p11).epsilon(1e-12));
}

TEST_CASE("analytic spectrum matches numeric diagonalization on a dense grid") {
  for (const CnotParams& p : {kDefault, CnotParams{1.0, 0.3, 10.0}, CnotParams{2.0, 1.5, -4.0}}) {
    for (int k = 0; k <= 400; ++k) {
      const double j2 = -12.0 + 24.0 * k / 400.0;
      const SpectrumSnapshot s = analytic_spectrum(p, j2);
      const EigenDecomposition e = hermitian_eig(build_h_cnot(p, j2));
      std::array<double, 4> sorted = s.energies;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(sorted[i] - e.eigenvalues[i]) < 1e-11);
      // Every analytic eigenvector satisfies the eigen-equation.
      const ComplexMatrix h = build_h_cnot(p, j2);
      for (std::size_t i = 0; i < 4; ++i) {
        StateVector r = matrix_apply(h, s.states[i]);
        for (std::size_t c = 0; c < 4; ++c) r[c] -= s.energies[i] * s.states[i][c];
        CHECK(std::sqrt(r.norm_squared()) < 1e-11);
        for (std::size_t j = 0; j < 4; ++j) {
          const double expected = i == j ? 1.0 : 0.0;
          CHECK(std::abs(inner(s.states[i], s.states[j]) - expected) < 1e-12);
        }
      }
      CHECK(s.states[2] == StateVector::basis(4, 1));
      CHECK(s.states[3] == StateVector::basis(4, 0));
      CHECK(s.energies[0] <= s.energies[1]);
      CHECK(s.gap == doctest::Approx(2.0 * std::hypot(p.g, j2)).epsilon(1e-14));
    }
  }
}

TEST_CASE("sector ground state follows the printed sign convention") {
  const SpectrumSnapshot s = analytic_spectrum(kDefault, 3.0);
  // |10> component is -a-/n with a- < 0, hence positive; |11> component g/n > 0.
  CHECK(s.states[0][2].real() > 0.0);
  CHECK(s.states[0][3].real() > 0.0);
  CHECK(s.states[0][2].imag() == 0.0);
}

TEST_CASE("ground state sits on the bare states at the ramp endpoints") {
  const SpectrumSnapshot lo = analytic_spectrum(kDefault, -5.0);
  const SpectrumSnapshot hi = analytic_spectrum(kDefault, 5.0);
  CHECK(std::norm(lo.states[0][2]) > 0.99);
  CHECK(std::norm(hi.states[0][3]) > 0.99);
}

TEST_CASE("gap is minimal at J2 = 0 with value 2g") {
  double best = 1e300;
  double where = 1e300;
  for (int k = -1000; k <= 1000; ++k) {
    const double j2 = k * 0.01;
    const double gap = analytic_spectrum(kDefault, j2).gap;
    if (gap < best) {
      best = gap;
      where = j2;
    }
  }
  CHECK(where == 0.0);
  CHECK(std::abs(best - 2.0 * kDefault.g) < 1e-12);
}

TEST_CASE("effective two-level Hamiltonian") {
  ComplexMatrix expected{{-1.0, -0.5}, {-0.5, -1.0}};
  CHECK(effective_lz(kDefault, 0.0) == expected);
  const auto e = hermitian_eig(effective_lz(kDefault, 5.0)).eigenvalues;
  const SpectrumSnapshot s = analytic_spectrum(kDefault, 5.0);
  CHECK(std::abs(e[0] - s.energies[0]) < 1e-12);
  CHECK(std::abs(e[1] - s.energies[1]) < 1e-12);
  for (double j2 : {-3.0, 0.0, 8.0}) CHECK(trace(effective_lz(kDefault, j2)) == Complex(-2.0));
  // The sector block of H_CNOT is the two-level Hamiltonian.
  const ComplexMatrix h = build_h_cnot(kDefault, 2.5);
  const ComplexMatrix lz = effective_lz(kDefault, 2.5);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) CHECK(h(2 + r, 2 + c) == lz(r, c));
  }
}

TEST_CASE("closed-form CD term") {
  CHECK(max_abs(build_h_cd_analytic(kDefault, 1.0, 0.0)) == 0.0);
  // g = 0.5, J2 = 0, J2' = 1: prefactor 1/(4g) = 0.5 multiplying (sz1 - 1) sy2,
  // whose sector block is -2 sy.
  const ComplexMatrix cd = build_h_cd_analytic(kDefault, 0.0, 1.0);
  CHECK(std::abs(cd(2, 3) - Complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(cd(3, 2) - Complex(0.0, 1.0)) < 1e-15);
  CHECK(hermiticity_defect(cd) == 0.0);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t k : {0u, 1u}) {
      CHECK(cd(i, k) == Complex{});
      CHECK(cd(k, i) == Complex{});
    }
  }
}

TEST_CASE("spectral CD reproduces the closed form at the reference point") {
  const ComplexMatrix h = build_h_cnot(kDefault, 2.0);
  const ComplexMatrix spectral = build_h_cd_spectral(h, hdot_cnot(0.7));
  const ComplexMatrix analytic = build_h_cd_analytic(kDefault, 2.0, 0.7);
  CHECK(max_abs(spectral - analytic) < 1e-10);
  CHECK(max_abs(build_h_cd_spectral(h, ComplexMatrix(4))) == 0.0);
}

TEST_CASE("spectral CD handles the decoupled crossing at J2 = 0") {
  const ComplexMatrix h = build_h_cnot(kDefault, 0.0);
  ComplexMatrix cd;
  CHECK_NOTHROW(cd = build_h_cd_spectral(h, hdot_cnot(1.3)));
  CHECK(max_abs(cd - build_h_cd_analytic(kDefault, 0.0, 1.3)) < 1e-10);
}

TEST_CASE("spectral CD raises on a coupled degeneracy") {
  // Degenerate pair coupled by hdot.
  const ComplexMatrix h = ComplexMatrix::identity(2);
  CHECK_THROWS_AS(build_h_cd_spectral(h, pauli::x()), GapCollision);
}

TEST_CASE("closed-form and spectral CD agree on a grid") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-10, 10);
  for (const CnotParams& p : {kDefault, CnotParams{1.0, 0.3, 10.0}, CnotParams{0.7, 2.0, 10.0}}) {
    for (int trial = 0; trial < 60; ++trial) {
      const double j2 = trial == 0 ? 0.0 : u(rng);
      const double j2dot = u(rng);
      const ComplexMatrix s = build_h_cd_spectral(build_h_cnot(p, j2), hdot_cnot(j2dot));
      CHECK(max_abs(s - build_h_cd_analytic(p, j2, j2dot)) < 1e-10);
    }
  }
}

TEST_CASE("inverse-engineered Hamiltonian") {
  CHECK(max_abs(build_inverse_engineered(0.0)) == 0.0);
  const double w = std::numbers::pi / 3.0;
  const ComplexMatrix h = build_inverse_engineered(w);
  const ComplexMatrix ref =
      Complex(-w / 4) * kron(pauli::z() - pauli::identity(), pauli::x() - pauli::identity());
  CHECK(frobenius_distance(h, ref) < 1e-15);
  // Sector block (w/2)(sx - 1): exp(-i h pi/w) = sx on the sector.
  const ComplexMatrix u = unitary_exponential(h, std::numbers::pi / w);
  CHECK(phase_insensitive_distance(u, cnot_unitary()) < 1e-12);
  const DriveSchedule phi = linear_phase(4.0);
  const HamiltonianFn hf = inverse_engineered_hamiltonian(phi);
  CHECK(hf(-2.0) == hf(1.3));
}

TEST_CASE("CNOT matrix") {
  const ComplexMatrix u = cnot_unitary();
  CHECK(u(0, 0) == Complex(1.0));
  CHECK(u(1, 1) == Complex(1.0));
  CHECK(u(2, 3) == Complex(1.0));
  CHECK(u(3, 2) == Complex(1.0));
  CHECK(unitarity_defect(u) == 0.0);
}

TEST_CASE("N-qubit builders reduce to the two-qubit ones") {
  for (double jn : {-6.0, 0.0, 5.0}) {
    const CnotParams p{1.0, 0.5, 10.0};
    CHECK(max_abs(build_h_n(2, 1.0, jn, 0.5) - build_h_cnot(p, jn)) < 1e-15);
    CHECK(max_abs(build_h_cd_n(2, 0.5, jn, 0.9) - build_h_cd_analytic(p, jn, 0.9)) < 1e-15);
  }
  CHECK(max_abs(build_h_cd_n(3, 0.5, 1.0, 0.0)) == 0.0);
}

TEST_CASE("three-qubit Hamiltonian structure") {
  const ComplexMatrix h = build_h_n(3, 1.0, 2.0, 0.5);
  for (std::size_t r = 0; r < 8; ++r) {
    for (std::size_t c = 0; c < 8; ++c) {
      if (r == c) continue;
      const bool in_sector = r >= 6 && c >= 6;
      if (!in_sector) CHECK(h(r, c) == Complex{});
    }
  }
  CHECK(h(6, 7) == Complex(-0.5));
  const auto e = hermitian_eig(build_h_n(3, 1.0, 0.0, 0.5)).eigenvalues;
  CHECK(e[0] == doctest::Approx(-2.5).epsilon(1e-13));
  CHECK(e[1] == doctest::Approx(-1.5).epsilon(1e-13));
}

TEST_CASE("N-qubit CD matches the spectral construction") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-8, 8);
  for (std::size_t n : {3u, 4u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const double jn = trial == 0 ? 0.0 : u(rng);
      const double jdot = u(rng);
      const ComplexMatrix hdot = Complex(jdot) * pauli::on_qubit(pauli::z(), n - 1, n);
      const ComplexMatrix s = build_h_cd_spectral(build_h_n(n, 1.0, jn, 0.5), hdot);
      CHECK(max_abs(s - build_h_cd_n(n, 0.5, jn, jdot)) < 1e-10);
    }
  }
}

TEST_CASE("N-qubit size limits") {
  CHECK_THROWS_AS(build_h_n(7, 1.0, 1.0, 0.5), DimensionTooLarge);
  CHECK_THROWS_AS(build_h_cd_n(7, 0.5, 1.0, 1.0), DimensionTooLarge);
  CHECK_THROWS_AS(build_h_n(1, 1.0, 1.0, 0.5), InvalidParams);
  CHECK_NOTHROW(build_h_n(6, 1.0, 1.0, 0.5));
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(kDefault.validate());
  CHECK_THROWS_AS((CnotParams{1.0, 0.0, 10.0}.validate()), InvalidParams);
  CHECK_THROWS_AS((CnotParams{-1.0, 0.5, 10.0}.validate()), InvalidParams);
  CHECK_THROWS_AS((CnotParams{1.0, 0.5, 0.0}.validate()), InvalidParams);
  CHECK_FALSE(kDefault.regime_warning().has_value());
  CHECK((CnotParams{1.0, 0.5, 2.0}.regime_warning().has_value()));
}

TEST_CASE("time-dependent Hamiltonians are the builders at J2(t)") {
  const DriveSchedule d = linear_ramp(kDefault, 8.0);
  const HamiltonianFn plain = cnot_hamiltonian(kDefault, d, false);
  const HamiltonianFn with_cd = cnot_hamiltonian(kDefault, d, true);
  for (double t : {-4.0, -1.0, 0.0, 2.5, 4.0}) {
    const double j2 = d.value(t);
    CHECK(max_abs(plain(t) - build_h_cnot(kDefault, j2)) < 1e-15);
    CHECK(max_abs(with_cd(t) - build_h_cnot(kDefault, j2) -
                  build_h_cd_analytic(kDefault, j2, d.derivative(t))) < 1e-15);
    const HamiltonianFn n2 = n_qubit_hamiltonian(2, kDefault, d, true);
    CHECK(max_abs(n2(t) - with_cd(t)) < 1e-14);
  }
}

}  // namespace
}  // namespace cdgate
