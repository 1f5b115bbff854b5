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

#include "cdgate/errors.hpp"
#include "cdgate/experiments.hpp"
#include "doctest.h"

namespace cdgate {
namespace {

const CnotParams kDefault{};

ExperimentOptions options(std::size_t samples = 2) {
  ExperimentOptions o;
  o.evolution.sample_count = samples;
  return o;
}

TEST_CASE("grid helpers") {
  CHECK(linspace(0.0, 1.0, 5) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(linspace(2.0, 3.0, 1) == std::vector<double>{2.0});
  CHECK(linspace(2.0, 3.0, 0).empty());
  const auto l = logspace(1.0, 100.0, 3);
  CHECK(l[0] == 1.0);
  CHECK(l[1] == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(l[2] == 100.0);
  CHECK_THROWS_AS(logspace(0.0, 1.0, 3), InvalidGrid);
}

TEST_CASE("figure grid defaults") {
  const SweepGrid g = SweepGrid::figure_default(kDefault, true);
  CHECK(g.tau_values.size() == 60);
  CHECK(g.tau_values.front() == 1.0);
  CHECK(g.tau_values.back() == 200.0);
  CHECK(g.alpha_values.size() == 40);
  CHECK(g.alpha_values.back() == doctest::Approx(0.2));
  CHECK(g.alpha_in_gap_units(39) == doctest::Approx(0.2));
  CHECK_NOTHROW(g.validate());
}

TEST_CASE("grid validation") {
  SweepGrid g;
  g.tau_values = {1.0, 2.0};
  g.alpha_values = {0.0};
  CHECK_NOTHROW(g.validate());
  g.tau_values = {2.0, 1.0};
  CHECK_THROWS_AS(g.validate(), InvalidGrid);
  g.tau_values = {0.0};
  CHECK_THROWS_AS(g.validate(), InvalidGrid);
  g.tau_values = {1.0};
  g.alpha_values = {-0.1};
  CHECK_THROWS_AS(g.validate(), InvalidGrid);
  g.alpha_values = {};
  CHECK_THROWS_AS(g.validate(), InvalidGrid);
}

TEST_CASE("adiabatic profile at tau = 200") {
  const auto p = adiabatic_profile(kDefault, 200.0, options(201));
  CHECK(p.front().t == -100.0);
  CHECK(p.back().t == 100.0);
  CHECK(p.front().value <= 0.01);
  CHECK(p.back().value >= 0.99);
  CHECK(p.front().value < p[100].value);
  CHECK(p[100].value < p.back().value);
}

TEST_CASE("sudden limit freezes the state") {
  const auto p = adiabatic_profile(kDefault, 0.1, options());
  const double overlap = std::norm(analytic_spectrum(kDefault, -5.0).states[0][3]);
  CHECK(p.front().value == doctest::Approx(overlap).epsilon(1e-12));
  CHECK(std::abs(p.back().value - p.front().value) < 0.02);
}

TEST_CASE("bare initial state option") {
  ExperimentOptions o = options();
  o.bare_initial_state = true;
  CHECK(gate_initial_state(kDefault, 5.0, 2, o) == StateVector::basis(4, 2));
  CHECK(gate_initial_state(kDefault, 5.0, 3, o) == StateVector::basis(8, 6));
  o.bare_initial_state = false;
  const StateVector exact = gate_initial_state(kDefault, 5.0, 2, o);
  CHECK(std::norm(exact[2]) > 0.99);
  CHECK(std::norm(exact[2]) < 1.0);
}

TEST_CASE("gate run samples are consistent") {
  const auto run = gate_run(kDefault, 10.0, 0.0, true, options(11));
  CHECK(run.size() == 11);
  for (const GateSample& s : run) {
    CHECK(s.ground_prob == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(s.transition_prob < 1e-6);
    CHECK(s.norm == doctest::Approx(1.0).epsilon(1e-8));
  }
  const auto noisy = gate_run(kDefault, 10.0, 0.05, true, options(11));
  for (const GateSample& s : noisy) {
    CHECK(s.ground_prob + s.transition_prob == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(s.fidelity >= 0.0);
    CHECK(s.fidelity <= 1.0 + 1e-10);
  }
}

TEST_CASE("counterdiabatic driving keeps the ground state for every g") {
  for (double g : {0.3, 0.4, 0.5}) {
    const CnotParams p{1.0, g, 10.0};
    const SweepResult r = sweep_tau(p, {0.1, 1.0, 10.0, 100.0}, true, options());
    CHECK(r.metadata.failed_cells == 0);
    for (double gp : *r.ground_prob) CHECK(std::abs(gp - 1.0) < 1e-6);
  }
}

TEST_CASE("transition probability follows the Landau-Zener formula") {
  const std::vector<double> taus = logspace(1.0, 100.0, 30);
  const SweepResult r = sweep_tau(kDefault, taus, false, options());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    CHECK(std::abs((*r.transition_prob)[i] - lz_formula(kDefault.g, kDefault.j2_amp, taus[i])) < 0.02);
  }
}

TEST_CASE("larger coupling suppresses transitions sooner") {
  const std::vector<double> taus = logspace(1.0, 400.0, 120);
  double previous = 1e300;
  for (double g : {0.3, 0.4, 0.5}) {
    const SweepResult r = sweep_tau(CnotParams{1.0, g, 10.0}, taus, false, options());
    double first = 1e300;
    for (std::size_t i = 0; i < taus.size(); ++i) {
      if ((*r.transition_prob)[i] < 0.01) {
        first = taus[i];
        break;
      }
    }
    CHECK(first < previous);
    previous = first;
  }
}

TEST_CASE("noise sweep reduces to the unitary run at zero noise") {
  SweepGrid g;
  g.tau_values = {200.0};
  g.alpha_values = {0.0};
  const SweepResult r = sweep_noise(g, options());
  CHECK(r.fidelity[0] >= 0.99);
  const SweepResult u = sweep_tau(kDefault, {200.0}, false, options());
  CHECK(std::abs(r.fidelity[0] - u.fidelity[0]) < 1e-8);
}

TEST_CASE("long noisy runs approach one half") {
  SweepGrid g;
  g.tau_values = {600.0, 1000.0, 2000.0};
  g.alpha_values = {0.1, 0.2};
  const SweepResult r = sweep_noise(g, options());
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t t = 0; t < 3; ++t) {
      CHECK(g.alpha_values[a] * g.tau_values[t] > 50.0);
      CHECK(std::abs(r.fidelity_at(a, t) - 0.5) < 0.05);
    }
  }
}

TEST_CASE("CD-protected fidelity never improves with more noise") {
  SweepGrid g;
  g.tau_values = {1.0, 5.0, 20.0, 60.0};
  g.alpha_values = linspace(0.0, 0.2, 6);
  g.cd_enabled = true;
  const SweepResult r = sweep_noise(g, options());
  for (std::size_t t = 0; t < g.tau_values.size(); ++t) {
    for (std::size_t a = 1; a < g.alpha_values.size(); ++a) {
      CHECK(r.fidelity_at(a, t) <= r.fidelity_at(a - 1, t) + 1e-9);
    }
  }
}

TEST_CASE("sweeps are deterministic and independent of the worker count") {
  SweepGrid g;
  g.tau_values = {2.0, 8.0, 30.0};
  g.alpha_values = {0.0, 0.05, 0.1};
  g.master_seed = 7;
  ExperimentOptions o = options();
  const SweepResult a = sweep_noise(g, o);
  o.workers = 3;
  const SweepResult b = sweep_noise(g, o);
  CHECK(a.fidelity == b.fidelity);
  CHECK(*a.transition_prob == *b.transition_prob);

  o.noise_method = NoiseMethod::trajectories;
  o.trajectory_samples = 100;
  o.workers = 1;
  const SweepResult c = sweep_noise(g, o);
  o.workers = 4;
  const SweepResult d = sweep_noise(g, o);
  CHECK(c.fidelity == d.fidelity);
  CHECK(c.fidelity_stderr.has_value());
  CHECK(*c.fidelity_stderr == *d.fidelity_stderr);
  g.master_seed = 8;
  const SweepResult e = sweep_noise(g, o);
  CHECK(e.fidelity != c.fidelity);
}

TEST_CASE("failed cells are flagged and the sweep continues") {
  SweepGrid g;
  g.tau_values = {1.0, 2.0};
  g.alpha_values = {0.0};
  ExperimentOptions o = options();
  o.evolution.max_step = 1e-300;  // forces a step underflow in every cell
  const SweepResult r = sweep_noise(g, o);
  CHECK(r.metadata.failed_cells == 2);
  CHECK(std::isnan(r.fidelity[0]));
  CHECK_FALSE(r.failure_messages[1].empty());
}

TEST_CASE("optimal drive time under noise") {
  const OptimalTau opt = find_optimal_tau(kDefault, alpha_from_gap_units(0.08, kDefault.g), options());
  CHECK(opt.tau_star >= 20.0);
  CHECK(opt.tau_star <= 40.0);
  CHECK(opt.f_star > 0.5);
  CHECK(opt.f_star < 1.0);
  double previous = 1e300;
  for (double a : {0.04, 0.06, 0.08, 0.1}) {
    const double tau = find_optimal_tau(kDefault, alpha_from_gap_units(a, kDefault.g), options()).tau_star;
    CHECK(tau <= previous + 0.5);
    previous = tau;
  }
}

TEST_CASE("optimum search error paths") {
  CHECK_THROWS_AS(find_optimal_tau(kDefault, 0.0, options()), InvalidParams);
  // Almost no noise: fidelity keeps rising across the window.
  CHECK_THROWS_AS(find_optimal_tau(kDefault, 1e-6, options(), OptimumScan{1.0, 40.0, 12, 0.5}),
                  NoInteriorMaximum);
}

TEST_CASE("trade-off boundary") {
  SweepGrid g;
  g.tau_values = logspace(0.5, 200.0, 50);
  g.alpha_values = logspace(0.02, 0.2, 6);
  g.cd_enabled = true;
  const TradeoffCurve c = tradeoff_boundary(g, 0.9, options());
  CHECK(c.points.size() == 6);
  for (std::size_t i = 1; i < c.points.size(); ++i) CHECK(c.points[i].tau_max <= c.points[i - 1].tau_max);
  CHECK(std::isfinite(c.constant));
  CHECK(c.spread < 3.0);
  g.cd_enabled = false;
  CHECK_THROWS_AS(tradeoff_boundary(g, 0.9, options()), InvalidGrid);
  g.cd_enabled = true;
  CHECK_THROWS_AS(tradeoff_boundary(g, 1.0, options()), InvalidGrid);
  CHECK_THROWS_AS(tradeoff_boundary(g, 0.5, options()), InvalidGrid);
}

TEST_CASE("trade-off boundary saturates on the noiseless axis") {
  SweepGrid g;
  g.tau_values = {1.0, 10.0, 100.0};
  g.alpha_values = {0.0, 0.1};
  g.cd_enabled = true;
  ExperimentOptions o = options();
  o.full_range_ramp = true;  // the +-J2/2 endpoints cap the overlap with |11> at 0.9975
  const TradeoffCurve c = tradeoff_boundary(g, 0.999, o);
  CHECK(c.points[0].saturated);
  CHECK(c.points[0].tau_max == 100.0);
  CHECK_FALSE(c.points[1].saturated);
}

TEST_CASE("inverse-engineered gate is exact") {
  for (double tau : {0.5, 1.0, 7.3}) {
    for (int n : {0, 1}) {
      const GateCheckReport r = gate_unitary_check(tau, n);
      CHECK(r.distance < 1e-10);
      CHECK(r.phase_insensitive_distance < 1e-10);
      CHECK(r.exponential_distance < 1e-10);
      CHECK(r.max_commutator < 1e-12);
      CHECK(r.passed);
    }
  }
}

TEST_CASE("two-qubit demo equals the tau sweep") {
  const std::vector<double> taus{0.5, 3.0, 20.0};
  for (bool cd : {false, true}) {
    const SweepResult a = n_qubit_demo(2, kDefault, taus, cd, options());
    const SweepResult b = sweep_tau(kDefault, taus, cd, options());
    for (std::size_t i = 0; i < taus.size(); ++i) CHECK(std::abs(a.fidelity[i] - b.fidelity[i]) < 1e-12);
  }
}

TEST_CASE("three-qubit gate") {
  const SweepResult cd = n_qubit_demo(3, kDefault, {1.0}, true, options());
  CHECK(std::abs((*cd.ground_prob)[0] - 1.0) < 1e-6);
  const std::vector<double> taus{1.0, 5.0, 20.0, 60.0};
  const SweepResult plain = n_qubit_demo(3, kDefault, taus, false, options());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    CHECK(std::abs((*plain.transition_prob)[i] - lz_formula(kDefault.g, kDefault.j2_amp, taus[i])) < 0.02);
  }
  CHECK_THROWS_AS(n_qubit_demo(7, kDefault, {1.0}, false, options()), DimensionTooLarge);
}

}  // namespace
}  // namespace cdgate
