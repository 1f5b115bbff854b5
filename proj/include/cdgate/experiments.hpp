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

// Reproducible experiment recipes: fidelity profiles, sweeps over drive time
// and noise strength, optimum search, the CD trade-off boundary, the exact
// inverse-engineered gate check and the N-qubit generalization.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdgate/dynamics.hpp"
#include "cdgate/model.hpp"
#include "cdgate/observables.hpp"

namespace cdgate {

enum class NoiseMethod { lindblad, trajectories };

struct ExperimentOptions {
  EvolutionConfig evolution;  // tau and use_cd are set per run
  bool full_range_ramp = false;
  // Start from the bare |1..10> instead of the exact sector ground state.
  bool bare_initial_state = false;
  std::size_t workers = 1;
  NoiseMethod noise_method = NoiseMethod::lindblad;
  std::size_t trajectory_samples = 1000;
  double trajectory_dt = 1e-2;
};

struct SweepGrid {
  std::vector<double> tau_values;    // ascending, > 0
  std::vector<double> alpha_values;  // absolute rates, ascending, >= 0
  bool cd_enabled = false;
  CnotParams params;
  std::uint64_t master_seed = 0;

  // Throws InvalidGrid.
  void validate() const;
  double alpha_in_gap_units(std::size_t i) const { return alpha_values[i] / (2.0 * params.g); }

  // tau in [1, 200] (60 log-spaced), alpha in [0, 0.2] * 2g (40 points).
  static SweepGrid figure_default(const CnotParams& params, bool cd_enabled);
};

std::vector<double> linspace(double start, double stop, std::size_t count);
std::vector<double> logspace(double start, double stop, std::size_t count);

struct SweepMetadata {
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  std::string version;
  std::string method;
  double wall_seconds = 0.0;
  std::size_t failed_cells = 0;
};

// Arrays are row-major over (alpha index, tau index).
struct SweepResult {
  SweepGrid grid;
  std::vector<double> fidelity;
  std::optional<std::vector<double>> transition_prob;
  std::optional<std::vector<double>> ground_prob;
  // Monte-Carlo standard error of fidelity (trajectory method only).
  std::optional<std::vector<double>> fidelity_stderr;
  std::vector<std::uint8_t> failed;
  std::vector<std::string> failure_messages;  // empty for successful cells
  SweepMetadata metadata;

  std::size_t index(std::size_t alpha_i, std::size_t tau_i) const {
    return alpha_i * grid.tau_values.size() + tau_i;
  }
  double fidelity_at(std::size_t alpha_i, std::size_t tau_i) const { return fidelity[index(alpha_i, tau_i)]; }
};

// One sample of a gate run.
struct GateSample {
  double t = 0.0;
  double fidelity = 0.0;      // overlap with |1..1>
  double ground_prob = 0.0;   // instantaneous sector ground state
  double transition_prob = 0.0;
  double norm = 0.0;          // |psi|^2 or tr rho
};

// Drive J2(t) for params and options.
DriveSchedule gate_drive(const CnotParams& params, double tau, const ExperimentOptions& opts);
// |E1(-tau/2)> (or |1..10>) on n qubits.
StateVector gate_initial_state(const CnotParams& params, double tau, std::size_t n_qubits,
                               const ExperimentOptions& opts);

// Full sampled run of the two-qubit gate; alpha > 0 switches to the master
// equation. Sample grid from opts.evolution.sample_count.
std::vector<GateSample> gate_run(const CnotParams& params, double tau, double alpha, bool cd,
                                 const ExperimentOptions& opts);

// F(t) = |<Psi(t)|11>|^2 for the noiseless run without CD.
std::vector<FidelityPoint> adiabatic_profile(const CnotParams& params, double tau,
                                             const ExperimentOptions& opts);

// Unitary final fidelity, transition and ground-state probability per tau.
SweepResult sweep_tau(const CnotParams& params, const std::vector<double>& tau_values, bool cd_enabled,
                      const ExperimentOptions& opts);

// Final fidelity per (alpha, tau) cell under dephasing noise. Failed cells
// are flagged (fidelity NaN) and the sweep continues.
SweepResult sweep_noise(const SweepGrid& grid, const ExperimentOptions& opts);

struct OptimumScan {
  double tau_min = 1.0;
  double tau_max = 200.0;
  std::size_t points = 60;
  double resolution = 0.5;
};

struct OptimalTau {
  double tau_star = 0.0;
  double f_star = 0.0;
};

// Noisy final fidelity without CD, maximized over tau by a log-grid scan and
// golden-section refinement. Throws InvalidParams (alpha <= 0),
// NoInteriorMaximum when the scan maximum sits on the window edge.
OptimalTau find_optimal_tau(const CnotParams& params, double alpha, const ExperimentOptions& opts,
                            const OptimumScan& scan = {});

struct TradeoffPoint {
  double alpha = 0.0;
  double tau_max = 0.0;       // largest grid tau with F >= threshold; NaN if none
  bool saturated = false;     // tau_max is the last grid tau
  double product = 0.0;       // tau_max * alpha
};

struct TradeoffCurve {
  double threshold = 0.0;
  std::vector<TradeoffPoint> points;
  // Geometric mean and max/min ratio of tau_max * alpha over points with
  // alpha > 0 that are neither saturated nor empty.
  double constant = 0.0;
  double spread = 0.0;
  SweepResult sweep;
};

// Throws InvalidGrid unless grid.cd_enabled and threshold in (0.5, 1).
TradeoffCurve tradeoff_boundary(const SweepGrid& grid, double threshold, const ExperimentOptions& opts);

struct GateCheckReport {
  double tau = 0.0;
  int n_offset = 0;
  double distance = 0.0;                    // |U - U_CNOT|_F
  double phase_insensitive_distance = 0.0;  // min over global phase
  double exponential_distance = 0.0;        // exp(-i H tau) route, phase-insensitive
  double max_commutator = 0.0;              // max |[H(t), H(t')]|_F over sampled pairs
  bool passed = false;                      // all distances < 1e-10, commutator < 1e-12
};

GateCheckReport gate_unitary_check(double tau, int n_offset = 0);

// sweep_tau on the n-qubit family: start in the |1..1x> sector ground
// state, target |1..1>.
SweepResult n_qubit_demo(std::size_t n, const CnotParams& params, const std::vector<double>& tau_values,
                         bool cd_enabled, const ExperimentOptions& opts);

}  // namespace cdgate
