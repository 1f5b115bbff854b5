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

#include "cdgate/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "cdgate/errors.hpp"
#include "cdgate/parallel.hpp"

namespace cdgate {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct CellOutcome {
  double fidelity = kNaN;
  double transition = kNaN;
  double ground = kNaN;
  double stderr_fidelity = kNaN;
  std::string error;
};

EvolutionConfig endpoint_config(const ExperimentOptions& opts, double tau, bool cd) {
  EvolutionConfig cfg = opts.evolution;
  cfg.tau = tau;
  cfg.use_cd = cd;
  cfg.sample_count = 2;
  return cfg;
}

HamiltonianFn gate_hamiltonian(std::size_t n, const CnotParams& params, const DriveSchedule& drive,
                               bool cd) {
  return n == 2 ? cnot_hamiltonian(params, drive, cd) : n_qubit_hamiltonian(n, params, drive, cd);
}

// Final-time figures of merit of one gate run on n qubits.
CellOutcome evaluate_cell(std::size_t n, const CnotParams& params, double tau, double alpha, bool cd,
                          bool noisy, std::uint64_t seed, const ExperimentOptions& opts) {
  CellOutcome out;
  try {
    const DriveSchedule drive = gate_drive(params, tau, opts);
    const HamiltonianFn h = gate_hamiltonian(n, params, drive, cd);
    const StateVector psi0 = gate_initial_state(params, tau, n, opts);
    const StateVector target = all_ones_state(n);
    const double j2_end = drive.value(drive.t_end());

    if (!noisy) {
      const PureTrajectory traj = schrodinger_evolve(h, psi0, endpoint_config(opts, tau, cd));
      const StateVector& psi = traj.final_state();
      out.fidelity = fidelity_pure(psi, target);
      out.transition = transition_probability(psi, params, j2_end);
      out.ground = ground_state_probability(psi, params, j2_end);
      return out;
    }

    const NoiseModel noise = NoiseModel::target_dephasing(alpha, n);
    if (opts.noise_method == NoiseMethod::trajectories) {
      NoiseOracleConfig oc;
      oc.tau = tau;
      oc.alpha = alpha;
      oc.n_samples = opts.trajectory_samples;
      oc.dt = opts.trajectory_dt;
      oc.seed = seed;
      const NoiseAverage avg = noise_trajectory_oracle(h, psi0, noise.jump, oc);
      out.fidelity = fidelity_mixed(avg.rho, target);
      const std::size_t last = target.dim() - 1;
      out.stderr_fidelity = avg.standard_error(last, last).real();
      out.transition = transition_population(avg.rho, params, j2_end);
      out.ground = ground_state_population(avg.rho, params, j2_end);
      return out;
    }

    const MixedTrajectory traj =
        lindblad_evolve(h, DensityMatrix::from_pure(psi0), noise, endpoint_config(opts, tau, cd));
    const DensityMatrix& rho = traj.final_state();
    out.fidelity = fidelity_mixed(rho, target);
    out.transition = transition_population(rho, params, j2_end);
    out.ground = ground_state_population(rho, params, j2_end);
  } catch (const std::exception& e) {
    out = CellOutcome{};
    out.error = e.what();
  }
  return out;
}

SweepMetadata make_metadata(const ExperimentOptions& opts, std::string method) {
  SweepMetadata m;
  m.abs_tol = opts.evolution.abs_tol;
  m.rel_tol = opts.evolution.rel_tol;
  m.version = CDGATE_VERSION;
  m.method = std::move(method);
  return m;
}

void check_taus(const std::vector<double>& taus) {
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > 0.0) || !std::isfinite(taus[i])) throw InvalidGrid("tau values must be finite and > 0");
    if (i > 0 && !(taus[i] > taus[i - 1])) throw InvalidGrid("tau values must be strictly ascending");
  }
}

// Evaluates every (alpha, tau) cell of `grid` on n qubits.
SweepResult run_grid(std::size_t n, const SweepGrid& grid, bool noisy, const ExperimentOptions& opts,
                     std::string method) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n_alpha = grid.alpha_values.size();
  const std::size_t n_tau = grid.tau_values.size();
  const std::size_t cells = n_alpha * n_tau;

  std::vector<CellOutcome> outcomes(cells);
  parallel_for(cells, opts.workers, [&](std::size_t i) {
    const std::size_t a = i / std::max<std::size_t>(n_tau, 1);
    const std::size_t t = i % std::max<std::size_t>(n_tau, 1);
    outcomes[i] = evaluate_cell(n, grid.params, grid.tau_values[t], grid.alpha_values[a], grid.cd_enabled,
                                noisy, derive_seed(grid.master_seed, i), opts);
  });

  SweepResult r;
  r.grid = grid;
  r.fidelity.resize(cells);
  std::vector<double> transition(cells), ground(cells), err(cells);
  r.failed.resize(cells);
  r.failure_messages.resize(cells);
  r.metadata = make_metadata(opts, std::move(method));
  for (std::size_t i = 0; i < cells; ++i) {
    r.fidelity[i] = outcomes[i].fidelity;
    transition[i] = outcomes[i].transition;
    ground[i] = outcomes[i].ground;
    err[i] = outcomes[i].stderr_fidelity;
    r.failed[i] = outcomes[i].error.empty() ? 0 : 1;
    r.failure_messages[i] = std::move(outcomes[i].error);
    r.metadata.failed_cells += r.failed[i];
  }
  r.transition_prob = std::move(transition);
  r.ground_prob = std::move(ground);
  if (noisy && opts.noise_method == NoiseMethod::trajectories) r.fidelity_stderr = std::move(err);
  r.metadata.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

double final_fidelity(const CnotParams& params, double tau, double alpha, bool cd,
                      const ExperimentOptions& opts) {
  const CellOutcome c = evaluate_cell(2, params, tau, alpha, cd, alpha > 0.0, 0, opts);
  if (!c.error.empty()) throw Error(c.error);
  return c.fidelity;
}

}  // namespace

// --- grids ---------------------------------------------------------------

std::vector<double> linspace(double start, double stop, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = start;
    return out;
  }
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  if (count > 1) out.back() = stop;
  return out;
}

std::vector<double> logspace(double start, double stop, std::size_t count) {
  if (!(start > 0.0) || !(stop > 0.0)) throw InvalidGrid("logspace: endpoints must be > 0");
  std::vector<double> out = linspace(std::log(start), std::log(stop), count);
  for (auto& x : out) x = std::exp(x);
  if (!out.empty()) {
    out.front() = start;
    out.back() = stop;
  }
  return out;
}

void SweepGrid::validate() const {
  params.validate();
  if (tau_values.empty() || alpha_values.empty()) throw InvalidGrid("sweep grid: empty axis");
  check_taus(tau_values);
  for (std::size_t i = 0; i < alpha_values.size(); ++i) {
    if (!(alpha_values[i] >= 0.0) || !std::isfinite(alpha_values[i])) {
      throw InvalidGrid("alpha values must be finite and >= 0");
    }
    if (i > 0 && !(alpha_values[i] > alpha_values[i - 1])) {
      throw InvalidGrid("alpha values must be strictly ascending");
    }
  }
}

SweepGrid SweepGrid::figure_default(const CnotParams& params, bool cd_enabled) {
  SweepGrid g;
  g.params = params;
  g.cd_enabled = cd_enabled;
  g.tau_values = logspace(1.0, 200.0, 60);
  g.alpha_values = linspace(0.0, 0.2 * 2.0 * params.g, 40);
  return g;
}

// --- single runs ---------------------------------------------------------

DriveSchedule gate_drive(const CnotParams& params, double tau, const ExperimentOptions& opts) {
  return linear_ramp(params, tau, opts.full_range_ramp);
}

StateVector gate_initial_state(const CnotParams& params, double tau, std::size_t n_qubits,
                               const ExperimentOptions& opts) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (opts.bare_initial_state) return StateVector::basis(dim, dim - 2);
  const DriveSchedule drive = gate_drive(params, tau, opts);
  return embed_sector(sector_eigenstates(params.g, drive.value(drive.t_start())).ground, n_qubits);
}

std::vector<GateSample> gate_run(const CnotParams& params, double tau, double alpha, bool cd,
                                 const ExperimentOptions& opts) {
  params.validate();
  const DriveSchedule drive = gate_drive(params, tau, opts);
  const HamiltonianFn h = cnot_hamiltonian(params, drive, cd);
  const StateVector psi0 = gate_initial_state(params, tau, 2, opts);
  const StateVector target = all_ones_state(2);
  EvolutionConfig cfg = opts.evolution;
  cfg.tau = tau;
  cfg.use_cd = cd;

  std::vector<GateSample> out;
  if (alpha > 0.0) {
    const MixedTrajectory traj =
        lindblad_evolve(h, DensityMatrix::from_pure(psi0), NoiseModel::target_dephasing(alpha), cfg);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      const double t = traj.times[k];
      const DensityMatrix& rho = traj.states[k];
      out.push_back({t, fidelity_mixed(rho, target), ground_state_population(rho, params, drive.value(t)),
                     transition_population(rho, params, drive.value(t)), rho.trace_real()});
    }
    return out;
  }
  const PureTrajectory traj = schrodinger_evolve(h, psi0, cfg);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    const StateVector& psi = traj.states[k];
    out.push_back({t, std::norm(inner(psi, target)), ground_state_probability(psi, params, drive.value(t)),
                   transition_probability(psi, params, drive.value(t)), psi.norm_squared()});
  }
  return out;
}

std::vector<FidelityPoint> adiabatic_profile(const CnotParams& params, double tau,
                                             const ExperimentOptions& opts) {
  std::vector<FidelityPoint> out;
  for (const GateSample& s : gate_run(params, tau, 0.0, false, opts)) out.push_back({s.t, s.fidelity});
  return out;
}

// --- sweeps --------------------------------------------------------------

SweepResult sweep_tau(const CnotParams& params, const std::vector<double>& tau_values, bool cd_enabled,
                      const ExperimentOptions& opts) {
  params.validate();
  check_taus(tau_values);
  SweepGrid grid;
  grid.params = params;
  grid.tau_values = tau_values;
  grid.alpha_values = {0.0};
  grid.cd_enabled = cd_enabled;
  return run_grid(2, grid, false, opts, "schrodinger");
}

SweepResult sweep_noise(const SweepGrid& grid, const ExperimentOptions& opts) {
  grid.validate();
  return run_grid(2, grid, true, opts,
                  opts.noise_method == NoiseMethod::lindblad ? "lindblad" : "trajectories");
}

SweepResult n_qubit_demo(std::size_t n, const CnotParams& params, const std::vector<double>& tau_values,
                         bool cd_enabled, const ExperimentOptions& opts) {
  params.validate();
  check_taus(tau_values);
  if (n > 6) throw DimensionTooLarge("n_qubit_demo: at most 6 qubits");
  if (n < 2) throw InvalidParams("n_qubit_demo: at least 2 qubits");
  SweepGrid grid;
  grid.params = params;
  grid.tau_values = tau_values;
  grid.alpha_values = {0.0};
  grid.cd_enabled = cd_enabled;
  return run_grid(n, grid, false, opts, "schrodinger");
}

// --- optimum -------------------------------------------------------------

OptimalTau find_optimal_tau(const CnotParams& params, double alpha, const ExperimentOptions& opts,
                            const OptimumScan& scan) {
  params.validate();
  if (!(alpha > 0.0)) throw InvalidParams("find_optimal_tau: alpha must be > 0");
  if (scan.points < 3) throw InvalidGrid("find_optimal_tau: scan needs at least 3 points");

  SweepGrid grid;
  grid.params = params;
  grid.tau_values = logspace(scan.tau_min, scan.tau_max, scan.points);
  grid.alpha_values = {alpha};
  const SweepResult coarse = sweep_noise(grid, opts);
  if (coarse.metadata.failed_cells > 0) {
    for (const auto& msg : coarse.failure_messages) {
      if (!msg.empty()) throw Error("find_optimal_tau: " + msg);
    }
  }
  const auto best = std::max_element(coarse.fidelity.begin(), coarse.fidelity.end());
  const auto i = static_cast<std::size_t>(best - coarse.fidelity.begin());
  if (i == 0 || i + 1 == coarse.fidelity.size()) {
    throw NoInteriorMaximum("find_optimal_tau: maximum at the scan edge tau = " +
                            num(grid.tau_values[i]));
  }

  // Golden-section search on the bracket around the coarse maximum.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = grid.tau_values[i - 1];
  double b = grid.tau_values[i + 1];
  double best_tau = grid.tau_values[i];
  double best_f = *best;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = final_fidelity(params, x1, alpha, false, opts);
  double f2 = final_fidelity(params, x2, alpha, false, opts);
  while (b - a > scan.resolution) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = final_fidelity(params, x1, alpha, false, opts);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = final_fidelity(params, x2, alpha, false, opts);
    }
  }
  for (const auto& [x, f] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
    if (f > best_f) {
      best_f = f;
      best_tau = x;
    }
  }
  return {best_tau, best_f};
}

// --- trade-off -----------------------------------------------------------

TradeoffCurve tradeoff_boundary(const SweepGrid& grid, double threshold, const ExperimentOptions& opts) {
  if (!grid.cd_enabled) throw InvalidGrid("tradeoff_boundary: requires CD");
  if (!(threshold > 0.5 && threshold < 1.0)) throw InvalidGrid("tradeoff_boundary: threshold must be in (0.5, 1)");

  TradeoffCurve curve;
  curve.threshold = threshold;
  curve.sweep = sweep_noise(grid, opts);

  const std::size_t n_tau = grid.tau_values.size();
  std::vector<double> products;
  for (std::size_t a = 0; a < grid.alpha_values.size(); ++a) {
    TradeoffPoint p;
    p.alpha = grid.alpha_values[a];
    p.tau_max = kNaN;
    for (std::size_t t = n_tau; t-- > 0;) {
      const double f = curve.sweep.fidelity_at(a, t);
      if (f >= threshold) {
        p.tau_max = grid.tau_values[t];
        p.saturated = t + 1 == n_tau;
        break;
      }
    }
    p.product = p.tau_max * p.alpha;
    if (p.alpha > 0.0 && !p.saturated && std::isfinite(p.tau_max)) products.push_back(p.product);
    curve.points.push_back(p);
  }
  if (!products.empty()) {
    double log_sum = 0.0;
    for (double x : products) log_sum += std::log(x);
    curve.constant = std::exp(log_sum / static_cast<double>(products.size()));
    const auto [lo, hi] = std::minmax_element(products.begin(), products.end());
    curve.spread = *hi / *lo;
  } else {
    curve.constant = kNaN;
    curve.spread = kNaN;
  }
  return curve;
}

// --- exact gate ----------------------------------------------------------

GateCheckReport gate_unitary_check(double tau, int n_offset) {
  GateCheckReport rep;
  rep.tau = tau;
  rep.n_offset = n_offset;
  const DriveSchedule phase = linear_phase(tau, n_offset);
  const HamiltonianFn h = inverse_engineered_hamiltonian(phase);

  EvolutionConfig cfg;
  cfg.tau = tau;
  cfg.abs_tol = 1e-14;
  cfg.rel_tol = 1e-13;
  const ComplexMatrix u = propagator(h, cfg);
  const ComplexMatrix target = cnot_unitary();
  rep.distance = frobenius_distance(u, target);
  rep.phase_insensitive_distance = phase_insensitive_distance(u, target);

  // Commuting generators: U = exp(-i * integral H) = exp(-i H_mean tau).
  const double delta_phi = phase.value(phase.t_end()) - phase.value(phase.t_start());
  rep.exponential_distance =
      phase_insensitive_distance(unitary_exponential(build_inverse_engineered(delta_phi / tau), tau), target);

  const std::vector<double> ts = linspace(phase.t_start(), phase.t_end(), 7);
  for (double t1 : ts) {
    for (double t2 : ts) rep.max_commutator = std::max(rep.max_commutator, frobenius_norm(commutator(h(t1), h(t2))));
  }
  rep.passed = rep.phase_insensitive_distance < 1e-10 && rep.exponential_distance < 1e-10 &&
               rep.max_commutator < 1e-12;
  return rep;
}

}  // namespace cdgate
