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

#include "cdgate/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <ostream>

#include "cdgate/errors.hpp"
#include "cdgate/experiments.hpp"
#include "cdgate/observables.hpp"

#ifndef CDGATE_VERSION
#define CDGATE_VERSION "unknown"
#endif

namespace cdgate::cli {

namespace {

namespace fs = std::filesystem;

ExperimentOptions options_for(const RunConfig& cfg) {
  ExperimentOptions opts;
  opts.evolution.abs_tol = cfg.abs_tol;
  opts.evolution.rel_tol = cfg.rel_tol;
  opts.evolution.sample_count = cfg.samples;
  opts.full_range_ramp = cfg.full_range_ramp;
  opts.bare_initial_state = cfg.bare_initial;
  opts.workers = cfg.workers;
  opts.noise_method = cfg.method == "trajectories" ? NoiseMethod::trajectories : NoiseMethod::lindblad;
  opts.trajectory_samples = cfg.trajectories;
  opts.trajectory_dt = cfg.dt;
  return opts;
}

class Writer {
 public:
  explicit Writer(const RunConfig& cfg) : cfg_(cfg) {}

  void emit(const Table& table, const std::string& suffix, bool heatmap = false) {
    fs::path path = cfg_.output + "_" + suffix + (cfg_.format == OutputFormat::csv ? ".csv" : ".json");
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    files_.push_back(cfg_.format == OutputFormat::csv ? emit_csv(table, path) : emit_json(table, path));
    if (cfg_.gnuplot && cfg_.format == OutputFormat::csv) files_.push_back(emit_gnuplot(table, path, heatmap));
  }

  std::vector<ManifestEntry> take() { return std::move(files_); }

 private:
  const RunConfig& cfg_;
  std::vector<ManifestEntry> files_;
};

void report_failures(const SweepResult& r, std::ostream& log) {
  for (std::size_t i = 0; i < r.failure_messages.size(); ++i) {
    if (!r.failed[i]) continue;
    const std::size_t a = i / r.grid.tau_values.size();
    const std::size_t t = i % r.grid.tau_values.size();
    log << "warning: cell alpha=" << format_number(r.grid.alpha_values[a])
        << " tau=" << format_number(r.grid.tau_values[t]) << " failed: " << r.failure_messages[i] << "\n";
  }
}

Table with_stderr(Table t, const SweepResult& r) {
  if (!r.fidelity_stderr) return t;
  t.columns.push_back("fidelity_stderr");
  for (std::size_t i = 0; i < t.rows.size(); ++i) t.rows[i].push_back((*r.fidelity_stderr)[i]);
  return t;
}

void run_evolve(const RunConfig& cfg, const ExperimentOptions& opts, Writer& w) {
  const double alpha = cfg.alpha_values().at(0);
  const double tau = *cfg.tau;
  w.emit(trajectory_table(gate_run(cfg.params, tau, alpha, cfg.cd, opts)), "trajectory");
  if (alpha > 0.0 && opts.noise_method == NoiseMethod::trajectories) {
    // Side-by-side check of the master equation against the noise average.
    SweepGrid grid;
    grid.tau_values = {tau};
    grid.alpha_values = {alpha};
    grid.cd_enabled = cfg.cd;
    grid.params = cfg.params;
    grid.master_seed = cfg.seed;
    ExperimentOptions lind = opts;
    lind.noise_method = NoiseMethod::lindblad;
    const SweepResult exact = sweep_noise(grid, lind);
    const SweepResult mc = sweep_noise(grid, opts);
    const double se = (*mc.fidelity_stderr)[0];
    const double diff = mc.fidelity[0] - exact.fidelity[0];
    Table t{{"alpha_abs", "tau", "fidelity_lindblad", "fidelity_mc", "mc_stderr", "z_score"},
            {{alpha, tau, exact.fidelity[0], mc.fidelity[0], se, se > 0.0 ? diff / se : 0.0}}};
    w.emit(t, "mc_check");
  }
}

}  // namespace

OutputManifest run_command(const RunConfig& cfg, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  if (auto warning = cfg.params.regime_warning()) log << "warning: " << *warning << "\n";
  const ExperimentOptions opts = options_for(cfg);
  Writer w(cfg);

  switch (cfg.command) {
    case Command::spectrum:
      w.emit(spectrum_table(cfg.params, *cfg.tau, cfg.samples, cfg.full_range_ramp), "spectrum");
      break;
    case Command::evolve:
      run_evolve(cfg, opts, w);
      break;
    case Command::sweep_tau: {
      const SweepResult r = sweep_tau(cfg.params, cfg.tau_values(), cfg.cd, opts);
      report_failures(r, log);
      w.emit(tau_sweep_table(r), "tau_sweep");
      break;
    }
    case Command::sweep_noise:
    case Command::heatmap: {
      SweepGrid grid;
      grid.tau_values = cfg.tau_values();
      grid.alpha_values = cfg.alpha_values();
      grid.cd_enabled = cfg.cd;
      grid.params = cfg.params;
      grid.master_seed = cfg.seed;
      const SweepResult r = sweep_noise(grid, opts);
      report_failures(r, log);
      const bool heat = cfg.command == Command::heatmap;
      w.emit(with_stderr(noise_table(r), r), heat ? "heatmap" : "noise_sweep", heat);
      break;
    }
    case Command::optimal_tau: {
      const std::vector<double> alphas = cfg.alpha_values();
      const std::vector<double> taus = cfg.tau_values();
      OptimumScan scan;
      scan.tau_min = taus.front();
      scan.tau_max = taus.back();
      scan.points = taus.size();
      std::vector<OptimalTau> optima;
      for (double a : alphas) optima.push_back(find_optimal_tau(cfg.params, a, opts, scan));
      w.emit(optimal_tau_table(alphas, cfg.params.g, optima), "optimal_tau");
      break;
    }
    case Command::tradeoff: {
      SweepGrid grid;
      grid.tau_values = cfg.tau_values();
      grid.alpha_values = cfg.alpha_values();
      grid.cd_enabled = true;
      grid.params = cfg.params;
      grid.master_seed = cfg.seed;
      const TradeoffCurve curve = tradeoff_boundary(grid, cfg.threshold, opts);
      report_failures(curve.sweep, log);
      w.emit(tradeoff_table(curve, cfg.params.g), "tradeoff");
      log << "tau*alpha: geometric mean " << format_number(curve.constant) << ", max/min "
          << format_number(curve.spread) << "\n";
      break;
    }
    case Command::gate_check: {
      std::vector<GateCheckReport> reports;
      for (double tau : cfg.tau_values()) reports.push_back(gate_unitary_check(tau, cfg.n_offset));
      w.emit(gate_check_table(reports), "gate_check");
      for (const auto& r : reports) {
        if (!r.passed) log << "warning: gate check failed at tau=" << format_number(r.tau) << "\n";
      }
      break;
    }
    case Command::nqubit: {
      const SweepResult r = n_qubit_demo(cfg.qubits, cfg.params, cfg.tau_values(), cfg.cd, opts);
      report_failures(r, log);
      Table t{{"tau", "fidelity", "ground_prob"}, {}};
      for (std::size_t i = 0; i < r.grid.tau_values.size(); ++i) {
        t.rows.push_back({r.grid.tau_values[i], r.fidelity[i], (*r.ground_prob)[i]});
      }
      w.emit(t, "nqubit");
      break;
    }
  }

  OutputManifest manifest;
  manifest.files = w.take();
  manifest.config = to_json(cfg);
  manifest.version = CDGATE_VERSION;
  manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(manifest, cfg.output + "_manifest.json");
  return manifest;
}

int main_entry(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_config(argv);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    const OutputManifest m = run_command(cfg, err);
    for (const auto& f : m.files) out << f.path << "\n";
    out << cfg.output << "_manifest.json\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace cdgate::cli
