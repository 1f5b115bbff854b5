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

#include "cdgate/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "cdgate/errors.hpp"
#include "cdgate/observables.hpp"

namespace cdgate::cli {

namespace fs = std::filesystem;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file_atomically(const fs::path& path, const std::string& contents) {
  fs::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot move output into place at '" + path.string() + "'");
  }
}

// --- tables --------------------------------------------------------------

Table spectrum_table(const CnotParams& params, double tau, std::size_t samples, bool full_range_ramp) {
  const DriveSchedule drive = linear_ramp(params, tau, full_range_ramp);
  Table t{{"t", "J2", "E1", "E2", "E3", "E4", "gap"}, {}};
  for (double time : linspace(drive.t_start(), drive.t_end(), samples)) {
    const double j2 = drive.value(time);
    const SpectrumSnapshot s = analytic_spectrum(params, j2);
    t.rows.push_back({time, j2, s.energies[0], s.energies[1], s.energies[2], s.energies[3], s.gap});
  }
  return t;
}

Table trajectory_table(const std::vector<GateSample>& samples) {
  Table t{{"t", "fidelity", "ground_prob", "transition_prob", "norm"}, {}};
  for (const GateSample& s : samples) t.rows.push_back({s.t, s.fidelity, s.ground_prob, s.transition_prob, s.norm});
  return t;
}

Table tau_sweep_table(const SweepResult& result) {
  Table t{{"tau", "fidelity", "transition_prob", "lz_prediction"}, {}};
  const auto& g = result.grid;
  for (std::size_t i = 0; i < g.tau_values.size(); ++i) {
    const double tau = g.tau_values[i];
    t.rows.push_back({tau, result.fidelity_at(0, i), (*result.transition_prob)[result.index(0, i)],
                      lz_formula(g.params.g, g.params.j2_amp, tau)});
  }
  return t;
}

Table noise_table(const SweepResult& result) {
  Table t{{"alpha_abs", "alpha_in_gap_units", "tau", "fidelity"}, {}};
  const auto& g = result.grid;
  for (std::size_t a = 0; a < g.alpha_values.size(); ++a) {
    for (std::size_t i = 0; i < g.tau_values.size(); ++i) {
      t.rows.push_back({g.alpha_values[a], g.alpha_in_gap_units(a), g.tau_values[i], result.fidelity_at(a, i)});
    }
  }
  return t;
}

Table optimal_tau_table(const std::vector<double>& alphas, double g, const std::vector<OptimalTau>& optima) {
  Table t{{"alpha_abs", "alpha_in_gap_units", "tau_star", "f_star"}, {}};
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    t.rows.push_back({alphas[i], alphas[i] / (2.0 * g), optima[i].tau_star, optima[i].f_star});
  }
  return t;
}

Table tradeoff_table(const TradeoffCurve& curve, double g) {
  Table t{{"alpha_abs", "alpha_in_gap_units", "tau_max", "tau_alpha", "saturated"}, {}};
  for (const TradeoffPoint& p : curve.points) {
    t.rows.push_back({p.alpha, p.alpha / (2.0 * g), p.tau_max, p.product, p.saturated ? 1.0 : 0.0});
  }
  return t;
}

Table gate_check_table(const std::vector<GateCheckReport>& reports) {
  Table t{{"tau", "n_offset", "distance", "phase_insensitive_distance", "exponential_distance",
           "max_commutator"},
          {}};
  for (const GateCheckReport& r : reports) {
    t.rows.push_back({r.tau, static_cast<double>(r.n_offset), r.distance, r.phase_insensitive_distance,
                      r.exponential_distance, r.max_commutator});
  }
  return t;
}

// --- emitters ------------------------------------------------------------

ManifestEntry emit_csv(const Table& table, const fs::path& path) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out += (c ? "," : "") + table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  write_file_atomically(path, out);
  return {path.string(), table.rows.size(), "data"};
}

ManifestEntry emit_json(const Table& table, const fs::path& path) {
  nlohmann::json doc;
  doc["columns"] = table.columns;
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (double v : row) r.push_back(std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr));
    doc["rows"].push_back(std::move(r));
  }
  write_file_atomically(path, doc.dump(2) + "\n");
  return {path.string(), table.rows.size(), "data"};
}

ManifestEntry emit_gnuplot(const Table& table, const fs::path& data_path, bool heatmap) {
  fs::path script = data_path;
  script += ".gp";
  const std::string data = data_path.filename().string();
  std::string out = "set datafile separator ','\nset key autotitle columnhead\n";
  if (heatmap) {
    out += "set view map\nset logscale y\nset xlabel 'alpha / 2g'\nset ylabel 'tau'\n";
    out += "splot '" + data + "' using 2:3:4 with points palette pointtype 5\n";
  } else {
    out += "set xlabel '" + table.columns.front() + "'\nplot ";
    for (std::size_t c = 1; c < table.columns.size(); ++c) {
      out += (c > 1 ? ", \\\n     " : "") + std::string("'") + data + "' using 1:" + std::to_string(c + 1) +
             " with lines";
    }
    out += "\n";
  }
  write_file_atomically(script, out);
  return {script.string(), 0, "script"};
}

void write_manifest(const OutputManifest& manifest, const fs::path& path) {
  nlohmann::json doc;
  doc["version"] = manifest.version;
  doc["wall_seconds"] = manifest.wall_seconds;
  doc["config"] = manifest.config;
  doc["files"] = nlohmann::json::array();
  for (const auto& f : manifest.files) {
    doc["files"].push_back({{"path", f.path}, {"rows", f.rows}, {"kind", f.kind}});
  }
  write_file_atomically(path, doc.dump(2) + "\n");
}

}  // namespace cdgate::cli
