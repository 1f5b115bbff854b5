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

// Plot-ready tables, their CSV/JSON serialization and the run manifest.

#include <filesystem>
#include <string>
#include <vector>

#include "cdgate/experiments.hpp"
#include "json.hpp"

namespace cdgate::cli {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Column schemas.
// spectrum:   t, J2, E1, E2, E3, E4, gap
// trajectory: t, fidelity, ground_prob, transition_prob, norm
// tau sweep:  tau, fidelity, transition_prob, lz_prediction
// noise:      alpha_abs, alpha_in_gap_units, tau, fidelity (long form)
Table spectrum_table(const CnotParams& params, double tau, std::size_t samples, bool full_range_ramp);
Table trajectory_table(const std::vector<GateSample>& samples);
Table tau_sweep_table(const SweepResult& result);
Table noise_table(const SweepResult& result);
Table optimal_tau_table(const std::vector<double>& alphas, double g, const std::vector<OptimalTau>& optima);
Table tradeoff_table(const TradeoffCurve& curve, double g);
Table gate_check_table(const std::vector<GateCheckReport>& reports);

struct ManifestEntry {
  std::string path;
  std::size_t rows = 0;
  std::string kind = "data";
};

// "%.17g" numbers, LF line endings, header row first. Written to a
// temporary file and renamed into place; on failure nothing is left behind.
// Throws Error on I/O failure.
ManifestEntry emit_csv(const Table& table, const std::filesystem::path& path);
// {"columns": [...], "rows": [[...], ...]}; non-finite values become null.
ManifestEntry emit_json(const Table& table, const std::filesystem::path& path);

// Companion gnuplot script plotting every column against the first (or a
// pm3d map for long-form heatmaps).
ManifestEntry emit_gnuplot(const Table& table, const std::filesystem::path& data_path, bool heatmap);

struct OutputManifest {
  std::vector<ManifestEntry> files;
  nlohmann::json config;
  std::string version;
  double wall_seconds = 0.0;
};

// Written last; its presence marks a completed run.
void write_manifest(const OutputManifest& manifest, const std::filesystem::path& path);

// Atomic text write used by all emitters.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

std::string format_number(double v);

}  // namespace cdgate::cli
