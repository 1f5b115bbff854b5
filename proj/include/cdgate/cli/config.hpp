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

// Run configuration for the command-line front end: flags, JSON config
// files, range syntax and validation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdgate/errors.hpp"
#include "cdgate/model.hpp"
#include "json.hpp"

namespace cdgate::cli {

enum class Command { spectrum, evolve, sweep_tau, sweep_noise, heatmap, optimal_tau, tradeoff, gate_check, nqubit };
enum class OutputFormat { csv, json };

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Environment variable holding the default worker count.
inline constexpr const char* kWorkersEnv = "CDGATE_WORKERS";

// Invalid command line or config; message names the offending flag.
class UsageError : public Error {
 public:
  using Error::Error;
};

// --help was requested; what() is the help text.
class HelpRequested : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  Command command = Command::spectrum;
  CnotParams params;
  std::optional<double> tau;     // single drive time
  std::string taus;              // range spec for tau axes
  bool full_range_ramp = false;
  std::string alpha;             // range spec, units of 2g
  bool cd = false;
  std::string output = "cdgate";
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::size_t samples = 201;
  double abs_tol = 1e-12;
  double rel_tol = 1e-11;
  bool bare_initial = false;
  bool gnuplot = false;
  std::size_t qubits = 3;
  double threshold = 0.9;
  int n_offset = 0;
  std::string method = "lindblad";
  std::size_t trajectories = 1000;
  double dt = 1e-2;

  std::vector<double> tau_values() const;
  // Absolute rates (alpha spec times 2g).
  std::vector<double> alpha_values() const;
  std::vector<double> alpha_gap_units() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

std::string command_name(Command c);
std::optional<Command> parse_command(const std::string& name);

// "start:stop:count" (linear), "start:stop:countlog" (log-spaced),
// "a,b,c" (explicit list) or a single number. Throws UsageError.
std::vector<double> parse_range(const std::string& spec, const std::string& flag);

// argv[0] is the program name, argv[1] the subcommand. Flags override
// values from --config FILE (JSON object keyed by long flag names).
// Throws UsageError or HelpRequested.
RunConfig parse_config(const std::vector<std::string>& argv);

// Command-specific checks; throws UsageError naming the flag.
void validate(const RunConfig& cfg);

// Echo suitable for --config: parsing it back yields an equal RunConfig.
nlohmann::json to_json(const RunConfig& cfg);

// Help text listing subcommands, flags and the range syntax.
std::string usage();

}  // namespace cdgate::cli
