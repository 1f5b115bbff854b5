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

#include "cdgate/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "cdgate/dynamics.hpp"
#include "cdgate/experiments.hpp"

namespace cdgate::cli {

namespace {

using nlohmann::json;

enum class Kind { real, integer, boolean, text };

struct Key {
  std::string name;
  Kind kind;
  std::string help;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> k = {
      {"j1", Kind::real, "energy scale J1 (> 0)"},
      {"g", Kind::real, "ZX coupling g (> 0)"},
      {"j2", Kind::real, "drive amplitude J2 in J2(t) = J2 t / tau (!= 0)"},
      {"tau", Kind::text, "drive time (spectrum/evolve) or tau axis in range syntax"},
      {"taus", Kind::text, "tau axis, range syntax"},
      {"full-range-ramp", Kind::boolean, "ramp J2(t) to +-J2 instead of +-J2/2"},
      {"alpha", Kind::text, "noise strengths in units of 2g, range syntax"},
      {"cd", Kind::boolean, "add the counterdiabatic field"},
      {"output", Kind::text, "output path prefix"},
      {"format", Kind::text, "csv or json"},
      {"seed", Kind::integer, "master seed"},
      {"workers", Kind::integer, "worker threads (default from CDGATE_WORKERS, else 1)"},
      {"samples", Kind::integer, "output samples per trajectory/spectrum (>= 2)"},
      {"abs-tol", Kind::real, "integrator absolute tolerance"},
      {"rel-tol", Kind::real, "integrator relative tolerance"},
      {"bare-initial", Kind::boolean, "start from |10> instead of |E1(-tau/2)>"},
      {"gnuplot", Kind::boolean, "write a gnuplot script next to each CSV"},
      {"qubits", Kind::integer, "register size for nqubit (2..6)"},
      {"threshold", Kind::real, "fidelity threshold for tradeoff, in (0.5, 1)"},
      {"n-offset", Kind::integer, "phase offset n for gate-check"},
      {"method", Kind::text, "noise evaluation: lindblad or trajectories"},
      {"trajectories", Kind::integer, "Monte-Carlo realizations per cell"},
      {"dt", Kind::real, "Monte-Carlo time step"},
  };
  return k;
}

const std::vector<std::pair<Command, std::string>>& command_table() {
  static const std::vector<std::pair<Command, std::string>> t = {
      {Command::spectrum, "spectrum"},   {Command::evolve, "evolve"},
      {Command::sweep_tau, "sweep-tau"}, {Command::sweep_noise, "sweep-noise"},
      {Command::heatmap, "heatmap"},     {Command::optimal_tau, "optimal-tau"},
      {Command::tradeoff, "tradeoff"},   {Command::gate_check, "gate-check"},
      {Command::nqubit, "nqubit"},
  };
  return t;
}

const char* command_help(Command c) {
  switch (c) {
    case Command::spectrum: return "instantaneous spectrum over t in [-tau/2, tau/2]";
    case Command::evolve: return "one sampled gate run (noisy when --alpha > 0)";
    case Command::sweep_tau: return "final fidelity and transition probability versus tau";
    case Command::sweep_noise: return "noisy final fidelity versus tau for each --alpha";
    case Command::heatmap: return "noisy final fidelity over the (alpha, tau) plane";
    case Command::optimal_tau: return "optimal drive time for each --alpha (no CD)";
    case Command::tradeoff: return "largest tau with fidelity >= threshold per alpha (CD)";
    case Command::gate_check: return "exact inverse-engineered gate versus U_CNOT";
    case Command::nqubit: return "tau sweep on the N-qubit generalization";
  }
  return "";
}

[[noreturn]] void fail(const std::string& flag, const std::string& what) {
  throw UsageError("--" + flag + ": " + what);
}

double to_real(const std::string& flag, const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::logic_error&) {
    fail(flag, "expected a number, got '" + s + "'");
  }
  if (pos != s.size() || !std::isfinite(v)) fail(flag, "expected a finite number, got '" + s + "'");
  return v;
}

long long to_integer(const std::string& flag, const std::string& s) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::logic_error&) {
    fail(flag, "expected an integer, got '" + s + "'");
  }
  if (pos != s.size()) fail(flag, "expected an integer, got '" + s + "'");
  return v;
}

std::size_t to_count(const std::string& flag, long long v) {
  if (v < 0) fail(flag, "must be non-negative");
  return static_cast<std::size_t>(v);
}

bool to_bool(const std::string& flag, const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  fail(flag, "expected true or false, got '" + s + "'");
}

std::string number_text(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Config-file values are funnelled through the same string parsers as flags.
std::string json_to_text(const std::string& key, Kind kind, const json& v) {
  switch (kind) {
    case Kind::real:
      if (!v.is_number()) fail(key, "expected a number in config file");
      return number_text(v.get<double>());
    case Kind::integer:
      if (!v.is_number_integer()) fail(key, "expected an integer in config file");
      return std::to_string(v.get<long long>());
    case Kind::boolean:
      if (!v.is_boolean()) fail(key, "expected true/false in config file");
      return v.get<bool>() ? "true" : "false";
    case Kind::text:
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number()) return number_text(v.get<double>());
      if (v.is_array()) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (!v[i].is_number()) fail(key, "array entries must be numbers");
          out += (i ? "," : "") + number_text(v[i].get<double>());
        }
        return out;
      }
      fail(key, "expected a string in config file");
  }
  fail(key, "unsupported value");
}

void apply(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "j1") {
    cfg.params.j1 = to_real(key, value);
  } else if (key == "g") {
    cfg.params.g = to_real(key, value);
  } else if (key == "j2") {
    cfg.params.j2_amp = to_real(key, value);
  } else if (key == "tau") {
    // Commands with a tau axis take a range here, same as --taus.
    if (cfg.command == Command::spectrum || cfg.command == Command::evolve) {
      cfg.tau = to_real(key, value);
    } else {
      cfg.taus = value;
    }
  } else if (key == "taus") {
    cfg.taus = value;
  } else if (key == "full-range-ramp") {
    cfg.full_range_ramp = to_bool(key, value);
  } else if (key == "alpha") {
    cfg.alpha = value;
  } else if (key == "cd") {
    cfg.cd = to_bool(key, value);
  } else if (key == "output") {
    cfg.output = value;
  } else if (key == "format") {
    if (value == "csv") {
      cfg.format = OutputFormat::csv;
    } else if (value == "json") {
      cfg.format = OutputFormat::json;
    } else {
      fail(key, "expected csv or json, got '" + value + "'");
    }
  } else if (key == "seed") {
    const long long v = to_integer(key, value);
    if (v < 0) fail(key, "must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(v);
  } else if (key == "workers") {
    cfg.workers = to_count(key, to_integer(key, value));
  } else if (key == "samples") {
    cfg.samples = to_count(key, to_integer(key, value));
  } else if (key == "abs-tol") {
    cfg.abs_tol = to_real(key, value);
  } else if (key == "rel-tol") {
    cfg.rel_tol = to_real(key, value);
  } else if (key == "bare-initial") {
    cfg.bare_initial = to_bool(key, value);
  } else if (key == "gnuplot") {
    cfg.gnuplot = to_bool(key, value);
  } else if (key == "qubits") {
    cfg.qubits = to_count(key, to_integer(key, value));
  } else if (key == "threshold") {
    cfg.threshold = to_real(key, value);
  } else if (key == "n-offset") {
    cfg.n_offset = static_cast<int>(to_integer(key, value));
  } else if (key == "method") {
    cfg.method = value;
  } else if (key == "trajectories") {
    cfg.trajectories = to_count(key, to_integer(key, value));
  } else if (key == "dt") {
    cfg.dt = to_real(key, value);
  } else {
    throw UsageError("unknown key '" + key + "'");
  }
}

std::string default_taus(Command c) {
  switch (c) {
    case Command::gate_check: return "0.5,1,7.3";
    case Command::tradeoff: return "0.1:200:80log";
    default: return "1:200:60log";
  }
}

std::string default_alpha(Command c) {
  switch (c) {
    case Command::heatmap: return "0:0.2:40";
    case Command::tradeoff: return "0.02:0.2:10log";
    case Command::evolve: return "0";
    default: return "";
  }
}

std::size_t default_workers() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      const long long v = std::stoll(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::logic_error&) {
    }
  }
  return 1;
}

}  // namespace

std::string command_name(Command c) {
  for (const auto& [cmd, name] : command_table()) {
    if (cmd == c) return name;
  }
  return "?";
}

std::optional<Command> parse_command(const std::string& name) {
  for (const auto& [cmd, n] : command_table()) {
    if (n == name) return cmd;
  }
  return std::nullopt;
}

std::vector<double> parse_range(const std::string& spec, const std::string& flag) {
  if (spec.empty()) fail(flag, "empty range");
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) fail(flag, "range must be start:stop:count[log], got '" + spec + "'");
    std::string count = parts[2];
    bool log = false;
    if (count.size() > 3 && count.ends_with("log")) {
      log = true;
      count.resize(count.size() - 3);
    }
    const double start = to_real(flag, parts[0]);
    const double stop = to_real(flag, parts[1]);
    const long long n = to_integer(flag, count);
    if (n < 0) fail(flag, "count must be >= 0");
    if (n == 0) return {};
    if (log && !(start > 0.0 && stop > 0.0)) fail(flag, "log range needs positive endpoints");
    return log ? logspace(start, stop, static_cast<std::size_t>(n))
               : linspace(start, stop, static_cast<std::size_t>(n));
  }
  std::vector<double> out;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(to_real(flag, p));
  return out;
}

std::vector<double> RunConfig::tau_values() const { return parse_range(taus, "taus"); }

std::vector<double> RunConfig::alpha_gap_units() const { return parse_range(alpha, "alpha"); }

std::vector<double> RunConfig::alpha_values() const {
  std::vector<double> out = alpha_gap_units();
  for (auto& a : out) a = alpha_from_gap_units(a, params.g);
  return out;
}

void validate(const RunConfig& cfg) {
  if (!(cfg.params.j1 > 0.0)) fail("j1", "must be > 0");
  if (!(cfg.params.g > 0.0)) fail("g", "must be > 0");
  if (cfg.params.j2_amp == 0.0) fail("j2", "must be nonzero");
  if (cfg.tau && !(*cfg.tau > 0.0)) fail("tau", "must be > 0");
  if (cfg.workers < 1) fail("workers", "must be >= 1");
  if (cfg.samples < 2) fail("samples", "must be >= 2");
  if (!(cfg.abs_tol > 0.0)) fail("abs-tol", "must be > 0");
  if (!(cfg.rel_tol > 0.0)) fail("rel-tol", "must be > 0");
  if (cfg.method != "lindblad" && cfg.method != "trajectories") {
    fail("method", "expected lindblad or trajectories, got '" + cfg.method + "'");
  }
  if (cfg.method == "trajectories") {
    if (cfg.trajectories < 100) fail("trajectories", "must be >= 100");
    if (!(cfg.dt > 0.0)) fail("dt", "must be > 0");
  }
  if (cfg.output.empty()) fail("output", "must not be empty");

  const auto check_taus = [&] {
    if (cfg.taus.empty()) fail("taus", "required for " + command_name(cfg.command));
    const auto t = cfg.tau_values();
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!(t[i] > 0.0)) fail("taus", "values must be > 0");
      if (i > 0 && !(t[i] > t[i - 1])) fail("taus", "values must be strictly ascending");
    }
  };
  const auto check_alpha = [&](bool positive) {
    if (cfg.alpha.empty()) fail("alpha", "required for " + command_name(cfg.command));
    const auto a = cfg.alpha_gap_units();
    if (a.empty()) fail("alpha", "needs at least one value");
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (positive ? !(a[i] > 0.0) : !(a[i] >= 0.0)) {
        fail("alpha", positive ? "values must be > 0" : "values must be >= 0");
      }
      if (i > 0 && !(a[i] > a[i - 1])) fail("alpha", "values must be strictly ascending");
    }
  };

  switch (cfg.command) {
    case Command::spectrum:
      if (!cfg.tau) fail("tau", "required for spectrum");
      break;
    case Command::evolve:
      if (!cfg.tau) fail("tau", "required for evolve");
      check_alpha(false);
      if (cfg.alpha_gap_units().size() != 1) fail("alpha", "evolve takes a single value");
      break;
    case Command::sweep_tau:
      check_taus();
      break;
    case Command::sweep_noise:
    case Command::heatmap:
      check_taus();
      check_alpha(false);
      break;
    case Command::optimal_tau:
      check_taus();
      check_alpha(true);
      if (cfg.cd) fail("cd", "optimal-tau is defined without the counterdiabatic field");
      break;
    case Command::tradeoff:
      check_taus();
      check_alpha(false);
      if (!(cfg.threshold > 0.5 && cfg.threshold < 1.0)) fail("threshold", "must be in (0.5, 1)");
      break;
    case Command::gate_check:
      check_taus();
      break;
    case Command::nqubit:
      check_taus();
      if (cfg.qubits < 2 || cfg.qubits > 6) fail("qubits", "must be between 2 and 6");
      break;
  }
}

RunConfig parse_config(const std::vector<std::string>& argv) {
  CLI::App app{"Counterdiabatic CNOT gate simulator", argv.empty() ? "cdgate" : argv[0]};
  app.require_subcommand(1);
  app.footer(
      "Range syntax for --taus and --alpha: start:stop:count (linear), start:stop:countlog\n"
      "(log-spaced), a,b,c (explicit list) or a single value. --alpha is in units of the\n"
      "minimal gap 2g. Exit codes: 0 success, 1 runtime failure, 2 usage error.");

  std::string config_path;
  std::map<std::string, CLI::App*> subs;
  std::map<std::string, std::map<std::string, CLI::Option*>> options;
  std::map<std::string, std::map<std::string, bool>> flags;
  std::map<std::string, std::map<std::string, std::string>> raw;

  for (const auto& [cmd, name] : command_table()) {
    CLI::App* sub = app.add_subcommand(name, command_help(cmd));
    subs[name] = sub;
    sub->add_option("--config", config_path, "JSON config file (keys = long flag names)");
    for (const Key& k : keys()) {
      if (k.kind == Kind::boolean) {
        options[name][k.name] = sub->add_flag("--" + k.name, flags[name][k.name], k.help);
      } else {
        options[name][k.name] = sub->add_option("--" + k.name, raw[name][k.name], k.help);
      }
    }
  }

  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  std::string chosen;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) chosen = name;
  }
  RunConfig cfg;
  cfg.command = *parse_command(chosen);
  cfg.workers = default_workers();

  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw UsageError("--config: cannot open '" + config_path + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw UsageError("--config: invalid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw UsageError("--config: top level must be an object");
    for (const auto& [key, value] : doc.items()) {
      if (key == "command") {
        if (!value.is_string() || value.get<std::string>() != chosen) {
          throw UsageError("--config: command " + value.dump() + " does not match '" + chosen + "'");
        }
        continue;
      }
      const auto it =
          std::find_if(keys().begin(), keys().end(), [&](const Key& k) { return k.name == key; });
      if (it == keys().end()) throw UsageError("--config: unknown key '" + key + "'");
      if (value.is_null()) {
        if (key != "tau") fail(key, "null is only allowed for tau");
        cfg.tau.reset();
        continue;
      }
      apply(cfg, key, json_to_text(key, it->kind, value));
    }
  }

  for (const Key& k : keys()) {
    if (options[chosen][k.name]->count() == 0) continue;
    apply(cfg, k.name, k.kind == Kind::boolean ? (flags[chosen][k.name] ? "true" : "false")
                                               : raw[chosen][k.name]);
  }

  if (cfg.taus.empty()) cfg.taus = default_taus(cfg.command);
  if (cfg.alpha.empty()) cfg.alpha = default_alpha(cfg.command);
  if (cfg.command == Command::spectrum && !cfg.tau) cfg.tau = 20.0;
  if (cfg.command == Command::tradeoff) cfg.cd = true;
  validate(cfg);
  return cfg;
}

json to_json(const RunConfig& cfg) {
  json j;
  j["command"] = command_name(cfg.command);
  j["j1"] = cfg.params.j1;
  j["g"] = cfg.params.g;
  j["j2"] = cfg.params.j2_amp;
  j["tau"] = cfg.tau ? json(*cfg.tau) : json(nullptr);
  j["taus"] = cfg.taus;
  j["full-range-ramp"] = cfg.full_range_ramp;
  j["alpha"] = cfg.alpha;
  j["cd"] = cfg.cd;
  j["output"] = cfg.output;
  j["format"] = cfg.format == OutputFormat::csv ? "csv" : "json";
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  j["samples"] = cfg.samples;
  j["abs-tol"] = cfg.abs_tol;
  j["rel-tol"] = cfg.rel_tol;
  j["bare-initial"] = cfg.bare_initial;
  j["gnuplot"] = cfg.gnuplot;
  j["qubits"] = cfg.qubits;
  j["threshold"] = cfg.threshold;
  j["n-offset"] = cfg.n_offset;
  j["method"] = cfg.method;
  j["trajectories"] = cfg.trajectories;
  j["dt"] = cfg.dt;
  return j;
}

std::string usage() {
  try {
    parse_config({"cdgate", "--help"});
  } catch (const HelpRequested& h) {
    return h.what();
  } catch (const Error&) {
  }
  return "";
}

}  // namespace cdgate::cli
