// Copyright 2026 The cavgate Authors
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

#include "cavgate/gates.hpp"
#include "cavgate/hilbert.hpp"
#include "cavgate/propagate.hpp"
#include "cavgate/pulses.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cavgate {

extern const char* const kVersion;

/// Flat "name = value" text with '#' comments.
class Config {
 public:
  static Config parse(std::istream& in, const std::string& source = "<config>");
  static Config load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  double require_double(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;

  /// Throws ErrorKind::Config naming the first key outside `allowed`.
  void reject_unknown(const std::set<std::string>& allowed, const std::string& context) const;

 private:
  std::map<std::string, std::string> values_;
};

/// Parses a double, throwing ErrorKind::Config with the key name on failure.
double parse_number(const std::string& key, const std::string& text);

struct RunSettings {
  int threads = 1;
  int n_max = 2;
  double step = 0.0;  // <= 0 selects the integrator default
  std::string out_dir;  // empty: commands that must write use "."

  IntegratorConfig integrator() const;
};

// ---- experiments ----

struct PrepResult {
  std::string protocol;  // "eraman" or "stirap"
  double fidelity = 0.0;
  double p0 = 0.0;
  double duration = 0.0;
  double readout_time = 0.0;
  QuantumState state{HilbertSpace(0)};
};

/// |11> -> |A> with constant lasers for T = pi / K.
PrepResult raman_prep(const SystemParams& params, double omega1, double omega_sigma,
                      const RunSettings& settings);

enum class StirapReadout { Transfer, End };

/// Counterintuitive pair. Transfer reads out when the sigma pulse switches off
/// (2T/3); End reads out at T.
PrepResult stirap_prep(const SystemParams& params, double peak, double frequency, StirapReadout readout,
                       const RunSettings& settings);

struct TrivialResult {
  double fidelity = 0.0;
  double p0 = 0.0;
};

/// |01>|0> under Omega1 for T, followed by a free decay window.
TrivialResult trivial_evolution(const SystemParams& params, double omega1, double T, double window,
                                const RunSettings& settings);

// ---- command runners (config driven) ----

struct EvolveOutput {
  PropagationResult result;
  std::vector<std::string> files;
};

EvolveOutput run_evolve(const Config& cfg, const RunSettings& settings);
PrepResult run_prep(const Config& cfg, const RunSettings& settings);
GateProtocol gate_protocol_from_config(const Config& cfg);
GateReport run_gate(const Config& cfg, const RunSettings& settings);

void write_prep(std::ostream& out, const PrepResult& r);

// ---- sweeps ----

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int count = 2;

  double value(int i) const;
};

struct SweepSpec {
  std::string experiment;
  Axis axis1;
  Axis axis2;
  std::map<std::string, double> fixed;
  std::string readout = "transfer";  // stirap_prep_* only
};

struct SweepFailure {
  std::size_t index;
  std::string message;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<double> values;  // row-major in (axis1, axis2)
  std::vector<SweepFailure> failures;
  std::string integrator;
};

const std::vector<std::string>& experiment_ids();

/// Throws ErrorKind::Config on unknown experiments, axes or fixed names.
void validate_sweep(const SweepSpec& spec);
SweepSpec sweep_from_config(const Config& cfg);

/// A single grid point; throws on failure.
double evaluate_experiment(const SweepSpec& spec, double axis1, double axis2, const RunSettings& settings);

/// Per-point failures become NaN entries and are listed in the result.
SweepResult run_sweep(const SweepSpec& spec, const RunSettings& settings);
void write_sweep_csv(std::ostream& out, const SweepResult& result);

// ---- figures ----

const std::vector<std::string>& figure_ids();

/// Sweep spec behind a figure; resolution <= 0 selects the default grid.
SweepSpec figure_spec(const std::string& fig_id, int resolution);

struct FigureOutput {
  std::string csv_path;
  std::string plot_path;    // JSON description of the plot
  std::string script_path;  // gnuplot script
  SweepResult result;
};

/// Writes <out_dir>/<fig_id>.csv and <out_dir>/<fig_id>.plot.json.
FigureOutput reproduce_figure(const std::string& fig_id, int resolution, const RunSettings& settings);

}  // namespace cavgate
