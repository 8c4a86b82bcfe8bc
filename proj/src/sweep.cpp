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

#include "cavgate/analytic.hpp"
#include "cavgate/errors.hpp"
#include "cavgate/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

namespace cavgate {

namespace {

using ParamMap = std::map<std::string, double>;

struct ExperimentDef {
  std::string id;
  ParamMap defaults;
  std::set<std::string> optional;
};

const std::vector<ExperimentDef>& experiments() {
  static const std::vector<ExperimentDef> defs{
      {"fig3_P0",
       {{"omega1", 0.01}, {"Delta", 1.0}, {"kappa", 0.1}, {"gamma", 0.1}, {"T", 2000.0}, {"decay_window", -1.0}},
       {}},
      {"raman_prep_F", {{"omega1", 0.01}, {"Delta", 1.357}, {"delta", 0.0}, {"kappa", 0.1}, {"gamma", 0.1}},
       {"omega_sigma"}},
      {"raman_prep_P0", {{"omega1", 0.01}, {"Delta", 1.357}, {"delta", 0.0}, {"kappa", 0.1}, {"gamma", 0.1}},
       {"omega_sigma"}},
      {"stirap_prep_F", {{"peak", 0.02}, {"frequency", 4e-5}, {"kappa", 0.1}, {"gamma", 0.1}}, {}},
      {"stirap_prep_P0", {{"peak", 0.02}, {"frequency", 4e-5}, {"kappa", 0.1}, {"gamma", 0.1}}, {}},
      {"ramp_phase_linear", {{"slope", 4e-5}, {"T", 1e5}, {"delta", 1e-4}}, {}},
      {"ramp_phase_sine", {{"x_max", 1.0}, {"frequency", 1e-4}, {"delta", 1e-4}}, {}},
  };
  return defs;
}

const ExperimentDef& find_experiment(const std::string& id) {
  for (const ExperimentDef& d : experiments()) {
    if (d.id == id) return d;
  }
  std::string known;
  for (const ExperimentDef& d : experiments()) known += (known.empty() ? "" : ", ") + d.id;
  throw Error(ErrorKind::Config, "field 'experiment': unknown experiment '" + id + "' (expected " + known + ")");
}

bool accepts(const ExperimentDef& d, const std::string& name) {
  return d.defaults.count(name) != 0 || d.optional.count(name) != 0;
}

ParamMap resolve(const SweepSpec& spec, double a1, double a2) {
  ParamMap p = find_experiment(spec.experiment).defaults;
  for (const auto& [k, v] : spec.fixed) p[k] = v;
  p[spec.axis1.name] = a1;
  p[spec.axis2.name] = a2;
  return p;
}

Axis axis_from(const Config& cfg, const std::string& prefix) {
  Axis a;
  a.name = cfg.get_string(prefix, "");
  if (a.name.empty()) throw Error(ErrorKind::Config, "missing required field '" + prefix + "'");
  a.min = cfg.require_double(prefix + "_min");
  a.max = cfg.require_double(prefix + "_max");
  a.count = cfg.get_int(prefix + "_count", 21);
  return a;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double Axis::value(int i) const {
  if (i == count - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const ExperimentDef& d : experiments()) v.push_back(d.id);
    return v;
  }();
  return ids;
}

void validate_sweep(const SweepSpec& spec) {
  const ExperimentDef& d = find_experiment(spec.experiment);
  for (const Axis* a : {&spec.axis1, &spec.axis2}) {
    if (!accepts(d, a->name)) {
      throw Error(ErrorKind::Config, "unknown axis parameter '" + a->name + "' for experiment " + d.id);
    }
    if (a->count < 2) throw Error(ErrorKind::Config, "axis '" + a->name + "' needs count >= 2");
    if (!std::isfinite(a->min) || !std::isfinite(a->max)) {
      throw Error(ErrorKind::Config, "axis '" + a->name + "' bounds must be finite");
    }
  }
  if (spec.axis1.name == spec.axis2.name) {
    throw Error(ErrorKind::Config, "axis1 and axis2 name the same parameter '" + spec.axis1.name + "'");
  }
  for (const auto& [name, value] : spec.fixed) {
    if (!accepts(d, name)) {
      throw Error(ErrorKind::Config, "unknown parameter '" + name + "' for experiment " + d.id);
    }
  }
  if (spec.readout != "transfer" && spec.readout != "end") {
    throw Error(ErrorKind::Config, "field 'readout': expected transfer or end, got '" + spec.readout + "'");
  }
}

SweepSpec sweep_from_config(const Config& cfg) {
  SweepSpec spec;
  spec.experiment = cfg.get_string("experiment", "");
  if (spec.experiment.empty()) throw Error(ErrorKind::Config, "missing required field 'experiment'");
  const ExperimentDef& d = find_experiment(spec.experiment);
  spec.axis1 = axis_from(cfg, "axis1");
  spec.axis2 = axis_from(cfg, "axis2");
  spec.readout = cfg.get_string("readout", "transfer");
  const std::set<std::string> reserved{"experiment", "readout",   "axis1",     "axis1_min",  "axis1_max",
                                       "axis1_count", "axis2",   "axis2_min", "axis2_max", "axis2_count"};
  for (const auto& [key, value] : cfg.values()) {
    if (reserved.count(key) != 0) continue;
    if (!accepts(d, key)) throw Error(ErrorKind::Config, "unknown field '" + key + "' for sweep of " + d.id);
    spec.fixed[key] = parse_number(key, value);
  }
  validate_sweep(spec);
  return spec;
}

double evaluate_experiment(const SweepSpec& spec, double a1, double a2, const RunSettings& settings) {
  const ParamMap p = resolve(spec, a1, a2);
  const std::string& id = spec.experiment;
  auto get = [&p](const char* k) { return p.at(k); };
  if (id == "fig3_P0") {
    SystemParams sp{1.0, get("kappa"), get("gamma"), get("Delta"), 0.0};
    const double w = get("decay_window") < 0.0 ? default_decay_window(sp) : get("decay_window");
    return trivial_evolution(sp, get("omega1"), get("T"), w, settings).p0;
  }
  if (id == "raman_prep_F" || id == "raman_prep_P0") {
    const SystemParams sp{1.0, get("kappa"), get("gamma"), get("Delta"), get("delta")};
    const double o1 = get("omega1");
    const auto os = p.find("omega_sigma");
    const PrepResult r = raman_prep(sp, o1, os == p.end() ? o1 : os->second, settings);
    return id == "raman_prep_F" ? r.fidelity : r.p0;
  }
  if (id == "stirap_prep_F" || id == "stirap_prep_P0") {
    const SystemParams sp{1.0, get("kappa"), get("gamma"), 0.0, 0.0};
    const StirapReadout ro = spec.readout == "end" ? StirapReadout::End : StirapReadout::Transfer;
    const PrepResult r = stirap_prep(sp, get("peak"), get("frequency"), ro, settings);
    return id == "stirap_prep_F" ? r.fidelity : r.p0;
  }
  if (id == "ramp_phase_linear") {
    return ramp_phase(PulseSchedule::linear_ramp(1.0, get("slope"), get("T")), get("delta")).ratio;
  }
  if (id == "ramp_phase_sine") {
    return ramp_phase(PulseSchedule::sine_ramp(1.0, get("x_max"), get("frequency")), get("delta")).ratio;
  }
  throw Error(ErrorKind::Config, "unknown experiment '" + id + "'");
}

SweepResult run_sweep(const SweepSpec& spec, const RunSettings& settings) {
  validate_sweep(spec);
  const int n1 = spec.axis1.count;
  const int n2 = spec.axis2.count;
  const std::size_t total = static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2);

  SweepResult result;
  result.spec = spec;
  result.values.assign(total, std::numeric_limits<double>::quiet_NaN());
  result.integrator = "rk4 step=" + fmt(settings.step) + " n_max=" + std::to_string(settings.n_max);
  std::vector<std::string> errors(total);

  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const double a1 = spec.axis1.value(static_cast<int>(i / n2));
      const double a2 = spec.axis2.value(static_cast<int>(i % n2));
      try {
        result.values[i] = evaluate_experiment(spec, a1, a2, settings);
      } catch (const std::exception& e) {
        errors[i] = e.what();
        const std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "sweep: point " << i << " (" << spec.axis1.name << "=" << a1 << ", " << spec.axis2.name
                  << "=" << a2 << ") failed: " << e.what() << '\n';
      }
    }
  };
  const std::size_t threads =
      std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(settings.threads, 1)), total));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (std::size_t i = 0; i < total; ++i) {
    if (!errors[i].empty()) result.failures.push_back({i, errors[i]});
  }
  return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& r) {
  const SweepSpec& s = r.spec;
  out << "# cavgate sweep\n";
  out << "# version = " << kVersion << '\n';
  out << "# experiment = " << s.experiment << '\n';
  out << "# units = hbar = g = 1, times in 1/g\n";
  for (const auto* a : {&s.axis1, &s.axis2}) {
    out << "# " << (a == &s.axis1 ? "axis1" : "axis2") << " = " << a->name << " linspace(" << fmt(a->min)
        << ", " << fmt(a->max) << ", " << a->count << ")\n";
  }
  ParamMap fixed = find_experiment(s.experiment).defaults;
  for (const auto& [k, v] : s.fixed) fixed[k] = v;
  for (const auto& [k, v] : fixed) {
    if (k == s.axis1.name || k == s.axis2.name) continue;
    out << "# fixed." << k << " = " << fmt(v) << '\n';
  }
  if (s.experiment.rfind("stirap_prep", 0) == 0) out << "# readout = " << s.readout << '\n';
  out << "# integrator = " << r.integrator << '\n';
  out << "# failures = " << r.failures.size() << '\n';
  for (const SweepFailure& f : r.failures) out << "# failure " << f.index << ": " << f.message << '\n';
  out << "axis1,axis2,value\n";
  const int n2 = s.axis2.count;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    out << fmt(s.axis1.value(static_cast<int>(i / n2))) << ',' << fmt(s.axis2.value(static_cast<int>(i % n2)))
        << ',' << fmt(r.values[i]) << '\n';
  }
}

}  // namespace cavgate
