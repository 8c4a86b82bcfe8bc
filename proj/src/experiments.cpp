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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace cavgate {

namespace {

constexpr double kPi = std::numbers::pi;

const std::set<std::string> kPhysicsKeys{"g", "kappa", "gamma", "Delta", "delta"};

std::set<std::string> with_physics(std::set<std::string> keys) {
  keys.insert(kPhysicsKeys.begin(), kPhysicsKeys.end());
  return keys;
}

SystemParams params_from(const Config& cfg, const SystemParams& defaults) {
  SystemParams p;
  p.g = cfg.get_double("g", defaults.g);
  p.kappa = cfg.get_double("kappa", defaults.kappa);
  p.gamma = cfg.get_double("gamma", defaults.gamma);
  p.Delta = cfg.get_double("Delta", defaults.Delta);
  p.delta = cfg.get_double("delta", defaults.delta);
  p.validate();
  return p;
}

std::filesystem::path output_dir(const RunSettings& s) {
  std::filesystem::path dir = s.out_dir.empty() ? "." : s.out_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create output directory '" + dir.string() + "'");
  return dir;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  return out;
}

QuantumState target_A(const HilbertSpace& space) { return make_named_state(NamedState::A, space); }

StirapReadout parse_readout(const std::string& text) {
  if (text == "transfer") return StirapReadout::Transfer;
  if (text == "end") return StirapReadout::End;
  throw Error(ErrorKind::Config, "field 'readout': expected transfer or end, got '" + text + "'");
}

PulseSchedule schedule_from(const Config& cfg) {
  const std::string pulse = cfg.get_string("pulse", "constant");
  PulseSchedule s = [&] {
    if (pulse == "constant") {
      return PulseSchedule::constant(cfg.get_double("omega1", 0.0), cfg.get_double("omega_sigma", 0.0),
                                     cfg.require_double("T"));
    }
    if (pulse == "stirap_pair") {
      return PulseSchedule::stirap_pair(cfg.require_double("peak"), cfg.require_double("frequency"));
    }
    if (pulse == "linear_ramp") {
      return PulseSchedule::linear_ramp(cfg.require_double("omega_sigma"), cfg.require_double("slope"),
                                        cfg.require_double("T"));
    }
    if (pulse == "sine_ramp") {
      return PulseSchedule::sine_ramp(cfg.require_double("omega_sigma"), cfg.require_double("x_max"),
                                      cfg.require_double("frequency"));
    }
    throw Error(ErrorKind::Config, "field 'pulse': unknown shape '" + pulse +
                                       "' (expected constant, stirap_pair, linear_ramp, sine_ramp)");
  }();
  return cfg.get_int("reversed", 0) != 0 ? s.reversed() : s;
}

QuantumState initial_from(const Config& cfg, const HilbertSpace& space) {
  const std::string text = cfg.get_string("initial", "1,1,0");
  if (text.find(',') != std::string::npos) {
    QuantumState psi(space);
    psi.amplitudes()[space.index(parse_basis_label(text))] = 1.0;
    return psi;
  }
  const double theta = cfg.get_double("theta", 0.0);
  const double phi = cfg.get_double("phi", 0.0);
  static const std::map<std::string, NamedState> names{
      {"alpha", NamedState::Alpha}, {"A", NamedState::A}, {"alpha_tilde", NamedState::AlphaTilde},
      {"A_tilde", NamedState::ATilde}, {"E0", NamedState::E0}, {"E+", NamedState::EPlus},
      {"E-", NamedState::EMinus}};
  const auto it = names.find(text);
  if (it == names.end()) {
    throw Error(ErrorKind::Config, "field 'initial': expected a label 'l1,l2,n' or a named state, got '" +
                                       text + "'");
  }
  return make_named_state(it->second, space, theta, phi);
}

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto b = item.find_first_not_of(' ');
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(' ');
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

double decay_window_from(const Config& cfg, const SystemParams& p, double fallback) {
  const std::string w = cfg.get_string("decay_window", "");
  if (w.empty()) return fallback;
  if (w == "auto") return default_decay_window(p);
  const double v = parse_number("decay_window", w);
  if (v < 0.0) throw Error(ErrorKind::Config, "field 'decay_window' must be non-negative or auto");
  return v;
}

}  // namespace

PrepResult raman_prep(const SystemParams& params, double omega1, double omega_sigma,
                      const RunSettings& settings) {
  const HilbertSpace space(settings.n_max);
  const LaserAmplitudes lasers{omega1, omega_sigma};
  const RamanConstants c = raman_constants(params, lasers);
  if (c.K == 0.0) throw Error(ErrorKind::DivisionByZero, "E-Raman preparation needs K > 0");
  const double T = kPi / c.K;
  const PropagationResult r = propagate(DrivenSystem::constant(params, lasers, space),
                                        QuantumState::basis(space, AtomLevel::L1, AtomLevel::L1), T,
                                        settings.integrator());
  PrepResult out;
  out.protocol = "eraman";
  out.duration = T;
  out.readout_time = T;
  out.p0 = r.p0;
  out.fidelity = fidelity_conditional(r.final_state, target_A(space));
  out.state = r.final_state;
  return out;
}

PrepResult stirap_prep(const SystemParams& params, double peak, double frequency, StirapReadout readout,
                       const RunSettings& settings) {
  const HilbertSpace space(settings.n_max);
  const PulseSchedule pair = PulseSchedule::stirap_pair(peak, frequency);
  const double T = pair.total_time();
  const double t_read = readout == StirapReadout::Transfer ? 2.0 * T / 3.0 : T;
  IntegratorConfig cfg = settings.integrator();
  if (cfg.step <= 0.0) cfg.step = cfg.step_for(T);
  const PropagationResult r = propagate(DrivenSystem::scheduled(params, pair, space),
                                        QuantumState::basis(space, AtomLevel::L1, AtomLevel::L1), 0.0,
                                        t_read, cfg);
  PrepResult out;
  out.protocol = "stirap";
  out.duration = T;
  out.readout_time = t_read;
  out.p0 = r.p0;
  out.fidelity = fidelity_conditional(r.final_state, target_A(space));
  out.state = r.final_state;
  return out;
}

TrivialResult trivial_evolution(const SystemParams& params, double omega1, double T, double window,
                                const RunSettings& settings) {
  const HilbertSpace space(settings.n_max);
  const QuantumState psi0 = QuantumState::basis(space, AtomLevel::L0, AtomLevel::L1);
  const IntegratorConfig cfg = settings.integrator();
  PropagationResult r = propagate(DrivenSystem::constant(params, {omega1, 0.0}, space), psi0, T, cfg);
  if (window > 0.0) r = decay_window(r.final_state, params, window, cfg);
  return {fidelity_conditional(r.final_state, psi0), r.p0};
}

EvolveOutput run_evolve(const Config& cfg, const RunSettings& settings) {
  cfg.reject_unknown(with_physics({"pulse", "omega1", "omega_sigma", "T", "peak", "frequency", "slope",
                                  "x_max", "reversed", "initial", "theta", "phi", "record",
                                  "record_stride", "decay_window"}),
                     "evolve");
  const SystemParams params = params_from(cfg, SystemParams{});
  const HilbertSpace space(settings.n_max);
  const PulseSchedule schedule = schedule_from(cfg);
  const QuantumState psi0 = initial_from(cfg, space);

  IntegratorConfig icfg = settings.integrator();
  icfg.record_stride = cfg.get_int("record_stride", 0);
  if (icfg.record_stride < 0) throw Error(ErrorKind::Config, "field 'record_stride' must be >= 0");
  const std::vector<std::string> labels = split_labels(cfg.get_string("record", ""));
  for (const std::string& l : labels) icfg.recorded.push_back(parse_basis_label(l));
  if (!labels.empty() && icfg.record_stride == 0) icfg.record_stride = 1000;

  const double T = schedule.total_time();
  EvolveOutput out{propagate(DrivenSystem::scheduled(params, schedule, space), psi0, 0.0, T, icfg), {}};
  const double window = decay_window_from(cfg, params, 0.0);
  if (window > 0.0) {
    PropagationResult w = decay_window(out.result.final_state, params, window, icfg);
    for (std::size_t k = 1; k < w.trajectory.size(); ++k) {
      w.trajectory[k].t += T;
      out.result.trajectory.push_back(std::move(w.trajectory[k]));
    }
    out.result.final_state = w.final_state;
    out.result.p0 = w.p0;
    out.result.steps += w.steps;
  }

  const std::filesystem::path dir = output_dir(settings);
  {
    const auto path = dir / "evolve_state.csv";
    std::ofstream f = open_output(path);
    write_state_csv(f, out.result.final_state);
    out.files.push_back(path.string());
  }
  if (icfg.record_stride > 0) {
    const auto path = dir / "evolve_trajectory.csv";
    std::ofstream f = open_output(path);
    write_trajectory_csv(f, out.result.trajectory, labels);
    out.files.push_back(path.string());
  }
  return out;
}

PrepResult run_prep(const Config& cfg, const RunSettings& settings) {
  const std::string protocol = cfg.get_string("protocol", "eraman");
  PrepResult r;
  if (protocol == "eraman") {
    cfg.reject_unknown(with_physics({"protocol", "omega1", "omega_sigma"}), "prep (eraman)");
    const SystemParams p = params_from(cfg, SystemParams{1.0, 0.1, 0.1, 1.357, 0.0});
    const double o1 = cfg.get_double("omega1", 0.01);
    r = raman_prep(p, o1, cfg.get_double("omega_sigma", o1), settings);
  } else if (protocol == "stirap") {
    cfg.reject_unknown(with_physics({"protocol", "peak", "frequency", "readout"}), "prep (stirap)");
    const SystemParams p = params_from(cfg, SystemParams{1.0, 0.1, 0.1, 0.0, 0.0});
    r = stirap_prep(p, cfg.get_double("peak", 0.02), cfg.get_double("frequency", 4e-5),
                    parse_readout(cfg.get_string("readout", "transfer")), settings);
  } else {
    throw Error(ErrorKind::Config, "field 'protocol': expected eraman or stirap, got '" + protocol + "'");
  }
  if (!settings.out_dir.empty()) {
    std::ofstream f = open_output(output_dir(settings) / "prep_state.csv");
    write_state_csv(f, r.state);
  }
  return r;
}

void write_prep(std::ostream& out, const PrepResult& r) {
  char buf[128];
  out << "protocol = " << r.protocol << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", r.duration);
  out << "duration = " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", r.readout_time);
  out << "readout_time = " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", r.fidelity);
  out << "F = " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", r.p0);
  out << "P0 = " << buf << '\n';
}

GateProtocol gate_protocol_from_config(const Config& cfg) {
  const GateKind kind = parse_gate_kind(cfg.get_string("kind", "eraman"));
  const double kappa = cfg.get_double("kappa", 0.1);
  const double gamma = cfg.get_double("gamma", 0.1);
  const std::set<std::string> common{"kind", "model", "kappa", "gamma", "g", "target_phase"};
  auto allow = [&](std::set<std::string> extra, const char* what) {
    extra.insert(common.begin(), common.end());
    cfg.reject_unknown(extra, std::string("gate (") + what + ")");
  };

  std::optional<GateProtocol> p;
  switch (kind) {
    case GateKind::ERamanCP: {
      allow({"omega1", "omega_sigma", "Delta", "delta", "T", "ripple_amplitude", "ripple_cycles"}, "eraman");
      const double o1 = cfg.get_double("omega1", 0.01);
      p = make_eraman_cp(o1, cfg.get_double("omega_sigma", o1), cfg.get_double("Delta", 1.357), kappa, gamma);
      break;
    }
    case GateKind::OneLaserCP:
      allow({"omega1", "Delta", "delta", "T", "ripple_amplitude", "ripple_cycles"}, "one_laser");
      p = make_one_laser_cp(cfg.get_double("omega1", 0.01), cfg.get_double("Delta", 1.357), kappa, gamma);
      break;
    case GateKind::EStirapDynamicalCP:
      allow({"peak", "frequency", "Delta", "delta"}, "stirap_dynamical");
      p = make_stirap_dynamical_cp(cfg.get_double("peak", 0.02), cfg.get_double("frequency", 4e-5), kappa,
                                   gamma);
      break;
    case GateKind::EStirapGeometricCP:
      allow({"omega_sigma", "slope", "T", "delta", "Delta"}, "stirap_geometric");
      p = make_stirap_geometric_cp(cfg.get_double("omega_sigma", 0.02), cfg.get_double("slope", 4e-5),
                                   cfg.get_double("T", 1e5), cfg.get_double("delta", 1e-4), kappa, gamma);
      break;
  }
  GateProtocol& g = *p;
  g.params.g = cfg.get_double("g", g.params.g);
  g.params.Delta = cfg.get_double("Delta", g.params.Delta);
  g.params.delta = cfg.get_double("delta", g.params.delta);
  if (kind == GateKind::ERamanCP || kind == GateKind::OneLaserCP) {
    if (cfg.has("T")) {
      const LaserAmplitudes l = g.schedule.evaluate(0.0);
      g.schedule = PulseSchedule::constant(l.omega1.real(), l.omega_sigma.real(), cfg.require_double("T"));
    }
    const double a = cfg.get_double("ripple_amplitude", 0.0);
    const double cycles = cfg.get_double("ripple_cycles", 1.0);
    if (a != 0.0) {
      const double T = g.schedule.total_time();
      g.omega1_modulation = [a, cycles, T](double t) { return 1.0 + a * std::sin(2.0 * kPi * cycles * t / T); };
    }
  }
  g.target_phase = cfg.get_double("target_phase", g.target_phase);
  g.params.validate();
  return g;
}

GateReport run_gate(const Config& cfg, const RunSettings& settings) {
  const GateProtocol p = gate_protocol_from_config(cfg);
  const GateModel model = parse_gate_model(cfg.get_string("model", "full"));
  GateReport r = run_gate(p, model, HilbertSpace(settings.n_max), settings.integrator());
  if (!settings.out_dir.empty()) {
    std::ofstream f = open_output(output_dir(settings) / "gate.csv");
    write_report_csv(f, r);
  }
  return r;
}

}  // namespace cavgate
