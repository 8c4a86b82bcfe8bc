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

#include "cavgate/gates.hpp"

#include "cavgate/analytic.hpp"
#include "cavgate/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace cavgate {

namespace {

constexpr double kPi = std::numbers::pi;
const std::array<std::pair<AtomLevel, AtomLevel>, 4> kBranches{{
    {AtomLevel::L0, AtomLevel::L0},
    {AtomLevel::L0, AtomLevel::L1},
    {AtomLevel::L1, AtomLevel::L0},
    {AtomLevel::L1, AtomLevel::L1},
}};
const std::array<const char*, 4> kBranchNames{"00", "01", "10", "11"};

// Effective-model step for the slowly varying three-level runs.
constexpr double kEffectiveStirapStep = 0.5;

LaserProgram modulated(const GateProtocol& p, const PulseSchedule& schedule) {
  const AmplitudeModulation m = p.omega1_modulation;
  const double T = schedule.total_time();
  return [schedule, m, T](double t) {
    LaserAmplitudes l = schedule.evaluate(std::clamp(t, 0.0, T));
    if (m) l.omega1 *= m(t);
    return l;
  };
}

DrivenSystem full_system(const GateProtocol& p, const PulseSchedule& schedule, const HilbertSpace& space) {
  if (!p.omega1_modulation) return DrivenSystem::scheduled(p.params, schedule, space);
  return DrivenSystem::programmed(p.params, modulated(p, schedule), space, schedule.breakpoints());
}

struct Sampled {
  double max_omega = 0.0;
  double max_omega1 = 0.0;
  double max_omega_sigma = 0.0;
};

Sampled scan(const GateProtocol& p) {
  Sampled s;
  const LaserProgram program = modulated(p, p.schedule);
  const double T = p.schedule.total_time();
  constexpr int kSamples = 2001;
  for (int k = 0; k < kSamples; ++k) {
    const LaserAmplitudes l = program(T * k / (kSamples - 1));
    s.max_omega1 = std::max(s.max_omega1, std::abs(l.omega1));
    s.max_omega_sigma = std::max(s.max_omega_sigma, std::abs(l.omega_sigma));
  }
  s.max_omega = std::max(s.max_omega1, s.max_omega_sigma);
  return s;
}

std::string format(const char* fmt, double a, double b) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

// int Delta11 dt over the protocol, with the amplitude ripple included.
double integrated_light_shift(const GateProtocol& p) {
  const LaserProgram program = modulated(p, p.schedule);
  const double T = p.schedule.total_time();
  constexpr int kIntervals = 200000;
  const double h = T / kIntervals;
  double sum = 0.0;
  for (int k = 0; k <= kIntervals; ++k) {
    const double w = std::norm(program(k * h).omega1);
    sum += (k == 0 || k == kIntervals) ? 0.5 * w : w;
  }
  return -sum * h / (4.0 * p.params.Delta);
}

void regime_warnings(const GateProtocol& p, GateReport& r) {
  const Sampled s = scan(p);
  if (s.max_omega > 0.1 * p.params.g) {
    r.warnings.push_back(format("laser amplitude %.3g is not weak against g = %.3g", s.max_omega, p.params.g));
  }
  if ((p.kind == GateKind::ERamanCP || p.kind == GateKind::OneLaserCP) &&
      s.max_omega > 0.1 * std::abs(p.params.Delta)) {
    r.warnings.push_back(
        format("laser amplitude %.3g is not small against Delta = %.3g", s.max_omega, p.params.Delta));
  }
  if (p.kind == GateKind::EStirapDynamicalCP || p.kind == GateKind::EStirapGeometricCP) {
    const double a = adiabaticity_ratio(p.schedule, p.params.delta);
    r.adiabaticity = a;
    if (a > 1e-2) r.warnings.push_back(format("adiabaticity ratio %.3g exceeds %.3g", a, 1e-2));
  }
}

double qubit_population(const QuantumState& psi) {
  const HilbertSpace& space = psi.space();
  double sum = 0.0;
  for (const auto& [l1, l2] : kBranches) sum += std::norm(psi.amplitudes()[space.index({l1, l2, 0})]);
  return sum;
}

void fill_branch(BranchResult& b, Complex amplitude, double norm2, double qubit_pop) {
  b.amplitude = amplitude;
  b.magnitude = std::abs(amplitude);
  b.phase = std::arg(amplitude);
  b.p0 = norm2;
  b.leakage = norm2 > 0.0 ? std::max(0.0, 1.0 - qubit_pop / norm2) : 1.0;
}

void run_full(const GateProtocol& p, const HilbertSpace& space, const IntegratorConfig& cfg,
              GateReport& r) {
  for (std::size_t k = 0; k < 4; ++k) {
    const auto [l1, l2] = kBranches[k];
    QuantumState psi(space);
    psi.amplitude(l1, l2) = 1.0;
    const PropagationResult leg = propagate(full_system(p, p.schedule, space), psi, 0.0,
                                            p.schedule.total_time(), cfg);
    QuantumState out = leg.final_state;
    if (p.kind == GateKind::EStirapDynamicalCP) {
      const QuantumState flipped(space, two_pi_flip(space).matrix * out.amplitudes());
      const PulseSchedule back = p.schedule.reversed();
      out = propagate(full_system(p, back, space), flipped, 0.0, back.total_time(), cfg).final_state;
    }
    const Complex a = out.amplitudes()[space.index({l1, l2, 0})];
    fill_branch(r.branches[k], a, out.norm2(), qubit_population(out));
  }
}

IntegratorConfig stirap_effective_config(const IntegratorConfig& cfg) {
  IntegratorConfig c = cfg;
  if (c.step <= 0.0) c.step = kEffectiveStirapStep;
  return c;
}

Eigen::VectorXcd run_effective_stirap(const GateProtocol& p, const IntegratorConfig& cfg) {
  const IntegratorConfig c = stirap_effective_config(cfg);
  auto program = [&p](const PulseSchedule& sched) -> EffectiveProgram {
    const LaserProgram lasers = modulated(p, sched);
    const SystemParams params = p.params;
    return [lasers, params](double t) { return build_effective(params, lasers(t)).matrix; };
  };
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(3);
  psi[kEff11] = 1.0;
  const PulseSchedule& fwd = p.schedule;
  psi = propagate_effective(program(fwd), psi, 0.0, fwd.total_time(), c, fwd.breakpoints()).final_state;
  if (p.kind == GateKind::EStirapDynamicalCP) {
    psi = two_pi_flip_effective() * psi;
    const PulseSchedule back = fwd.reversed();
    psi = propagate_effective(program(back), psi, 0.0, back.total_time(), c, back.breakpoints()).final_state;
  }
  return psi;
}

Eigen::VectorXcd run_effective_raman(const GateProtocol& p, const IntegratorConfig& cfg) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(2);
  psi[0] = 1.0;
  const double T = p.schedule.total_time();
  if (!p.omega1_modulation) {
    const Eigen::MatrixXcd h = build_raman_reduced(p.params, p.schedule.evaluate(0.0)).matrix;
    return propagate_effective(h, psi, T, cfg).final_state;
  }
  const LaserProgram lasers = modulated(p, p.schedule);
  const SystemParams params = p.params;
  EffectiveProgram h = [lasers, params](double t) { return build_raman_reduced(params, lasers(t)).matrix; };
  return propagate_effective(h, psi, 0.0, T, cfg).final_state;
}

void run_effective(const GateProtocol& p, const IntegratorConfig& cfg, GateReport& r) {
  // Level 0 is dark and, in the effective description, single-excitation
  // branches carry no light shift: 00, 01 and 10 are stationary.
  for (std::size_t k = 0; k < 3; ++k) fill_branch(r.branches[k], 1.0, 1.0, 1.0);
  const bool raman = p.kind == GateKind::ERamanCP || p.kind == GateKind::OneLaserCP;
  const Eigen::VectorXcd psi = raman ? run_effective_raman(p, cfg) : run_effective_stirap(p, cfg);
  const Complex a = psi[kEff11];
  fill_branch(r.branches[3], a, psi.squaredNorm(), std::norm(a));
}

}  // namespace

const char* to_string(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::ERamanCP: return "eraman";
    case GateKind::OneLaserCP: return "one_laser";
    case GateKind::EStirapDynamicalCP: return "stirap_dynamical";
    case GateKind::EStirapGeometricCP: return "stirap_geometric";
  }
  return "?";
}

const char* to_string(GateModel model) noexcept {
  return model == GateModel::Full ? "full" : "effective";
}

GateKind parse_gate_kind(const std::string& text) {
  for (GateKind k : {GateKind::ERamanCP, GateKind::OneLaserCP, GateKind::EStirapDynamicalCP,
                     GateKind::EStirapGeometricCP}) {
    if (text == to_string(k)) return k;
  }
  throw Error(ErrorKind::Config, "unknown gate kind '" + text +
                                     "' (expected eraman, one_laser, stirap_dynamical, stirap_geometric)");
}

GateModel parse_gate_model(const std::string& text) {
  if (text == "full") return GateModel::Full;
  if (text == "effective") return GateModel::Effective;
  throw Error(ErrorKind::Config, "unknown model '" + text + "' (expected full or effective)");
}

GateProtocol make_eraman_cp(double omega1, double omega_sigma, double Delta, double kappa, double gamma) {
  SystemParams params{1.0, kappa, gamma, Delta, 0.0};
  params.delta = (omega1 * omega1 + omega_sigma * omega_sigma) / (4.0 * Delta);
  const RamanConstants c = raman_constants(params, {omega1, omega_sigma});
  if (c.K == 0.0) throw Error(ErrorKind::DivisionByZero, "E-Raman gate needs K > 0");
  return {GateKind::ERamanCP, params, PulseSchedule::constant(omega1, omega_sigma, 2.0 * kPi / c.K), kPi, {}};
}

GateProtocol make_one_laser_cp(double omega1, double Delta, double kappa, double gamma) {
  const SystemParams params{1.0, kappa, gamma, Delta, 0.0};
  const RamanConstants c = raman_constants(params, {omega1, 0.0});
  if (c.K == 0.0) throw Error(ErrorKind::DivisionByZero, "one-laser gate needs a nonzero light shift");
  return {GateKind::OneLaserCP, params, PulseSchedule::constant(omega1, 0.0, kPi / c.K), kPi, {}};
}

GateProtocol make_stirap_dynamical_cp(double peak, double frequency, double kappa, double gamma) {
  const SystemParams params{1.0, kappa, gamma, 0.0, 0.0};
  return {GateKind::EStirapDynamicalCP, params, PulseSchedule::stirap_pair(peak, frequency), kPi, {}};
}

GateProtocol make_stirap_geometric_cp(double omega_sigma, double slope, double T, double delta,
                                      double kappa, double gamma) {
  const SystemParams params{1.0, kappa, gamma, 0.0, delta};
  const PulseSchedule ramp = PulseSchedule::linear_ramp(omega_sigma, slope, T);
  const double target = wrap_phase(-ramp_phase(ramp, delta).phi_g);
  return {GateKind::EStirapGeometricCP, params, ramp, target, {}};
}

double protocol_duration(const GateProtocol& p) {
  const double T = p.schedule.total_time();
  return p.kind == GateKind::EStirapDynamicalCP ? 2.0 * T : T;
}

double extract_phase(const std::array<Complex, 4>& a) {
  for (std::size_t k = 0; k < 4; ++k) {
    if (!(std::abs(a[k]) >= 1e-6)) {
      std::ostringstream msg;
      msg << "phase undefined: branch " << kBranchNames[k] << " amplitude " << std::abs(a[k])
          << " is below 1e-6";
      throw Error(ErrorKind::UndefinedPhase, msg.str());
    }
  }
  return wrap_phase(std::arg(a[3]) - std::arg(a[2]) - std::arg(a[1]) + std::arg(a[0]));
}

double gate_fidelity(const std::array<Complex, 4>& a, double phi_ref) {
  const Complex trace = a[0] + a[1] + a[2] + std::exp(Complex(0.0, -phi_ref)) * a[3];
  return std::norm(trace) / 16.0;
}

GateReport run_gate(const GateProtocol& p, GateModel model, const HilbertSpace& space,
                    const IntegratorConfig& cfg) {
  p.params.validate();
  GateReport r;
  r.kind = p.kind;
  r.model = model;
  r.duration = protocol_duration(p);
  r.delta = p.params.delta;
  r.target_phase = p.target_phase;
  for (std::size_t k = 0; k < 4; ++k) r.branches[k].label = kBranchNames[k];
  regime_warnings(p, r);

  switch (p.kind) {
    case GateKind::ERamanCP: {
      const RamanConstants c = raman_constants(p.params, p.schedule.evaluate(0.0));
      r.predicted_phase = wrap_phase(kPi + 0.5 * (c.Delta11 + c.DeltaA) * p.schedule.total_time());
      break;
    }
    case GateKind::OneLaserCP: {
      const double integral = integrated_light_shift(p);
      r.one_laser_integral = integral;
      r.one_laser_integral_plus_pi = kPi + integral;
      r.predicted_phase = std::numeric_limits<double>::quiet_NaN();
      break;
    }
    case GateKind::EStirapDynamicalCP:
      r.predicted_phase = kPi;
      break;
    case GateKind::EStirapGeometricCP:
      r.predicted_phase = wrap_phase(-ramp_phase(p.schedule, p.params.delta).phi_g);
      break;
  }

  if (model == GateModel::Full) {
    run_full(p, space, cfg, r);
  } else {
    run_effective(p, cfg, r);
  }

  std::array<Complex, 4> raw{};
  std::array<Complex, 4> unit{};
  for (std::size_t k = 0; k < 4; ++k) {
    raw[k] = r.branches[k].amplitude;
    const double n = std::sqrt(r.branches[k].p0);
    unit[k] = n > 0.0 ? raw[k] / n : Complex{};
  }
  r.extracted_phi = extract_phase(raw);
  r.fidelity_extracted = gate_fidelity(raw, r.extracted_phi);
  r.fidelity_target = gate_fidelity(raw, r.target_phase);
  r.fidelity_extracted_renormalized = gate_fidelity(unit, r.extracted_phi);
  r.fidelity_target_renormalized = gate_fidelity(unit, r.target_phase);
  return r;
}

namespace {

void kv(std::ostream& out, const std::string& key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  out << key << " = " << buf << '\n';
}

}  // namespace

void write_report(std::ostream& out, const GateReport& r) {
  out << "kind = " << to_string(r.kind) << '\n';
  out << "model = " << to_string(r.model) << '\n';
  kv(out, "duration", r.duration);
  kv(out, "delta", r.delta);
  kv(out, "target_phase", r.target_phase);
  kv(out, "predicted_phase", r.predicted_phase);
  kv(out, "extracted_phi", r.extracted_phi);
  kv(out, "fidelity_extracted", r.fidelity_extracted);
  kv(out, "fidelity_target", r.fidelity_target);
  kv(out, "fidelity_extracted_renormalized", r.fidelity_extracted_renormalized);
  kv(out, "fidelity_target_renormalized", r.fidelity_target_renormalized);
  if (r.one_laser_integral) kv(out, "one_laser_integral", *r.one_laser_integral);
  if (r.one_laser_integral_plus_pi) kv(out, "one_laser_integral_plus_pi", *r.one_laser_integral_plus_pi);
  if (r.adiabaticity) kv(out, "adiabaticity", *r.adiabaticity);
  for (const BranchResult& b : r.branches) {
    const std::string p = "branch_" + b.label + "_";
    kv(out, p + "magnitude", b.magnitude);
    kv(out, p + "phase", b.phase);
    kv(out, p + "p0", b.p0);
    kv(out, p + "leakage", b.leakage);
  }
  for (std::size_t k = 0; k < r.warnings.size(); ++k) {
    out << "warning_" << k << " = " << r.warnings[k] << '\n';
  }
}

void write_report_csv(std::ostream& out, const GateReport& r) {
  out << "branch,re,im,magnitude,phase,p0,leakage\n";
  char buf[256];
  for (const BranchResult& b : r.branches) {
    std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", b.label.c_str(),
                  b.amplitude.real(), b.amplitude.imag(), b.magnitude, b.phase, b.p0, b.leakage);
    out << buf;
  }
}

}  // namespace cavgate
