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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

namespace cavgate {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr Complex kI{0.0, 1.0};

constexpr std::size_t kMinSamples = 10001;
constexpr std::size_t kMaxSamples = (std::size_t{1} << 24) + 1;

bool path_closes(const SampledPath& path) {
  if (path.size() < 2) return true;
  const double dtheta = std::abs(path.theta.back() - path.theta.front());
  if (dtheta > 1e-9) return false;
  if (std::abs(std::sin(path.theta.front())) < 1e-9) return true;  // loop through a pole
  return std::abs(wrap_phase(path.phi.back() - path.phi.front())) < 1e-9;
}

// Refined sampling has twice the intervals of the previous one.
std::size_t refine(std::size_t samples) { return 2 * samples - 1; }

double max_change(const StirapPhases& a, const StirapPhases& b) {
  double m = 0.0;
  for (int k = 0; k < 3; ++k) {
    m = std::max(m, std::abs(a.phi_d[k] - b.phi_d[k]));
    m = std::max(m, std::abs(a.phi_g[k] - b.phi_g[k]));
  }
  return m;
}

double ramp_integrand(const PulseSchedule& ramp, double t) {
  const double x = ramp.ratio(t);
  return x * x / (1.0 + x * x);
}

// Trapezoid sums on [a, b] refined by doubling, with Richardson extrapolation
// of the sequence. Returns the integral and the final number of intervals.
std::pair<double, std::size_t> romberg(const PulseSchedule& ramp, double a, double b,
                                       std::size_t min_intervals) {
  constexpr int kLevels = 24;
  std::size_t n = 1;
  while (n < min_intervals) n *= 2;
  double h = (b - a) / static_cast<double>(n);
  double sum = 0.5 * (ramp_integrand(ramp, a) + ramp_integrand(ramp, b));
  for (std::size_t k = 1; k < n; ++k) sum += ramp_integrand(ramp, a + static_cast<double>(k) * h);
  std::vector<double> prev{sum * h};
  double last_change = std::numeric_limits<double>::infinity();
  for (int level = 1; level < kLevels; ++level) {
    double mid = 0.0;
    for (std::size_t k = 0; k < n; ++k) mid += ramp_integrand(ramp, a + (static_cast<double>(k) + 0.5) * h);
    sum += mid;
    n *= 2;
    h *= 0.5;
    std::vector<double> row{sum * h};
    double factor = 1.0;
    for (std::size_t j = 1; j <= prev.size(); ++j) {
      factor *= 4.0;
      row.push_back(row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1.0));
    }
    // Stop at the tolerance or once the change stalls at the rounding floor.
    const double change = std::abs(row.back() - prev.back());
    if (level >= 3 && (change <= 1e-14 * std::max(1.0, std::abs(row.back())) || change >= last_change)) {
      return {row.back(), n};
    }
    last_change = change;
    prev = std::move(row);
  }
  return {prev.back(), n};
}

}  // namespace

double wrap_phase(double phi) {
  double r = std::remainder(phi, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

Eigen::Matrix2cd raman_propagator(const RamanConstants& c, double T) {
  const Complex global = std::exp(kI * (0.5 * (c.Delta11 + c.DeltaA) * T));
  Eigen::Matrix2cd u;
  if (c.K == 0.0) {
    // Omega = 0 and Delta11 = DeltaA: both levels pick up the same phase.
    u << 1.0, 0.0, 0.0, 1.0;
    return global * u;
  }
  const double cs = std::cos(0.5 * c.K * T);
  const double sn = std::sin(0.5 * c.K * T);
  const double d = (c.Delta11 - c.DeltaA) / c.K;
  u(0, 0) = Complex(cs, d * sn);
  u(1, 1) = Complex(cs, -d * sn);
  u(0, 1) = -kI * (c.Omega / c.K) * sn;
  u(1, 0) = -kI * (std::conj(c.Omega) / c.K) * sn;
  return global * u;
}

StirapEigensystem stirap_eigensystem(Complex omega1, Complex omega_sigma, double Delta, double delta,
                                     double t) {
  const double rms = std::sqrt(std::norm(omega1) + std::norm(omega_sigma));
  if (rms == 0.0) {
    throw Error(ErrorKind::DegenerateInput, "dark state undefined: both laser amplitudes vanish");
  }
  const double root = std::sqrt(rms * rms + Delta * Delta);
  StirapEigensystem es;
  es.values << 0.0, 0.5 * (-Delta + root), 0.5 * (-Delta - root);

  const Complex rot = std::exp(Complex(0.0, -delta * t));
  Eigen::Vector3cd dark(std::conj(omega_sigma) / rms, -rot * std::conj(omega1) / rms, 0.0);
  Eigen::Vector3cd bright(omega1 / rms, rot * omega_sigma / rms, 0.0);
  const Eigen::Vector3cd alpha(0.0, 0.0, 1.0);
  es.vectors.col(0) = dark;
  for (int k = 1; k < 3; ++k) {
    const double e = es.values[k];
    // (Omega_rms / 2) B + E alpha, normalized with a positive alpha weight.
    const double b = 0.5 * rms;
    const double n = std::hypot(b, e);
    const double sign = e < 0.0 ? -1.0 : 1.0;
    es.vectors.col(k) = (sign / n) * (b * bright + e * alpha);
  }
  return es;
}

Eigen::Matrix3cd stirap_rotation(double theta, double phi) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex e = std::exp(Complex(0.0, phi));
  const double r2 = std::sqrt(2.0);
  Eigen::Matrix3cd r;
  r << 2.0 * c, r2 * s, -r2 * s,
      -r2 * e * s, 1.0 + e * c, 1.0 - e * c,
      r2 * e * s, 1.0 - e * c, 1.0 + e * c;
  return 0.5 * r;
}

Eigen::Matrix3cd stirap_reference_basis() {
  Eigen::Matrix3cd w;
  w << 1.0, 0.0, 0.0,
      0.0, kInvSqrt2, -kInvSqrt2,
      0.0, kInvSqrt2, kInvSqrt2;
  return w;
}

SampledPath sample_path(const PulseSchedule& schedule, double delta, std::size_t samples) {
  if (samples < 2) throw Error(ErrorKind::Precondition, "a path needs at least two samples");
  const double T = schedule.total_time();
  SampledPath p;
  p.t.resize(samples);
  p.theta.resize(samples);
  p.phi.resize(samples);
  p.omega_rms.resize(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = k + 1 == samples ? T : T * static_cast<double>(k) / static_cast<double>(samples - 1);
    const LaserAmplitudes l = schedule.evaluate(t);
    const ControlAngles a = angles(schedule, t, delta);
    p.t[k] = t;
    p.theta[k] = a.theta;
    p.phi[k] = a.phi;
    p.omega_rms[k] = std::sqrt(std::norm(l.omega1) + std::norm(l.omega_sigma));
  }
  return p;
}

StirapPhases phases(const SampledPath& path, PhaseMode mode) {
  if (mode == PhaseMode::ClosedLoop && !path_closes(path)) {
    std::ostringstream msg;
    msg << "closed-loop phase requested on an open path (theta " << path.theta.front() << " -> "
        << path.theta.back() << ")";
    throw Error(ErrorKind::OpenPath, msg.str());
  }
  StirapPhases out;
  out.samples = path.size();
  double dyn = 0.0;
  double g0 = 0.0;
  double gpm = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const double dt = path.t[k + 1] - path.t[k];
    const double dphi = path.phi[k + 1] - path.phi[k];
    const double s0 = std::sin(path.theta[k]);
    const double s1 = std::sin(path.theta[k + 1]);
    const double c0 = std::cos(path.theta[k]);
    const double c1 = std::cos(path.theta[k + 1]);
    dyn += 0.5 * (path.omega_rms[k] + path.omega_rms[k + 1]) * dt;
    g0 += 0.5 * (s0 * s0 + s1 * s1) * dphi;
    gpm += 0.5 * (c0 * c0 + c1 * c1) * dphi;
  }
  out.phi_d = {0.0, -0.5 * dyn, 0.5 * dyn};
  out.phi_g = {g0, 0.5 * gpm, 0.5 * gpm};
  return out;
}

StirapPhases phases(const PulseSchedule& schedule, double delta, PhaseMode mode) {
  std::size_t n = kMinSamples;
  StirapPhases prev = phases(sample_path(schedule, delta, n), mode);
  while (refine(n) <= kMaxSamples) {
    n = refine(n);
    StirapPhases next = phases(sample_path(schedule, delta, n), mode);
    const bool converged = max_change(prev, next) < 1e-6;
    prev = next;
    if (converged) break;
  }
  return prev;
}

StirapPropagator stirap_propagator(const SampledPath& path, PhaseMode mode) {
  if (path.size() == 0 || std::abs(path.theta.front()) > 1e-9) {
    throw Error(ErrorKind::Precondition, "adiabatic propagator needs theta(0) = 0");
  }
  StirapPropagator out;
  out.phases = phases(path, mode);
  // The geometric contribution enters with the sign of i<n|dn>.
  Eigen::Matrix3cd d = Eigen::Matrix3cd::Zero();
  for (int k = 0; k < 3; ++k) {
    d(k, k) = std::exp(Complex(0.0, out.phases.phi_d[k] - out.phases.phi_g[k]));
  }
  out.eigenbasis = stirap_rotation(path.theta.back(), path.phi.back()) * d;
  const Eigen::Matrix3cd w = stirap_reference_basis();
  out.lab = w * out.eigenbasis * w.adjoint();
  return out;
}

StirapPropagator stirap_propagator(const PulseSchedule& schedule, double delta, PhaseMode mode) {
  const StirapPhases ph = phases(schedule, delta, mode);
  return stirap_propagator(sample_path(schedule, delta, ph.samples), mode);
}

double linear_ramp_integral(double slope, double T) {
  if (slope == 0.0) return 0.0;
  return T - (2.0 / slope) * std::atan(0.5 * slope * T);
}

double sine_ramp_integral(double x_max, double frequency) {
  return (kPi / frequency) * (1.0 - 1.0 / std::sqrt(1.0 + x_max * x_max));
}

RampPhase ramp_phase(const PulseSchedule& ramp, double delta) {
  if (ramp.shape() != PulseShape::LinearRampRatio && ramp.shape() != PulseShape::SineRampRatio) {
    throw Error(ErrorKind::Precondition, "ramp_phase needs a linear or sine ratio ramp");
  }
  // Split at the kinks so each piece is smooth.
  std::vector<double> cuts{0.0};
  for (double t : ramp.breakpoints()) cuts.push_back(t);
  cuts.push_back(ramp.total_time());
  const std::size_t per_piece = kMinSamples / (cuts.size() - 1);
  double total = 0.0;
  std::size_t samples = 0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const auto [value, intervals] = romberg(ramp, cuts[k], cuts[k + 1], per_piece);
    total += value;
    samples += intervals;
  }
  const double prev = total;
  const std::size_t n = samples + 1;
  RampPhase out;
  out.integral = prev;
  out.ratio = -prev;
  out.phi_g = -delta * prev;
  out.samples = n;
  return out;
}

}  // namespace cavgate
