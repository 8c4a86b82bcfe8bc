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

#include "cavgate/pulses.hpp"

#include "cavgate/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cavgate {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorKind::Config, std::string(what) + " must be positive and finite");
  }
}

}  // namespace

const char* to_string(PulseShape shape) noexcept {
  switch (shape) {
    case PulseShape::Constant: return "constant";
    case PulseShape::StirapPair: return "stirap";
    case PulseShape::LinearRampRatio: return "linear_ramp";
    case PulseShape::SineRampRatio: return "sine_ramp";
  }
  return "unknown";
}

PulseSchedule::PulseSchedule(PulseShape shape, double a, double b, double c, double total_time)
    : shape_(shape), a_(a), b_(b), c_(c), total_time_(total_time) {}

PulseSchedule PulseSchedule::constant(double omega1, double omega_sigma, double total_time) {
  if (!(total_time >= 0.0)) throw Error(ErrorKind::Config, "pulse duration must be non-negative");
  return PulseSchedule(PulseShape::Constant, omega1, omega_sigma, 0.0, total_time);
}

PulseSchedule PulseSchedule::stirap_pair(double peak, double frequency) {
  require_positive(frequency, "STIRAP frequency omega");
  return PulseSchedule(PulseShape::StirapPair, peak, 0.0, frequency,
                       3.0 * std::numbers::pi / (2.0 * frequency));
}

PulseSchedule PulseSchedule::linear_ramp(double omega_sigma, double slope, double total_time) {
  require_positive(total_time, "ramp duration T");
  return PulseSchedule(PulseShape::LinearRampRatio, slope, omega_sigma, 0.0, total_time);
}

PulseSchedule PulseSchedule::sine_ramp(double omega_sigma, double x_max, double frequency) {
  require_positive(frequency, "sine ramp frequency beta");
  return PulseSchedule(PulseShape::SineRampRatio, x_max, omega_sigma, frequency,
                       std::numbers::pi / frequency);
}

PulseSchedule PulseSchedule::reversed() const {
  PulseSchedule r = *this;
  r.reversed_ = !reversed_;
  return r;
}

double PulseSchedule::ratio(double t) const {
  switch (shape_) {
    case PulseShape::LinearRampRatio:
      return t <= 0.5 * total_time_ ? a_ * t : a_ * (total_time_ - t);
    case PulseShape::SineRampRatio:
      return a_ * std::sin(c_ * t);
    default:
      throw Error(ErrorKind::Precondition, "ratio() is defined for ramp schedules only");
  }
}

LaserAmplitudes PulseSchedule::evaluate_forward(double t) const {
  switch (shape_) {
    case PulseShape::Constant:
      return {a_, b_};
    case PulseShape::StirapPair: {
      const double third = total_time_ / 3.0;
      const double os = t <= 2.0 * third ? a_ * std::sin(c_ * t) : 0.0;
      const double o1 = t <= third ? 0.0 : a_ * std::sin(c_ * (t - third));
      return {o1, os};
    }
    case PulseShape::LinearRampRatio:
    case PulseShape::SineRampRatio:
      return {ratio(t) * b_, b_};
  }
  return {};
}

LaserAmplitudes PulseSchedule::evaluate(double t) const {
  if (!(t >= 0.0 && t <= total_time_)) {
    std::ostringstream msg;
    msg << "pulse time " << t << " outside [0, " << total_time_ << "]";
    throw Error(ErrorKind::Range, msg.str());
  }
  return evaluate_forward(reversed_ ? total_time_ - t : t);
}

std::vector<double> PulseSchedule::breakpoints() const {
  std::vector<double> out;
  switch (shape_) {
    case PulseShape::StirapPair:
      out = {total_time_ / 3.0, 2.0 * total_time_ / 3.0};
      break;
    case PulseShape::LinearRampRatio:
      out = {0.5 * total_time_};
      break;
    default:
      break;
  }
  if (reversed_) {
    for (double& b : out) b = total_time_ - b;
    std::sort(out.begin(), out.end());
  }
  return out;
}

std::string PulseSchedule::describe() const {
  std::ostringstream s;
  s.precision(10);
  s << to_string(shape_);
  switch (shape_) {
    case PulseShape::Constant: s << "(Omega1=" << a_ << ", Omega_sigma=" << b_; break;
    case PulseShape::StirapPair: s << "(Omega=" << a_ << ", omega=" << c_; break;
    case PulseShape::LinearRampRatio: s << "(Omega_sigma=" << b_ << ", alpha=" << a_; break;
    case PulseShape::SineRampRatio:
      s << "(Omega_sigma=" << b_ << ", x_max=" << a_ << ", beta=" << c_;
      break;
  }
  s << ", T=" << total_time_ << (reversed_ ? ", reversed)" : ")");
  return s.str();
}

ControlAngles angles(const PulseSchedule& schedule, double t, double delta) {
  const double T = schedule.total_time();
  LaserAmplitudes l = schedule.evaluate(t);
  if (l.omega1 == Complex{} && l.omega_sigma == Complex{}) {
    const bool at_start = t == 0.0;
    const bool at_end = t == T;
    if (!at_start && !at_end) {
      std::ostringstream msg;
      msg << "mixing angle undefined at t=" << t << ": both amplitudes vanish";
      throw Error(ErrorKind::UndefinedAngle, msg.str());
    }
    const double eps = 1e-9 * std::max(T, 1.0);
    if (T > 0.0) l = schedule.evaluate(at_start ? std::min(eps, T) : std::max(T - eps, 0.0));
    if (l.omega1 == Complex{} && l.omega_sigma == Complex{}) return {0.0, -delta * t};
  }
  return {std::atan2(l.omega1.real(), l.omega_sigma.real()), -delta * t};
}

double adiabaticity_ratio(const PulseSchedule& schedule, double delta, int samples) {
  const double T = schedule.total_time();
  if (samples < 3 || !(T > 0.0)) return 0.0;
  std::vector<double> rms(samples), theta(samples);
  const double dt = T / (samples - 1);
  double peak = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = k * dt;
    const LaserAmplitudes l = schedule.evaluate(t);
    rms[k] = std::hypot(std::abs(l.omega1), std::abs(l.omega_sigma));
    peak = std::max(peak, rms[k]);
    theta[k] = rms[k] > 0.0 ? std::atan2(l.omega1.real(), l.omega_sigma.real()) : 0.0;
  }
  double worst = 0.0;
  for (int k = 1; k + 1 < samples; ++k) {
    if (rms[k] < 0.01 * peak || rms[k - 1] == 0.0 || rms[k + 1] == 0.0) continue;
    const double theta_dot = std::abs(theta[k + 1] - theta[k - 1]) / (2.0 * dt);
    worst = std::max(worst, std::max(theta_dot, std::abs(delta)) / rms[k]);
  }
  return worst;
}

OperatorMatrix two_pi_flip(const HilbertSpace& space) {
  const int dim = space.dim();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const BasisLabel b = space.label(i);
    const int count = (b.l1 == AtomLevel::Sigma) + (b.l2 == AtomLevel::Sigma);
    m(i, i) = count % 2 == 0 ? 1.0 : -1.0;
  }
  return OperatorMatrix{std::move(m), true};
}

Eigen::MatrixXcd two_pi_flip_effective() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(3, 3);
  m(kEffA, kEffA) = -1.0;
  return m;
}

}  // namespace cavgate
