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

#include "cavgate/hamiltonian.hpp"
#include "cavgate/hilbert.hpp"

#include <string>
#include <vector>

namespace cavgate {

enum class PulseShape { Constant, StirapPair, LinearRampRatio, SineRampRatio };

const char* to_string(PulseShape shape) noexcept;

/// Closed-form laser schedule on [0, T]. All amplitudes are real.
///
///   Constant         (Omega1, Omega_s) for the whole duration T.
///   StirapPair       Omega_s = Omega sin(w t) on [0, 2T/3], 0 after;
///                    Omega1  = 0 on [0, T/3], Omega sin(w (t - T/3)) after;
///                    T = 3 pi / (2 w).
///   LinearRampRatio  Omega_s constant, Omega1 = x(t) Omega_s with
///                    x = a t on [0, T/2] and a (T - t) after.
///   SineRampRatio    Omega_s constant, x = x_max sin(b t), T = pi / b.
///
/// A reversed schedule evaluates the same formulas at T - t.
class PulseSchedule {
 public:
  static PulseSchedule constant(double omega1, double omega_sigma, double total_time);
  static PulseSchedule stirap_pair(double peak, double frequency);
  static PulseSchedule linear_ramp(double omega_sigma, double slope, double total_time);
  static PulseSchedule sine_ramp(double omega_sigma, double x_max, double frequency);

  PulseShape shape() const noexcept { return shape_; }
  double total_time() const noexcept { return total_time_; }
  bool is_reversed() const noexcept { return reversed_; }
  PulseSchedule reversed() const;

  /// Throws ErrorKind::Range outside [0, T].
  LaserAmplitudes evaluate(double t) const;

  /// Omega1/Omega_s for the ramp shapes.
  double ratio(double t) const;

  /// Interior times where the formulas switch branch.
  std::vector<double> breakpoints() const;

  // Shape parameters; meaning depends on shape().
  double omega1() const noexcept { return a_; }        // Constant
  double omega_sigma() const noexcept { return b_; }   // Constant and ramps
  double peak() const noexcept { return a_; }          // StirapPair
  double frequency() const noexcept { return c_; }     // StirapPair (w), SineRamp (b)
  double slope() const noexcept { return a_; }         // LinearRamp (a)
  double x_max() const noexcept { return a_; }         // SineRamp

  std::string describe() const;

 private:
  PulseSchedule(PulseShape shape, double a, double b, double c, double total_time);
  LaserAmplitudes evaluate_forward(double t) const;

  PulseShape shape_;
  double a_;
  double b_;
  double c_;
  double total_time_;
  bool reversed_ = false;
};

struct ControlAngles {
  double theta = 0.0;  // tan(theta) = Omega1 / Omega_s
  double phi = 0.0;    // -delta t
};

/// Mixing and loop angles at time t.
///
/// Where both amplitudes vanish, theta is taken from the one-sided limit at
/// the protocol endpoints (right limit at 0, left limit at T), and 0 if the
/// schedule is dark there too. In the interior this throws
/// ErrorKind::UndefinedAngle.
ControlAngles angles(const PulseSchedule& schedule, double t, double delta);

/// max over t of max(|theta'|, |phi'|) / sqrt(Omega_s^2 + Omega1^2), taken over
/// samples where the total Rabi frequency is at least 1% of its peak.
double adiabaticity_ratio(const PulseSchedule& schedule, double delta, int samples = 20001);

/// Ideal instantaneous 2pi pulse on the sigma transitions: |s> -> -|s> on each atom.
OperatorMatrix two_pi_flip(const HilbertSpace& space);

/// Same flip restricted to {|11>, |A>, |alpha>}: diag(1, -1, 1).
Eigen::MatrixXcd two_pi_flip_effective();

}  // namespace cavgate
