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
#include "cavgate/pulses.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace cavgate {

/// Wraps to (-pi, pi].
double wrap_phase(double phi);

/// Closed-form propagator of the reduced two-level model over {|11>, |A>}.
/// K = 0 returns the diagonal phase evolution.
Eigen::Matrix2cd raman_propagator(const RamanConstants& constants, double T);

/// Eigenvalues (E0, E+, E-) and eigenvectors (columns, basis |11>, |A>, |alpha>)
/// of the three-level dark/bright system.
struct StirapEigensystem {
  Eigen::Vector3d values;
  Eigen::Matrix3cd vectors;
};

/// Throws ErrorKind::DegenerateInput when both amplitudes vanish.
StirapEigensystem stirap_eigensystem(Complex omega1, Complex omega_sigma, double Delta, double delta,
                                     double t);

/// Maps the eigenbasis at (0, 0) onto the eigenbasis at (theta, phi); unitary.
Eigen::Matrix3cd stirap_rotation(double theta, double phi);

/// Basis change from (E0, E+, E-) at theta = phi = 0 to (|11>, |A>, |alpha>).
Eigen::Matrix3cd stirap_reference_basis();

struct SampledPath {
  std::vector<double> t;
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<double> omega_rms;

  std::size_t size() const noexcept { return t.size(); }
};

SampledPath sample_path(const PulseSchedule& schedule, double delta, std::size_t samples);

enum class PhaseMode {
  ClosedLoop,    // requires the path to return to its starting point
  LineIntegral,  // evaluates the same integrals along an open path
};

struct StirapPhases {
  std::array<double, 3> phi_d{};  // (0, +, -)
  std::array<double, 3> phi_g{};
  std::size_t samples = 0;
};

/// Trapezoid quadrature on a fixed sampling. Throws ErrorKind::OpenPath for
/// ClosedLoop on a path that does not close.
StirapPhases phases(const SampledPath& path, PhaseMode mode = PhaseMode::ClosedLoop);

/// Doubles the sampling from 10^4 points until every phase moves by < 1e-6 rad.
StirapPhases phases(const PulseSchedule& schedule, double delta, PhaseMode mode);

/// Adiabatic propagator (at Delta = 0) in the basis |11>, |A>, |alpha>.
/// Throws ErrorKind::Precondition unless theta(0) = 0.
struct StirapPropagator {
  Eigen::Matrix3cd eigenbasis;  // R(theta, phi) diag(e^{i phi_k})
  Eigen::Matrix3cd lab;
  StirapPhases phases;
};

StirapPropagator stirap_propagator(const SampledPath& path, PhaseMode mode = PhaseMode::LineIntegral);
StirapPropagator stirap_propagator(const PulseSchedule& schedule, double delta,
                                   PhaseMode mode = PhaseMode::LineIntegral);

/// Geometric phase of a ratio ramp with phi(t) = -delta t.
struct RampPhase {
  double phi_g = 0.0;
  double ratio = 0.0;     // phi_g / delta, independent of delta
  double integral = 0.0;  // int x^2 / (1 + x^2) dt
  std::size_t samples = 0;
};

RampPhase ramp_phase(const PulseSchedule& ramp, double delta);

/// int_0^T x^2/(1+x^2) dt for the linear ramp, in closed form.
double linear_ramp_integral(double slope, double T);
/// Same for the sine ramp over one period.
double sine_ramp_integral(double x_max, double frequency);

}  // namespace cavgate
