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
#include "cavgate/propagate.hpp"
#include "cavgate/pulses.hpp"

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cavgate {

enum class GateKind { ERamanCP, OneLaserCP, EStirapDynamicalCP, EStirapGeometricCP };
enum class GateModel { Full, Effective };

const char* to_string(GateKind kind) noexcept;
const char* to_string(GateModel model) noexcept;
GateKind parse_gate_kind(const std::string& text);
GateModel parse_gate_model(const std::string& text);

/// Multiplies Omega1(t); used to model amplitude ripple on the driving laser.
using AmplitudeModulation = std::function<double(double)>;

struct GateProtocol {
  GateKind kind;
  SystemParams params;
  PulseSchedule schedule;  // forward leg for the STIRAP kinds
  double target_phase;
  AmplitudeModulation omega1_modulation;
};

/// delta from the minus-sign condition, T = 2 pi / K.
GateProtocol make_eraman_cp(double omega1, double omega_sigma, double Delta, double kappa, double gamma);
/// Omega_sigma = 0, delta = 0, T = pi / |Delta11|.
GateProtocol make_one_laser_cp(double omega1, double Delta, double kappa, double gamma);
/// Counterintuitive pair |11> -> |A>, 2 pi flip on sigma, then the pair reversed.
GateProtocol make_stirap_dynamical_cp(double peak, double frequency, double kappa, double gamma);
/// Linear ratio ramp at Delta = 0; the target is the loop phase delta * int x^2/(1+x^2) dt.
GateProtocol make_stirap_geometric_cp(double omega_sigma, double slope, double T, double delta,
                                      double kappa, double gamma);

double protocol_duration(const GateProtocol& protocol);

struct BranchResult {
  std::string label;  // "00", "01", "10", "11"
  Complex amplitude{};  // <ij|psi_ij(T)>, unnormalized
  double magnitude = 0.0;
  double phase = 0.0;
  double p0 = 1.0;
  double leakage = 0.0;  // population outside the qubit subspace, renormalized
};

struct GateReport {
  GateKind kind = GateKind::ERamanCP;
  GateModel model = GateModel::Full;
  double duration = 0.0;
  double delta = 0.0;
  double target_phase = 0.0;
  double predicted_phase = 0.0;  // closed-form expectation for this protocol
  std::array<BranchResult, 4> branches;
  double extracted_phi = 0.0;
  double fidelity_extracted = 0.0;
  double fidelity_target = 0.0;
  double fidelity_extracted_renormalized = 0.0;
  double fidelity_target_renormalized = 0.0;
  std::optional<double> one_laser_integral;          // int Delta11 dt
  std::optional<double> one_laser_integral_plus_pi;  // pi + int Delta11 dt
  std::optional<double> adiabaticity;
  std::vector<std::string> warnings;
};

/// Runs the four computational branches and fills a report.
/// Throws ErrorKind::Diverged or ErrorKind::UndefinedPhase.
GateReport run_gate(const GateProtocol& protocol, GateModel model, const HilbertSpace& space,
                    const IntegratorConfig& cfg = {});

/// arg a11 - arg a10 - arg a01 + arg a00, wrapped to (-pi, pi].
/// Branch order 00, 01, 10, 11.
double extract_phase(const std::array<Complex, 4>& amplitudes);

/// |Tr(U_ideal^dagger M)|^2 / 16 with M = diag(amplitudes).
double gate_fidelity(const std::array<Complex, 4>& amplitudes, double phi_ref);

void write_report(std::ostream& out, const GateReport& report);
void write_report_csv(std::ostream& out, const GateReport& report);

}  // namespace cavgate
