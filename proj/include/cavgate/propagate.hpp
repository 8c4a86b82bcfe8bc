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
#include "cavgate/pulses.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cavgate {

/// Fixed-step classical RK4.
///
/// A non-positive step selects the default min(0.02, T / 1e6). Each interval
/// between schedule breakpoints gets an integer number of equal steps no
/// longer than the requested one.
struct IntegratorConfig {
  double step = 0.0;
  int record_stride = 0;  // 0 disables trajectory recording
  std::vector<BasisLabel> recorded;
  /// For time-independent Hamiltonians, apply the one-step RK4 matrix by
  /// binary powering instead of stepping. Same propagator, fewer flops.
  bool use_constant_power = true;

  double step_for(double duration) const;
};

struct TrajectorySample {
  double t = 0.0;
  double norm2 = 0.0;
  std::vector<Complex> amplitudes;
};

struct PropagationResult {
  QuantumState final_state;
  double p0 = 1.0;
  std::vector<TrajectorySample> trajectory;
  std::int64_t steps = 0;

  QuantumState normalized_state() const { return final_state.normalized(); }
};

using LaserProgram = std::function<LaserAmplitudes(double)>;

/// Conditional Hamiltonian source: cached static terms plus a laser program.
class DrivenSystem {
 public:
  static DrivenSystem constant(const SystemParams& params, const LaserAmplitudes& lasers,
                               const HilbertSpace& space);
  /// Uses schedule time t - offset; breakpoints are shifted accordingly.
  static DrivenSystem scheduled(const SystemParams& params, const PulseSchedule& schedule,
                                const HilbertSpace& space, double offset = 0.0);
  static DrivenSystem programmed(const SystemParams& params, LaserProgram program,
                                 const HilbertSpace& space, std::vector<double> breakpoints = {});
  /// All lasers off.
  static DrivenSystem free(const SystemParams& params, const HilbertSpace& space);

  const SystemParams& params() const noexcept { return params_; }
  const HilbertSpace& space() const noexcept { return terms_->space; }
  const HamiltonianTerms& terms() const noexcept { return *terms_; }
  bool time_independent() const noexcept { return constant_.has_value(); }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

  LaserAmplitudes lasers_at(double t) const;
  OperatorMatrix hamiltonian_at(double t) const;

 private:
  DrivenSystem(const SystemParams& params, const HilbertSpace& space);

  SystemParams params_;
  std::shared_ptr<const HamiltonianTerms> terms_;
  std::optional<LaserAmplitudes> constant_;
  LaserProgram program_;
  std::vector<double> breakpoints_;
};

/// Solves d psi/dt = -i H_cond(t) psi from t_begin to t_end.
/// Throws ErrorKind::Diverged when an amplitude stops being finite.
PropagationResult propagate(const DrivenSystem& system, const QuantumState& psi0, double t_begin,
                            double t_end, const IntegratorConfig& cfg = {});
PropagationResult propagate(const DrivenSystem& system, const QuantumState& psi0, double duration,
                            const IntegratorConfig& cfg = {});

/// Default decay window length 5 / min(kappa, Gamma) (0 if there is no decay).
double default_decay_window(const SystemParams& params);

/// Free evolution under the conditional Hamiltonian with the lasers off.
PropagationResult decay_window(const QuantumState& psi, const SystemParams& params,
                               double duration, const IntegratorConfig& cfg = {});

/// Small dense models (the 2x2 and 3x3 effective Hamiltonians).
using EffectiveProgram = std::function<Eigen::MatrixXcd(double)>;

struct EffectiveResult {
  Eigen::VectorXcd final_state;
  double p0 = 1.0;
  std::vector<TrajectorySample> trajectory;  // every component is recorded
  std::int64_t steps = 0;
};

EffectiveResult propagate_effective(const Eigen::MatrixXcd& hamiltonian, const Eigen::VectorXcd& psi0,
                                    double duration, const IntegratorConfig& cfg = {});
EffectiveResult propagate_effective(const EffectiveProgram& hamiltonian, const Eigen::VectorXcd& psi0,
                                    double t_begin, double t_end, const IntegratorConfig& cfg = {},
                                    const std::vector<double>& breakpoints = {});

/// Three-level effective model driven by a schedule.
EffectiveProgram effective_program(const SystemParams& params, const PulseSchedule& schedule);

/// Header "t,norm2,<label>_re,<label>_im,..." then one row per sample.
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectorySample>& trajectory,
                          const std::vector<std::string>& labels);

}  // namespace cavgate
