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

#include "cavgate/errors.hpp"
#include "cavgate/propagate.hpp"
#include "support/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace cavgate;

namespace {

const SystemParams kLossy{1.0, 0.1, 0.1, 1.357, 0.0};

double max_diff(const QuantumState& a, const Eigen::VectorXcd& b) { return (a.amplitudes() - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("constant drive agrees with the matrix exponential") {
  const HilbertSpace space(2);
  const LaserAmplitudes l{0.05, 0.03};
  const QuantumState psi0 = QuantumState::basis(space, AtomLevel::L1, AtomLevel::L1);
  const double T = 40.0;
  const Eigen::VectorXcd ref = oracle::evolution(
      oracle::hamiltonian(1, 0.1, 0.1, 1.357, 0.0, l.omega1, l.omega_sigma, 2), T) * psi0.amplitudes();
  IntegratorConfig cfg;
  cfg.step = 0.005;
  const PropagationResult r = propagate(DrivenSystem::constant(kLossy, l, space), psi0, T, cfg);
  CHECK(max_diff(r.final_state, ref) < 1e-9);
  CHECK(r.p0 == doctest::Approx(ref.squaredNorm()).epsilon(1e-9));
  CHECK(r.steps == 8000);

  cfg.use_constant_power = false;
  const PropagationResult stepped = propagate(DrivenSystem::constant(kLossy, l, space), psi0, T, cfg);
  CHECK(max_diff(stepped.final_state, r.final_state.amplitudes()) < 1e-11);
}

TEST_CASE("the scheduled path follows piecewise breakpoints") {
  const HilbertSpace space(1);
  const PulseSchedule s = PulseSchedule::stirap_pair(0.2, 0.05);
  IntegratorConfig cfg;
  cfg.step = 0.01;
  const QuantumState psi0 = QuantumState::basis(space, AtomLevel::L1, AtomLevel::L1);
  const PropagationResult r = propagate(DrivenSystem::scheduled(kLossy, s, space), psi0, s.total_time(), cfg);
  // Piecewise-constant reference with a fine midpoint grid.
  const int n = 20000;
  const double h = s.total_time() / n;
  Eigen::VectorXcd ref = psi0.amplitudes();
  for (int k = 0; k < n; ++k) {
    const LaserAmplitudes l = s.evaluate((k + 0.5) * h);
    ref = oracle::evolution(oracle::hamiltonian(1, 0.1, 0.1, 1.357, 0.0, l.omega1, l.omega_sigma, 1), h) * ref;
  }
  CHECK(max_diff(r.final_state, ref) < 1e-6);
}

TEST_CASE("RK4 converges with order four") {
  const HilbertSpace space(1);
  const PulseSchedule s = PulseSchedule::stirap_pair(0.3, 0.1);
  const DrivenSystem sys = DrivenSystem::scheduled(SystemParams{1.0, 0.1, 0.1, 0.5, 0.0}, s, space);
  const QuantumState psi0 = QuantumState::basis(space, AtomLevel::L1, AtomLevel::L1);
  auto run = [&](double h) {
    IntegratorConfig cfg;
    cfg.step = h;
    return propagate(sys, psi0, s.total_time(), cfg).final_state.amplitudes();
  };
  const Eigen::VectorXcd ref = run(0.005);
  const double e1 = (run(0.4) - ref).norm();
  const double e2 = (run(0.2) - ref).norm();
  const double e3 = (run(0.1) - ref).norm();
  const double slope1 = std::log2(e1 / e2);
  const double slope2 = std::log2(e2 / e3);
  CHECK(slope1 == doctest::Approx(4.0).epsilon(0.075));
  CHECK(slope2 == doctest::Approx(4.0).epsilon(0.075));
}

TEST_CASE("norm never increases along a recorded trajectory") {
  const HilbertSpace space(2);
  IntegratorConfig cfg;
  cfg.step = 0.05;
  cfg.record_stride = 10;
  cfg.recorded = {parse_basis_label("1,1,0"), parse_basis_label("s,1,0")};
  const PulseSchedule s = PulseSchedule::stirap_pair(0.1, 0.01);
  const PropagationResult r = propagate(DrivenSystem::scheduled(kLossy, s, space),
                                        QuantumState::basis(space, AtomLevel::L1, AtomLevel::L1),
                                        s.total_time(), cfg);
  REQUIRE(r.trajectory.size() > 10);
  CHECK(r.trajectory.front().t == 0.0);
  CHECK(r.trajectory.back().t == doctest::Approx(s.total_time()));
  for (std::size_t k = 1; k < r.trajectory.size(); ++k) {
    CHECK(r.trajectory[k].norm2 <= r.trajectory[k - 1].norm2 + 1e-15);
    CHECK(r.trajectory[k].amplitudes.size() == 2);
  }
  std::ostringstream out;
  write_trajectory_csv(out, r.trajectory, {"1,1,0", "s,1,0"});
  CHECK(out.str().rfind("t,norm2,\"1,1,0_re\",\"1,1,0_im\",\"s,1,0_re\",\"s,1,0_im\"\n", 0) == 0);
}

TEST_CASE("constant-power recording hits the stride and the end point") {
  const HilbertSpace space(1);
  IntegratorConfig cfg;
  cfg.step = 0.1;
  cfg.record_stride = 30;
  const PropagationResult r = propagate(DrivenSystem::constant(kLossy, {0.05, 0.05}, space),
                                        QuantumState::basis(space, AtomLevel::L1, AtomLevel::L1), 10.0, cfg);
  REQUIRE(r.trajectory.size() == 5);
  CHECK(r.trajectory[1].t == doctest::Approx(3.0));
  CHECK(r.trajectory[4].t == doctest::Approx(10.0));
}

TEST_CASE("level 0 is exactly stationary") {
  const HilbertSpace space(2);
  const QuantumState psi0 = QuantumState::basis(space, AtomLevel::L0, AtomLevel::L0);
  const PropagationResult r = propagate(DrivenSystem::constant(kLossy, {0.3, 0.2}, space), psi0, 1e4);
  CHECK(r.final_state.amplitude(AtomLevel::L0, AtomLevel::L0) == Complex(1.0));
  CHECK(r.p0 == 1.0);
}

TEST_CASE("decay window is free evolution under the conditional Hamiltonian") {
  const HilbertSpace space(2);
  const SystemParams p{1.0, 0.1, 0.1, 0.0, 0.0};
  const QuantumState psi0 = QuantumState::basis(space, AtomLevel::L2, AtomLevel::L2);
  const Eigen::MatrixXcd h = oracle::hamiltonian(1, 0.1, 0.1, 0.0, 0.0, 0.0, 0.0, 2);
  for (double t : {1.0, 5.0, 20.0}) {
    IntegratorConfig cfg;
    cfg.step = 0.002;
    const PropagationResult r = decay_window(psi0, p, t, cfg);
    const Eigen::VectorXcd ref = oracle::evolution(h, t) * psi0.amplitudes();
    CHECK(max_diff(r.final_state, ref) < 1e-9);
    CHECK(r.p0 == doctest::Approx(ref.squaredNorm()).epsilon(1e-9));
    CHECK(r.p0 < 1.0);
  }
  // Level 0 with an empty cavity has nothing to decay into.
  const QuantumState ground = QuantumState::basis(space, AtomLevel::L0, AtomLevel::Sigma);
  CHECK(decay_window(ground, p, 50.0).p0 == 1.0);
  CHECK(default_decay_window(p) == doctest::Approx(50.0));
  CHECK(default_decay_window(SystemParams{}) == 0.0);
}

TEST_CASE("divergence is reported with the failing step") {
  const HilbertSpace space(2);
  IntegratorConfig cfg;
  cfg.step = 1000.0;
  cfg.use_constant_power = false;
  try {
    (void)propagate(DrivenSystem::constant(kLossy, {0.1, 0.1}, space),
                    QuantumState::basis(space, AtomLevel::L1, AtomLevel::L1), 1e6, cfg);
    FAIL("expected divergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Diverged);
    CHECK(std::string(e.what()).find("step") != std::string::npos);
  }
}

TEST_CASE("default step policy") {
  IntegratorConfig cfg;
  CHECK(cfg.step_for(1e3) == doctest::Approx(1e-3));
  CHECK(cfg.step_for(1e5) == doctest::Approx(0.02));
  cfg.step = 0.3;
  CHECK(cfg.step_for(1e5) == 0.3);
}

TEST_CASE("effective propagation matches the exponential") {
  const Eigen::MatrixXcd h = build_effective(SystemParams{1, 0, 0, 0.3, 0.01}, {0.05, 0.04}).matrix;
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(3);
  psi0[0] = 1.0;
  IntegratorConfig cfg;
  cfg.step = 0.02;
  const Eigen::VectorXcd ref = oracle::evolution(h, 500.0) * psi0;
  CHECK((propagate_effective(h, psi0, 500.0, cfg).final_state - ref).norm() < 1e-9);
  const EffectiveResult stepped = propagate_effective([&h](double) { return h; }, psi0, 0.0, 500.0, cfg);
  CHECK((stepped.final_state - ref).norm() < 1e-9);
  CHECK(stepped.steps == 25000);
}

TEST_CASE("mismatched spaces and reversed intervals are rejected") {
  const DrivenSystem sys = DrivenSystem::free(kLossy, HilbertSpace(2));
  CHECK_THROWS_AS(propagate(sys, QuantumState::basis(HilbertSpace(1), AtomLevel::L1, AtomLevel::L1), 1.0), Error);
  CHECK_THROWS_AS(propagate(sys, QuantumState::basis(HilbertSpace(2), AtomLevel::L1, AtomLevel::L1), 2.0, 1.0),
                  Error);
}
