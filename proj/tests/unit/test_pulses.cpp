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
#include "cavgate/pulses.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cavgate;
constexpr double kPi = std::numbers::pi;

TEST_CASE("counterintuitive pair: sigma first, then Omega1") {
  const PulseSchedule s = PulseSchedule::stirap_pair(0.02, 4e-5);
  const double T = s.total_time();
  CHECK(T == doctest::Approx(3 * kPi / (2 * 4e-5)));
  CHECK(s.evaluate(0.0).omega1 == Complex{});
  CHECK(s.evaluate(0.1 * T).omega_sigma.real() > 0.0);
  CHECK(s.evaluate(0.1 * T).omega1 == Complex{});
  CHECK(s.evaluate(0.9 * T).omega_sigma == Complex{});
  CHECK(s.evaluate(T / 2).omega1.real() == doctest::Approx(s.evaluate(T / 2).omega_sigma.real()));
  CHECK(s.evaluate(T / 3).omega_sigma.real() == doctest::Approx(0.02));
  CHECK(s.breakpoints().size() == 2);
  CHECK_THROWS_AS(s.evaluate(T * 1.01), Error);
  CHECK_THROWS_AS(s.evaluate(-1.0), Error);
}

TEST_CASE("mixing angle runs from 0 to pi/2 across the pair") {
  const PulseSchedule s = PulseSchedule::stirap_pair(0.02, 4e-5);
  const double T = s.total_time();
  CHECK(angles(s, 0.0, 0.0).theta == 0.0);
  CHECK(angles(s, T / 2, 0.0).theta == doctest::Approx(kPi / 4));
  CHECK(angles(s, T, 0.0).theta == doctest::Approx(kPi / 2));
  CHECK(angles(s, T / 2, 1e-3).phi == doctest::Approx(-1e-3 * T / 2));
  double last = -1.0;
  for (int k = 0; k <= 100; ++k) {
    const double th = angles(s, T * k / 100.0, 0.0).theta;
    CHECK(th >= last);
    last = th;
  }
}

TEST_CASE("reversed schedules mirror time") {
  const PulseSchedule s = PulseSchedule::stirap_pair(0.02, 1e-4);
  const PulseSchedule r = s.reversed();
  const double T = s.total_time();
  for (double t : {0.0, 0.2 * T, 0.5 * T, 0.77 * T, T}) {
    CHECK(r.evaluate(t).omega1 == s.evaluate(T - t).omega1);
    CHECK(r.evaluate(t).omega_sigma == s.evaluate(T - t).omega_sigma);
  }
  CHECK(angles(r, T, 0.0).theta == 0.0);
  CHECK(r.reversed().evaluate(0.3 * T).omega1 == s.evaluate(0.3 * T).omega1);
}

TEST_CASE("ratio ramps") {
  const PulseSchedule lin = PulseSchedule::linear_ramp(0.02, 4e-5, 1e5);
  CHECK(lin.ratio(0.0) == 0.0);
  CHECK(lin.ratio(5e4) == doctest::Approx(2.0));
  CHECK(lin.ratio(1e5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(lin.evaluate(2.5e4).omega1.real() == doctest::Approx(0.02));
  CHECK(lin.evaluate(2.5e4).omega_sigma.real() == doctest::Approx(0.02));
  CHECK(lin.breakpoints().size() == 1);

  const PulseSchedule sine = PulseSchedule::sine_ramp(0.02, 1.0, 1e-4);
  CHECK(sine.total_time() == doctest::Approx(kPi / 1e-4));
  CHECK(sine.ratio(sine.total_time() / 2) == doctest::Approx(1.0));
  CHECK(angles(sine, sine.total_time() / 2, 0.0).theta == doctest::Approx(kPi / 4));

  CHECK_THROWS_AS(PulseSchedule::stirap_pair(0.02, 0.0), Error);
  CHECK_THROWS_AS(PulseSchedule::constant(0.1, 0.1, 1.0).ratio(0.5), Error);
}

TEST_CASE("adiabaticity of the default ramps") {
  CHECK(adiabaticity_ratio(PulseSchedule::linear_ramp(0.02, 4e-5, 1e5), 1e-4) < 1e-2);
  CHECK(adiabaticity_ratio(PulseSchedule::stirap_pair(0.02, 4e-5), 0.0) < 1e-2);
  CHECK(adiabaticity_ratio(PulseSchedule::stirap_pair(0.02, 4e-2), 0.0) > 1e-2);
}

TEST_CASE("two-pi flip changes the sign of each sigma population") {
  const HilbertSpace space(1);
  const OperatorMatrix f = two_pi_flip(space);
  CHECK(f.matrix(space.index(AtomLevel::L1, AtomLevel::L1, 0), space.index(AtomLevel::L1, AtomLevel::L1, 0)) ==
        Complex(1.0));
  CHECK(f.matrix(space.index(AtomLevel::Sigma, AtomLevel::L1, 1), space.index(AtomLevel::Sigma, AtomLevel::L1, 1)) ==
        Complex(-1.0));
  CHECK(f.matrix(space.index(AtomLevel::Sigma, AtomLevel::Sigma, 0),
                 space.index(AtomLevel::Sigma, AtomLevel::Sigma, 0)) == Complex(1.0));
  const Eigen::MatrixXcd e = two_pi_flip_effective();
  CHECK(e(0, 0) == Complex(1.0));
  CHECK(e(1, 1) == Complex(-1.0));
  CHECK(e(2, 2) == Complex(1.0));
}
