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
#include "cavgate/hamiltonian.hpp"
#include "support/oracle.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace cavgate;

TEST_CASE("conditional Hamiltonian matches an independent construction") {
  for (int draw = 0; draw < 20; ++draw) {
    const SystemParams p{1.0, oracle::uniform(0, 0.3), oracle::uniform(0, 0.3), oracle::uniform(-2, 2),
                         oracle::uniform(-0.1, 0.1)};
    const LaserAmplitudes l{Complex(oracle::uniform(-0.1, 0.1), oracle::uniform(-0.1, 0.1)),
                            Complex(oracle::uniform(-0.1, 0.1), oracle::uniform(-0.1, 0.1))};
    const int n_max = draw % 3 + 1;
    const Eigen::MatrixXcd ref =
        oracle::hamiltonian(p.g, p.kappa, p.gamma, p.Delta, p.delta, l.omega1, l.omega_sigma, n_max);
    CHECK(max_abs(build_conditional(p, l, HilbertSpace(n_max)).matrix - ref) < 1e-15);
  }
}

TEST_CASE("full Hamiltonian is Hermitian and carries no decay") {
  const SystemParams p{1.0, 0.1, 0.1, 1.357, 0.01};
  const OperatorMatrix h = build_full(p, {Complex(0.01, 0.002), 0.02}, HilbertSpace(2));
  CHECK(h.hermitian);
  CHECK(hermiticity_defect(h) < 1e-15);
  const OperatorMatrix c = build_conditional(p, {Complex(0.01, 0.002), 0.02}, HilbertSpace(2));
  CHECK_FALSE(c.hermitian);
  // The anti-Hermitian part is -(i/2)(kappa n + Gamma * (number of atoms in 2)).
  const HilbertSpace space(2);
  const Eigen::MatrixXcd anti = 0.5 * (c.matrix - c.matrix.adjoint());
  for (int i = 0; i < space.dim(); ++i) {
    const BasisLabel b = space.label(i);
    const int excited = (b.l1 == AtomLevel::L2) + (b.l2 == AtomLevel::L2);
    CHECK(std::abs(anti(i, i) - Complex(0.0, -0.5 * (0.1 * b.n + 0.1 * excited))) < 1e-15);
  }
  CHECK((anti - Eigen::MatrixXcd(anti.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("projecting the laser term onto the decoherence-free states gives the three-level model") {
  for (int draw = 0; draw < 10; ++draw) {
    const LaserAmplitudes l{Complex(oracle::uniform(-1, 1), oracle::uniform(-1, 1)),
                            Complex(oracle::uniform(-1, 1), oracle::uniform(-1, 1))};
    CHECK(check_projector_identity(SystemParams{}, l, HilbertSpace(2)) < 1e-15);
  }
}

TEST_CASE("three-level model spectrum at the E-Raman point") {
  const SystemParams p{1.0, 0.0, 0.0, 1.357, 0.0};
  const OperatorMatrix h = build_effective(p, {0.01, 0.01});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix);
  const Eigen::VectorXd ev = es.eigenvalues();
  CHECK(ev[0] == doctest::Approx(-1.35704).epsilon(1e-5));
  CHECK(std::abs(ev[1]) < 1e-15);
  CHECK(ev[2] == doctest::Approx(3.684e-5).epsilon(1e-3));
}

TEST_CASE("Raman constants and the reduced model") {
  const SystemParams p{1.0, 0.1, 0.1, 1.357, 0.0};
  const RamanConstants c = raman_constants(p, {0.01, 0.01});
  CHECK(c.Omega.real() == doctest::Approx(1e-4 / (2 * 1.357)).epsilon(1e-14));
  CHECK(c.Delta11 == doctest::Approx(-1e-4 / (4 * 1.357)).epsilon(1e-14));
  CHECK(c.DeltaA == doctest::Approx(-1e-4 / (4 * 1.357)).epsilon(1e-14));
  CHECK(c.K == doctest::Approx(3.6846e-5).epsilon(1e-4));
  CHECK(M_PI / c.K == doctest::Approx(8.527e4).epsilon(1e-3));
  CHECK(c.K >= std::abs(c.Omega));

  const OperatorMatrix r = build_raman_reduced(c);
  CHECK(r.matrix(0, 0) == Complex(-c.Delta11, 0.0));
  CHECK(r.matrix(0, 1) == 0.5 * c.Omega);

  try {
    (void)raman_constants(SystemParams{1.0, 0.1, 0.1, 0.0, 0.0}, {0.01, 0.01});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
}

TEST_CASE("parameter validation") {
  SystemParams p;
  p.kappa = -1;
  CHECK_THROWS_AS(p.validate(), Error);
  p.kappa = 0;
  p.g = 0;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("matrix csv lists nonzero entries") {
  std::ostringstream out;
  write_matrix_csv(out, build_effective(SystemParams{1, 0, 0, 1, 0}, {0.5, 0.0}).matrix);
  CHECK(out.str().rfind("row,col,re,im\n", 0) == 0);
  CHECK(out.str().find("0,2,0.25,0") != std::string::npos);
}
