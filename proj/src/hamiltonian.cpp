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

#include "cavgate/hamiltonian.hpp"

#include "cavgate/errors.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace cavgate {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr Complex kI{0.0, 1.0};

// Per-atom factors multiplying the collective Rabi frequencies.
constexpr std::array<double, 2> kOmega1Sign = {-kInvSqrt2, kInvSqrt2};
constexpr std::array<double, 2> kOmegaSigmaSign = {-1.0, 1.0};

std::array<AtomLevel, 2> levels_of(const BasisLabel& b) { return {b.l1, b.l2}; }

int index_with(const HilbertSpace& space, std::array<AtomLevel, 2> lv, int atom, AtomLevel level,
               int n) {
  lv[atom] = level;
  return space.index(lv[0], lv[1], n);
}

HamiltonianTerms make_terms(const SystemParams& params, const HilbertSpace& space, bool dissipative) {
  params.validate();
  const int dim = space.dim();
  HamiltonianTerms terms{space, Eigen::MatrixXcd::Zero(dim, dim), Eigen::MatrixXcd::Zero(dim, dim),
                         Eigen::MatrixXcd::Zero(dim, dim), dissipative};

  for (int src = 0; src < dim; ++src) {
    const BasisLabel b = space.label(src);
    const auto lv = levels_of(b);
    Complex diag = 0.0;
    for (int atom = 0; atom < 2; ++atom) {
      if (lv[atom] == AtomLevel::Sigma) diag -= params.delta;
      if (lv[atom] == AtomLevel::L2) {
        diag -= params.Delta;
        if (dissipative) diag -= 0.5 * kI * params.gamma;
      }
    }
    if (dissipative) diag -= 0.5 * kI * params.kappa * static_cast<double>(b.n);
    terms.fixed(src, src) += diag;

    for (int atom = 0; atom < 2; ++atom) {
      // g |2><1| b + h.c.
      if (lv[atom] == AtomLevel::L1 && b.n >= 1) {
        const int dst = index_with(space, lv, atom, AtomLevel::L2, b.n - 1);
        const double c = params.g * std::sqrt(static_cast<double>(b.n));
        terms.fixed(dst, src) += c;
        terms.fixed(src, dst) += c;
      }
      // 1/2 Omega^(i) |1><2| and 1/2 Omega_s^(i) |s><2|; conjugates follow from U^dag.
      if (lv[atom] == AtomLevel::L2) {
        terms.omega1_unit(index_with(space, lv, atom, AtomLevel::L1, b.n), src) +=
            0.5 * kOmega1Sign[atom];
        terms.omega_sigma_unit(index_with(space, lv, atom, AtomLevel::Sigma, b.n), src) +=
            0.5 * kOmegaSigmaSign[atom];
      }
    }
  }
  return terms;
}

}  // namespace

void SystemParams::validate() const {
  if (!(g > 0.0)) throw Error(ErrorKind::Config, "g must be positive");
  if (!(kappa >= 0.0)) throw Error(ErrorKind::Config, "kappa must be non-negative");
  if (!(gamma >= 0.0)) throw Error(ErrorKind::Config, "gamma must be non-negative");
  if (!std::isfinite(Delta) || !std::isfinite(delta)) {
    throw Error(ErrorKind::Config, "detunings must be finite");
  }
}

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const OperatorMatrix& op) {
  return max_abs(op.matrix - op.matrix.adjoint());
}

Eigen::MatrixXcd HamiltonianTerms::laser_part(const LaserAmplitudes& lasers) const {
  return lasers.omega1 * omega1_unit + std::conj(lasers.omega1) * omega1_unit.adjoint() +
         lasers.omega_sigma * omega_sigma_unit +
         std::conj(lasers.omega_sigma) * omega_sigma_unit.adjoint();
}

OperatorMatrix HamiltonianTerms::assemble(const LaserAmplitudes& lasers) const {
  return OperatorMatrix{fixed + laser_part(lasers), !dissipative};
}

HamiltonianTerms full_terms(const SystemParams& params, const HilbertSpace& space) {
  return make_terms(params, space, false);
}

HamiltonianTerms conditional_terms(const SystemParams& params, const HilbertSpace& space) {
  return make_terms(params, space, true);
}

OperatorMatrix build_full(const SystemParams& params, const LaserAmplitudes& lasers,
                          const HilbertSpace& space) {
  return full_terms(params, space).assemble(lasers);
}

OperatorMatrix build_conditional(const SystemParams& params, const LaserAmplitudes& lasers,
                                 const HilbertSpace& space) {
  OperatorMatrix op = conditional_terms(params, space).assemble(lasers);
  op.hermitian = params.kappa == 0.0 && params.gamma == 0.0;
  return op;
}

OperatorMatrix build_laser_term(const LaserAmplitudes& lasers, const HilbertSpace& space) {
  SystemParams none;
  const HamiltonianTerms t = full_terms(none, space);
  return OperatorMatrix{t.laser_part(lasers), true};
}

OperatorMatrix build_effective(const SystemParams& params, const LaserAmplitudes& lasers) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(3, 3);
  h(kEffAlpha, kEff11) = 0.5 * std::conj(lasers.omega1);
  h(kEff11, kEffAlpha) = 0.5 * lasers.omega1;
  h(kEffAlpha, kEffA) = 0.5 * std::conj(lasers.omega_sigma);
  h(kEffA, kEffAlpha) = 0.5 * lasers.omega_sigma;
  h(kEffA, kEffA) = -params.delta;
  h(kEffAlpha, kEffAlpha) = -params.Delta;
  return OperatorMatrix{std::move(h), true};
}

Eigen::MatrixXcd effective_isometry(const HilbertSpace& space) {
  Eigen::MatrixXcd v(space.dim(), 3);
  v.col(kEff11) = QuantumState::basis(space, AtomLevel::L1, AtomLevel::L1).amplitudes();
  v.col(kEffA) = make_named_state(NamedState::A, space).amplitudes();
  v.col(kEffAlpha) = make_named_state(NamedState::Alpha, space).amplitudes();
  return v;
}

Eigen::MatrixXcd embed_effective(const Eigen::MatrixXcd& effective, const HilbertSpace& space) {
  const Eigen::MatrixXcd v = effective_isometry(space);
  return v * effective * v.adjoint();
}

RamanConstants raman_constants(const SystemParams& params, const LaserAmplitudes& lasers) {
  if (params.Delta == 0.0) {
    throw Error(ErrorKind::DivisionByZero,
                "E-Raman elimination needs Delta != 0; use the E-STIRAP (dark-state) path at Delta = 0");
  }
  RamanConstants c;
  c.Omega = lasers.omega1 * std::conj(lasers.omega_sigma) / (2.0 * params.Delta);
  c.Delta11 = -std::norm(lasers.omega1) / (4.0 * params.Delta);
  c.DeltaA = params.delta - std::norm(lasers.omega_sigma) / (4.0 * params.Delta);
  c.K = std::sqrt(std::norm(c.Omega) + (c.Delta11 - c.DeltaA) * (c.Delta11 - c.DeltaA));
  return c;
}

OperatorMatrix build_raman_reduced(const RamanConstants& c) {
  Eigen::MatrixXcd h(2, 2);
  h << -c.Delta11, 0.5 * c.Omega, 0.5 * std::conj(c.Omega), -c.DeltaA;
  return OperatorMatrix{std::move(h), true};
}

OperatorMatrix build_raman_reduced(const SystemParams& params, const LaserAmplitudes& lasers) {
  return build_raman_reduced(raman_constants(params, lasers));
}

Eigen::MatrixXcd dfs_projector(const HilbertSpace& space) {
  const int dim = space.dim();
  Eigen::MatrixXcd p(dim, dim);
  for (int c = 0; c < dim; ++c) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    e[c] = 1.0;
    p.col(c) = dfs_project(QuantumState(space, e)).amplitudes();
  }
  return p;
}

double check_projector_identity(const SystemParams& params, const LaserAmplitudes& lasers,
                                const HilbertSpace& space) {
  (void)params;  // the identity concerns the laser term only
  const Eigen::MatrixXcd p = dfs_projector(space);
  const Eigen::MatrixXcd projected = p * build_laser_term(lasers, space).matrix * p;
  SystemParams resonant;
  const Eigen::MatrixXcd eff = build_effective(resonant, lasers).matrix;
  return max_abs(projected - embed_effective(eff, space));
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXcd& m) {
  out << "row,col,re,im\n";
  char buf[96];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex v = m(r, c);
      if (v == Complex{}) continue;
      std::snprintf(buf, sizeof buf, "%ld,%ld,%.17g,%.17g\n", static_cast<long>(r),
                    static_cast<long>(c), v.real(), v.imag());
      out << buf;
    }
  }
}

}  // namespace cavgate
