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

#include "cavgate/hilbert.hpp"

#include <Eigen/Dense>

#include <iosfwd>

namespace cavgate {

/// Rates and detunings in units of the atom-cavity coupling g (hbar = 1).
struct SystemParams {
  double g = 1.0;
  double kappa = 0.0;  // cavity decay
  double gamma = 0.0;  // decay of level 2
  double Delta = 0.0;  // laser/cavity detuning from the 2-1 transition
  double delta = 0.0;  // two-photon detuning of the sigma laser

  void validate() const;
};

/// Collective Rabi frequencies. The per-atom amplitudes are fixed to
/// Omega1^(1) = -Omega1^(2) = -Omega1/sqrt2 and Omega_s^(1) = -Omega_s^(2) = -Omega_s.
struct LaserAmplitudes {
  Complex omega1{};
  Complex omega_sigma{};
};

struct OperatorMatrix {
  Eigen::MatrixXcd matrix;
  bool hermitian = true;

  int dim() const noexcept { return static_cast<int>(matrix.rows()); }
  Complex operator()(int r, int c) const { return matrix(r, c); }
};

double max_abs(const Eigen::MatrixXcd& m);
double hermiticity_defect(const OperatorMatrix& op);

/// Static and laser pieces of the conditional Hamiltonian:
///   H(t) = fixed + Omega1(t) U1 + conj(Omega1(t)) U1^dag + Omega_s(t) Us + conj(Omega_s(t)) Us^dag.
/// fixed holds the cavity coupling, detunings and (for the conditional
/// variant) the -i/2 decay terms.
struct HamiltonianTerms {
  HilbertSpace space;
  Eigen::MatrixXcd fixed;
  Eigen::MatrixXcd omega1_unit;
  Eigen::MatrixXcd omega_sigma_unit;
  bool dissipative = false;

  Eigen::MatrixXcd laser_part(const LaserAmplitudes& lasers) const;
  OperatorMatrix assemble(const LaserAmplitudes& lasers) const;
};

HamiltonianTerms full_terms(const SystemParams& params, const HilbertSpace& space);
HamiltonianTerms conditional_terms(const SystemParams& params, const HilbertSpace& space);

OperatorMatrix build_full(const SystemParams& params, const LaserAmplitudes& lasers,
                          const HilbertSpace& space);

/// build_full - (i/2) kappa b^dag b - (i/2) Gamma sum_i |2><2|_i.
OperatorMatrix build_conditional(const SystemParams& params, const LaserAmplitudes& lasers,
                                 const HilbertSpace& space);

/// Only the laser term of the interaction Hamiltonian.
OperatorMatrix build_laser_term(const LaserAmplitudes& lasers, const HilbertSpace& space);

/// Index order of the effective 3x3 model.
enum EffectiveBasis : int { kEff11 = 0, kEffA = 1, kEffAlpha = 2 };

/// DFS-projected model over {|11>, |A>, |alpha>}:
///   1/2 (Omega1 coupling |11>-|alpha> + Omega_s coupling |A>-|alpha>) - delta |A><A| - Delta |alpha><alpha|.
/// Couplings are those of the projected laser term, <alpha|H|11> = conj(Omega1)/2
/// and <alpha|H|A> = conj(Omega_s)/2.
OperatorMatrix build_effective(const SystemParams& params, const LaserAmplitudes& lasers);

/// Maps a 3x3 effective operator into the full space (vacuum sector).
Eigen::MatrixXcd embed_effective(const Eigen::MatrixXcd& effective, const HilbertSpace& space);

/// The states |11>, |A>, |alpha> (vacuum) as columns of a dim x 3 isometry.
Eigen::MatrixXcd effective_isometry(const HilbertSpace& space);

struct RamanConstants {
  Complex Omega{};      // Omega1 conj(Omega_s) / (2 Delta)
  double Delta11 = 0.0;  // -|Omega1|^2 / (4 Delta)
  double DeltaA = 0.0;   // delta - |Omega_s|^2 / (4 Delta)
  double K = 0.0;        // sqrt(|Omega|^2 + (Delta11 - DeltaA)^2)
};

/// Throws ErrorKind::DivisionByZero for Delta == 0.
RamanConstants raman_constants(const SystemParams& params, const LaserAmplitudes& lasers);

/// 2x2 model over {|11>, |A>}: 1/2 Omega |11><A| + h.c. - Delta11 |11><11| - DeltaA |A><A|.
OperatorMatrix build_raman_reduced(const SystemParams& params, const LaserAmplitudes& lasers);
OperatorMatrix build_raman_reduced(const RamanConstants& constants);

/// max |P H_laser P - embed(H_eff laser part)|, with P the DFS projector.
double check_projector_identity(const SystemParams& params, const LaserAmplitudes& lasers,
                                const HilbertSpace& space);

Eigen::MatrixXcd dfs_projector(const HilbertSpace& space);

/// Rows "row,col,re,im" for non-zero entries.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXcd& m);

}  // namespace cavgate
