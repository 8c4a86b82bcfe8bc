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

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cavgate {

using Complex = std::complex<double>;

/// Internal level of one atom. Only L2 is excited and carries decay.
enum class AtomLevel : std::uint8_t { L0 = 0, L1 = 1, Sigma = 2, L2 = 3 };

inline constexpr std::array<AtomLevel, 4> kAllLevels = {
    AtomLevel::L0, AtomLevel::L1, AtomLevel::Sigma, AtomLevel::L2};

/// Symbols used in CSV files and amplitude labels: 0, 1, s, 2.
char level_symbol(AtomLevel level) noexcept;
AtomLevel parse_level(std::string_view token);

struct BasisLabel {
  AtomLevel l1 = AtomLevel::L0;
  AtomLevel l2 = AtomLevel::L0;
  int n = 0;

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// Parses "l1,l2,n", e.g. "1,s,0".
BasisLabel parse_basis_label(std::string_view text);
std::string format_basis_label(const BasisLabel& label);

/// Two four-level atoms times one cavity mode truncated at n_max photons.
///
/// Basis order is row-major in (l1, l2, n): l1 varies slowest and the photon
/// number fastest, so index = (4 * l1 + l2) * (n_max + 1) + n.
class HilbertSpace {
 public:
  explicit HilbertSpace(int n_max = 2);

  int n_max() const noexcept { return n_max_; }
  int dim() const noexcept { return 16 * (n_max_ + 1); }

  int index(AtomLevel l1, AtomLevel l2, int n) const;
  int index(const BasisLabel& label) const { return index(label.l1, label.l2, label.n); }
  BasisLabel label(int index) const;

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  int n_max_;
};

int basis_index(const HilbertSpace& space, AtomLevel l1, AtomLevel l2, int n);

/// Amplitude vector over a HilbertSpace. Conditional states may have norm < 1.
class QuantumState {
 public:
  explicit QuantumState(const HilbertSpace& space);
  QuantumState(const HilbertSpace& space, Eigen::VectorXcd amplitudes);

  static QuantumState basis(const HilbertSpace& space, AtomLevel l1, AtomLevel l2, int n = 0);

  const HilbertSpace& space() const noexcept { return space_; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  Eigen::VectorXcd& amplitudes() noexcept { return amplitudes_; }

  Complex amplitude(AtomLevel l1, AtomLevel l2, int n = 0) const;
  Complex& amplitude(AtomLevel l1, AtomLevel l2, int n = 0);

  double norm2() const { return amplitudes_.squaredNorm(); }
  bool is_normalized(double tol = 1e-10) const { return std::abs(norm2() - 1.0) <= tol; }
  bool is_finite() const { return amplitudes_.allFinite(); }

  /// Throws ErrorKind::UndefinedFidelity for the zero vector.
  QuantumState normalized() const;

  QuantumState operator+(const QuantumState& other) const;
  QuantumState operator*(Complex factor) const;

 private:
  HilbertSpace space_;
  Eigen::VectorXcd amplitudes_;
};

enum class NamedState { Alpha, A, AlphaTilde, ATilde, E0, EPlus, EMinus };

/// Named two-atom states, each times the cavity vacuum.
///
///   Alpha       (|12> - |21>)/sqrt2      A       (|s1> + |1s>)/sqrt2
///   AlphaTilde  (|s2> - |2s>)/sqrt2      ATilde  (|s1> - |1s>)/sqrt2
///   E0(theta, phi) = cos(theta)|11> - e^{i phi} sin(theta)|A>
///
/// E+ and E- are the bright eigenvectors of the resonant (Delta = 0) effective
/// model, (B + |alpha>)/sqrt2 and (|alpha> - B)/sqrt2 with
/// B = sin(theta)|11> + e^{i phi} cos(theta)|A>.
QuantumState make_named_state(NamedState tag, const HilbertSpace& space, double theta = 0.0,
                              double phi = 0.0);

/// Projector onto ground states (levels 0, 1, s) and |alpha>, all with an empty cavity.
QuantumState dfs_project(const QuantumState& psi);

/// <psi|chi>.
Complex overlap(const QuantumState& psi, const QuantumState& chi);

/// |<target|psi>|^2 / <psi|psi>, i.e. fidelity conditioned on no emission.
double fidelity_conditional(const QuantumState& psi, const QuantumState& target);

/// Rows "l1,l2,n,re,im" for every amplitude with modulus above 1e-12.
void write_state_csv(std::ostream& out, const QuantumState& state);

}  // namespace cavgate
