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

#include "cavgate/hilbert.hpp"

#include "cavgate/errors.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace cavgate {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

int level_value(AtomLevel level) { return static_cast<int>(level); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

char level_symbol(AtomLevel level) noexcept {
  switch (level) {
    case AtomLevel::L0: return '0';
    case AtomLevel::L1: return '1';
    case AtomLevel::Sigma: return 's';
    case AtomLevel::L2: return '2';
  }
  return '?';
}

AtomLevel parse_level(std::string_view token) {
  token = trim(token);
  if (token == "0") return AtomLevel::L0;
  if (token == "1") return AtomLevel::L1;
  if (token == "s" || token == "sigma") return AtomLevel::Sigma;
  if (token == "2") return AtomLevel::L2;
  throw Error(ErrorKind::Config, "unknown atomic level '" + std::string(token) + "'");
}

BasisLabel parse_basis_label(std::string_view text) {
  const auto c1 = text.find(',');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
  if (c2 == std::string_view::npos) {
    throw Error(ErrorKind::Config, "amplitude label must be 'l1,l2,n': '" + std::string(text) + "'");
  }
  BasisLabel label;
  label.l1 = parse_level(text.substr(0, c1));
  label.l2 = parse_level(text.substr(c1 + 1, c2 - c1 - 1));
  const std::string n_text(trim(text.substr(c2 + 1)));
  try {
    std::size_t used = 0;
    label.n = std::stoi(n_text, &used);
    if (used != n_text.size() || label.n < 0) throw std::invalid_argument(n_text);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Config, "bad photon number in label '" + std::string(text) + "'");
  }
  return label;
}

std::string format_basis_label(const BasisLabel& label) {
  return std::string{level_symbol(label.l1)} + "," + level_symbol(label.l2) + "," +
         std::to_string(label.n);
}

HilbertSpace::HilbertSpace(int n_max) : n_max_(n_max) {
  if (n_max < 0) throw Error(ErrorKind::Truncation, "n_max must be non-negative");
}

int HilbertSpace::index(AtomLevel l1, AtomLevel l2, int n) const {
  if (n < 0 || n > n_max_) {
    throw Error(ErrorKind::Truncation, "photon number " + std::to_string(n) +
                                           " outside truncation n_max=" + std::to_string(n_max_));
  }
  return (4 * level_value(l1) + level_value(l2)) * (n_max_ + 1) + n;
}

BasisLabel HilbertSpace::label(int index) const {
  if (index < 0 || index >= dim()) {
    throw Error(ErrorKind::Range, "basis index " + std::to_string(index) + " out of range");
  }
  const int stride = n_max_ + 1;
  BasisLabel out;
  out.n = index % stride;
  const int pair = index / stride;
  out.l1 = static_cast<AtomLevel>(pair / 4);
  out.l2 = static_cast<AtomLevel>(pair % 4);
  return out;
}

int basis_index(const HilbertSpace& space, AtomLevel l1, AtomLevel l2, int n) {
  return space.index(l1, l2, n);
}

QuantumState::QuantumState(const HilbertSpace& space)
    : space_(space), amplitudes_(Eigen::VectorXcd::Zero(space.dim())) {}

QuantumState::QuantumState(const HilbertSpace& space, Eigen::VectorXcd amplitudes)
    : space_(space), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != space_.dim()) {
    throw Error(ErrorKind::Precondition, "amplitude vector length does not match the space");
  }
}

QuantumState QuantumState::basis(const HilbertSpace& space, AtomLevel l1, AtomLevel l2, int n) {
  QuantumState s(space);
  s.amplitude(l1, l2, n) = 1.0;
  return s;
}

Complex QuantumState::amplitude(AtomLevel l1, AtomLevel l2, int n) const {
  return amplitudes_[space_.index(l1, l2, n)];
}

Complex& QuantumState::amplitude(AtomLevel l1, AtomLevel l2, int n) {
  return amplitudes_[space_.index(l1, l2, n)];
}

QuantumState QuantumState::normalized() const {
  const double n2 = norm2();
  if (!(n2 > 0.0)) throw Error(ErrorKind::UndefinedFidelity, "cannot normalize a zero-norm state");
  return QuantumState(space_, amplitudes_ / std::sqrt(n2));
}

QuantumState QuantumState::operator+(const QuantumState& other) const {
  if (!(space_ == other.space_)) throw Error(ErrorKind::Precondition, "states live in different spaces");
  return QuantumState(space_, amplitudes_ + other.amplitudes_);
}

QuantumState QuantumState::operator*(Complex factor) const {
  return QuantumState(space_, amplitudes_ * factor);
}

QuantumState make_named_state(NamedState tag, const HilbertSpace& space, double theta, double phi) {
  using L = AtomLevel;
  QuantumState s(space);
  const Complex eiphi = std::polar(1.0, phi);
  auto add_A = [&](Complex c) {
    s.amplitude(L::Sigma, L::L1) += c * kInvSqrt2;
    s.amplitude(L::L1, L::Sigma) += c * kInvSqrt2;
  };
  auto add_alpha = [&](Complex c) {
    s.amplitude(L::L1, L::L2) += c * kInvSqrt2;
    s.amplitude(L::L2, L::L1) -= c * kInvSqrt2;
  };
  switch (tag) {
    case NamedState::Alpha:
      add_alpha(1.0);
      break;
    case NamedState::A:
      add_A(1.0);
      break;
    case NamedState::AlphaTilde:
      s.amplitude(L::Sigma, L::L2) = kInvSqrt2;
      s.amplitude(L::L2, L::Sigma) = -kInvSqrt2;
      break;
    case NamedState::ATilde:
      s.amplitude(L::Sigma, L::L1) = kInvSqrt2;
      s.amplitude(L::L1, L::Sigma) = -kInvSqrt2;
      break;
    case NamedState::E0:
      s.amplitude(L::L1, L::L1) = std::cos(theta);
      add_A(-eiphi * std::sin(theta));
      break;
    case NamedState::EPlus:
    case NamedState::EMinus: {
      const double sign = tag == NamedState::EPlus ? 1.0 : -1.0;
      // sign * B + alpha, over sqrt2
      s.amplitude(L::L1, L::L1) = sign * std::sin(theta) * kInvSqrt2;
      add_A(sign * eiphi * std::cos(theta) * kInvSqrt2);
      add_alpha(kInvSqrt2);
      break;
    }
  }
  return s;
}

QuantumState dfs_project(const QuantumState& psi) {
  using L = AtomLevel;
  const HilbertSpace& space = psi.space();
  QuantumState out(space);
  constexpr std::array<L, 3> ground = {L::L0, L::L1, L::Sigma};
  for (L a : ground) {
    for (L b : ground) out.amplitude(a, b) = psi.amplitude(a, b);
  }
  const Complex c_alpha = (psi.amplitude(L::L1, L::L2) - psi.amplitude(L::L2, L::L1)) * kInvSqrt2;
  out.amplitude(L::L1, L::L2) = c_alpha * kInvSqrt2;
  out.amplitude(L::L2, L::L1) = -c_alpha * kInvSqrt2;
  return out;
}

Complex overlap(const QuantumState& psi, const QuantumState& chi) {
  if (!(psi.space() == chi.space())) {
    throw Error(ErrorKind::Precondition, "overlap of states from different spaces");
  }
  return psi.amplitudes().dot(chi.amplitudes());
}

double fidelity_conditional(const QuantumState& psi, const QuantumState& target) {
  const double n2 = psi.norm2();
  if (!(n2 > 0.0)) throw Error(ErrorKind::UndefinedFidelity, "fidelity of a zero-norm state is undefined");
  return std::norm(overlap(target, psi)) / n2;
}

void write_state_csv(std::ostream& out, const QuantumState& state) {
  out << "l1,l2,n,re,im\n";
  char buf[96];
  for (int i = 0; i < state.space().dim(); ++i) {
    const Complex a = state.amplitudes()[i];
    if (std::abs(a) <= 1e-12) continue;
    const BasisLabel lab = state.space().label(i);
    std::snprintf(buf, sizeof buf, "%c,%c,%d,%.17g,%.17g\n", level_symbol(lab.l1),
                  level_symbol(lab.l2), lab.n, a.real(), a.imag());
    out << buf;
  }
}

}  // namespace cavgate
