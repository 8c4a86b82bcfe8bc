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

#include "cavgate/propagate.hpp"

#include "cavgate/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace cavgate {

namespace {

constexpr Complex kMinusI{0.0, -1.0};

// One stored entry of H restricted to the reachable subspace. The value is
// coef times the laser factor selected by `source`.
struct SparseEntry {
  int row;
  int col;
  Complex coef;
  int source;  // 0: static, 1: Omega1, 2: conj(Omega1), 3: Omega_s, 4: conj(Omega_s)
};

// H(t) restricted to the basis states reachable from the initial support.
class ReducedHamiltonian {
 public:
  ReducedHamiltonian(const DrivenSystem& system, const Eigen::VectorXcd& psi0) {
    const HamiltonianTerms& t = system.terms();
    const int dim = t.space.dim();
    const std::array<Eigen::MatrixXcd, 5> parts{t.fixed, t.omega1_unit, t.omega1_unit.adjoint(),
                                               t.omega_sigma_unit, t.omega_sigma_unit.adjoint()};
    auto coupled = [&](int r, int c) {
      for (const Eigen::MatrixXcd& m : parts) {
        if (m(r, c) != Complex{}) return true;
      }
      return false;
    };

    // Breadth-first closure of the initial support under the coupling graph.
    std::vector<int> local(dim, -1);
    for (int i = 0; i < dim; ++i) {
      if (psi0[i] != Complex{}) {
        local[i] = static_cast<int>(active_.size());
        active_.push_back(i);
      }
    }
    for (std::size_t head = 0; head < active_.size(); ++head) {
      const int c = active_[head];
      for (int r = 0; r < dim; ++r) {
        if (local[r] < 0 && coupled(r, c)) {
          local[r] = static_cast<int>(active_.size());
          active_.push_back(r);
        }
      }
    }
    diagonal_ = Eigen::VectorXcd::Zero(size());
    for (int src = 0; src < 5; ++src) {
      for (int c : active_) {
        for (int r : active_) {
          const Complex v = parts[src](r, c);
          if (v == Complex{}) continue;
          if (src == 0 && r == c) {
            diagonal_[local[r]] = v;
          } else {
            entries_.push_back({local[r], local[c], v, src});
          }
        }
      }
    }
    values_.resize(entries_.size());
  }

  int size() const { return static_cast<int>(active_.size()); }
  const std::vector<int>& active() const { return active_; }

  void set_lasers(const LaserAmplitudes& l) {
    const std::array<Complex, 5> factor{Complex(1.0), l.omega1, std::conj(l.omega1), l.omega_sigma,
                                        std::conj(l.omega_sigma)};
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      values_[k] = kMinusI * (factor[entries_[k].source] * entries_[k].coef);
    }
  }

  // out = -i H in
  void apply(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
    out = (kMinusI * diagonal_).cwiseProduct(in);
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      out[entries_[k].row] += values_[k] * in[entries_[k].col];
    }
  }

  Eigen::MatrixXcd dense() const {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(size(), size());
    h.diagonal() = diagonal_;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      h(entries_[k].row, entries_[k].col) += values_[k] / kMinusI;
    }
    return h;
  }

 private:
  std::vector<int> active_;
  Eigen::VectorXcd diagonal_;
  std::vector<SparseEntry> entries_;
  std::vector<Complex> values_;
};

// Splits [t0, t1] at the breakpoints into segments and a step count each.
struct Segment {
  double begin;
  double end;
  std::int64_t steps;
};

std::vector<Segment> make_segments(double t0, double t1, const std::vector<double>& breakpoints,
                                   double h) {
  std::vector<double> cuts{t0};
  for (double b : breakpoints) {
    if (b > t0 && b < t1) cuts.push_back(b);
  }
  cuts.push_back(t1);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Segment> out;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double len = cuts[k + 1] - cuts[k];
    if (len <= 0.0) continue;
    const auto n = static_cast<std::int64_t>(std::ceil(len / h - 1e-9));
    out.push_back({cuts[k], cuts[k + 1], std::max<std::int64_t>(n, 1)});
  }
  return out;
}

// RK4 stability polynomial of A = -i h H: exactly the one-step RK4 map of a
// time-independent linear system.
Eigen::MatrixXcd rk4_step_matrix(const Eigen::MatrixXcd& h_matrix, double h) {
  const Eigen::MatrixXcd a = (kMinusI * h) * h_matrix;
  const auto id = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  return id + a * (id + a * (0.5 * id + a * (id / 6.0 + a / 24.0)));
}

Eigen::VectorXcd apply_power(Eigen::MatrixXcd m, std::int64_t n, Eigen::VectorXcd v) {
  while (n > 0) {
    if (n & 1) v = m * v;
    n >>= 1;
    if (n > 0) m = m * m;
  }
  return v;
}

[[noreturn]] void diverged(std::int64_t step, double t) {
  std::ostringstream msg;
  msg << "integration diverged at step " << step << " (t=" << t << ")";
  throw Error(ErrorKind::Diverged, msg.str());
}

class Recorder {
 public:
  Recorder(const IntegratorConfig& cfg, const std::vector<int>& indices)
      : stride_(cfg.record_stride), indices_(indices) {}

  bool enabled() const { return stride_ > 0; }
  int stride() const { return stride_; }

  template <class Lookup>
  void sample(double t, double norm2, Lookup amplitude_of) {
    if (!enabled()) return;
    TrajectorySample s{t, norm2, {}};
    s.amplitudes.reserve(indices_.size());
    for (int i : indices_) s.amplitudes.push_back(amplitude_of(i));
    samples_.push_back(std::move(s));
  }

  std::vector<TrajectorySample> take() { return std::move(samples_); }

 private:
  int stride_;
  std::vector<int> indices_;
  std::vector<TrajectorySample> samples_;
};

void require_duration(double t_begin, double t_end) {
  if (!(t_end >= t_begin) || !std::isfinite(t_end) || !std::isfinite(t_begin)) {
    throw Error(ErrorKind::Precondition, "propagation interval must satisfy t_begin <= t_end");
  }
}

}  // namespace

double IntegratorConfig::step_for(double duration) const {
  if (step > 0.0) return step;
  return duration > 0.0 ? std::min(0.02, duration / 1e6) : 0.02;
}

DrivenSystem::DrivenSystem(const SystemParams& params, const HilbertSpace& space)
    : params_(params),
      terms_(std::make_shared<const HamiltonianTerms>(conditional_terms(params, space))) {}

DrivenSystem DrivenSystem::constant(const SystemParams& params, const LaserAmplitudes& lasers,
                                    const HilbertSpace& space) {
  DrivenSystem s(params, space);
  s.constant_ = lasers;
  return s;
}

DrivenSystem DrivenSystem::free(const SystemParams& params, const HilbertSpace& space) {
  return constant(params, LaserAmplitudes{}, space);
}

DrivenSystem DrivenSystem::scheduled(const SystemParams& params, const PulseSchedule& schedule,
                                     const HilbertSpace& space, double offset) {
  DrivenSystem s(params, space);
  if (schedule.shape() == PulseShape::Constant) {
    s.constant_ = schedule.evaluate(0.0);
    return s;
  }
  const double T = schedule.total_time();
  s.program_ = [schedule, offset, T](double t) {
    // Tolerate round-off at the ends of the schedule window.
    const double local = std::clamp(t - offset, 0.0, T);
    return schedule.evaluate(local);
  };
  for (double b : schedule.breakpoints()) s.breakpoints_.push_back(b + offset);
  s.breakpoints_.push_back(offset + T);
  return s;
}

DrivenSystem DrivenSystem::programmed(const SystemParams& params, LaserProgram program,
                                      const HilbertSpace& space, std::vector<double> breakpoints) {
  DrivenSystem s(params, space);
  s.program_ = std::move(program);
  s.breakpoints_ = std::move(breakpoints);
  return s;
}

LaserAmplitudes DrivenSystem::lasers_at(double t) const {
  return constant_ ? *constant_ : program_(t);
}

OperatorMatrix DrivenSystem::hamiltonian_at(double t) const {
  OperatorMatrix op = terms_->assemble(lasers_at(t));
  op.hermitian = params_.kappa == 0.0 && params_.gamma == 0.0;
  return op;
}

PropagationResult propagate(const DrivenSystem& system, const QuantumState& psi0, double t_begin,
                            double t_end, const IntegratorConfig& cfg) {
  require_duration(t_begin, t_end);
  if (!(psi0.space() == system.space())) {
    throw Error(ErrorKind::Precondition, "initial state and Hamiltonian live in different spaces");
  }
  if (!psi0.is_finite()) throw Error(ErrorKind::Precondition, "initial state is not finite");

  const HilbertSpace& space = system.space();
  ReducedHamiltonian h(system, psi0.amplitudes());
  const std::vector<int>& active = h.active();
  const int m = h.size();

  Eigen::VectorXcd psi(m);
  for (int k = 0; k < m; ++k) psi[k] = psi0.amplitudes()[active[k]];

  std::vector<int> rec_local;
  for (const BasisLabel& lab : cfg.recorded) {
    const int full = space.index(lab);
    const auto it = std::find(active.begin(), active.end(), full);
    rec_local.push_back(it == active.end() ? -1 : static_cast<int>(it - active.begin()));
  }
  Recorder rec(cfg, rec_local);
  auto lookup = [&psi](int i) { return i < 0 ? Complex{} : psi[i]; };
  rec.sample(t_begin, psi.squaredNorm(), lookup);

  const double h_max = cfg.step_for(t_end - t_begin);
  std::int64_t total_steps = 0;

  if (system.time_independent() && cfg.use_constant_power && m > 0) {
    h.set_lasers(system.lasers_at(t_begin));
    const Eigen::MatrixXcd dense = h.dense();
    for (const Segment& seg : make_segments(t_begin, t_end, {}, h_max)) {
      const double step = (seg.end - seg.begin) / static_cast<double>(seg.steps);
      const Eigen::MatrixXcd one = rk4_step_matrix(dense, step);
      if (rec.enabled()) {
        // M^stride by binary powering, then step through the samples.
        Eigen::MatrixXcd stride_power = Eigen::MatrixXcd::Identity(m, m);
        Eigen::MatrixXcd base = one;
        for (std::int64_t n = rec.stride(); n > 0; n >>= 1) {
          if (n & 1) stride_power = base * stride_power;
          if (n > 1) base = base * base;
        }
        std::int64_t done = 0;
        while (done + rec.stride() <= seg.steps) {
          psi = stride_power * psi;
          done += rec.stride();
          if (!psi.allFinite()) diverged(total_steps + done, seg.begin + done * step);
          rec.sample(seg.begin + done * step, psi.squaredNorm(), lookup);
        }
        if (done < seg.steps) {
          psi = apply_power(one, seg.steps - done, psi);
          if (!psi.allFinite()) diverged(total_steps + seg.steps, seg.end);
          rec.sample(seg.end, psi.squaredNorm(), lookup);
        }
      } else {
        psi = apply_power(one, seg.steps, psi);
        if (!psi.allFinite()) diverged(total_steps + seg.steps, seg.end);
      }
      total_steps += seg.steps;
    }
  } else if (m > 0) {
    Eigen::VectorXcd k1(m), k2(m), k3(m), k4(m), tmp(m);
    for (const Segment& seg : make_segments(t_begin, t_end, system.breakpoints(), h_max)) {
      const double step = (seg.end - seg.begin) / static_cast<double>(seg.steps);
      for (std::int64_t s = 0; s < seg.steps; ++s) {
        const double t = seg.begin + static_cast<double>(s) * step;
        h.set_lasers(system.lasers_at(t));
        h.apply(psi, k1);
        h.set_lasers(system.lasers_at(t + 0.5 * step));
        tmp = psi + (0.5 * step) * k1;
        h.apply(tmp, k2);
        tmp = psi + (0.5 * step) * k2;
        h.apply(tmp, k3);
        h.set_lasers(system.lasers_at(s + 1 == seg.steps ? seg.end : t + step));
        tmp = psi + step * k3;
        h.apply(tmp, k4);
        psi += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!psi.allFinite()) diverged(total_steps + s + 1, t + step);
        const std::int64_t global = total_steps + s + 1;
        if (rec.enabled() && (global % rec.stride() == 0 || s + 1 == seg.steps)) {
          rec.sample(s + 1 == seg.steps ? seg.end : t + step, psi.squaredNorm(), lookup);
        }
      }
      total_steps += seg.steps;
    }
  }

  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(space.dim());
  for (int k = 0; k < m; ++k) full[active[k]] = psi[k];
  PropagationResult result{QuantumState(space, std::move(full)), 0.0, rec.take(), total_steps};
  result.p0 = result.final_state.norm2();
  return result;
}

PropagationResult propagate(const DrivenSystem& system, const QuantumState& psi0, double duration,
                            const IntegratorConfig& cfg) {
  return propagate(system, psi0, 0.0, duration, cfg);
}

double default_decay_window(const SystemParams& params) {
  const double slowest = std::min(params.kappa, params.gamma);
  return slowest > 0.0 ? 5.0 / slowest : 0.0;
}

PropagationResult decay_window(const QuantumState& psi, const SystemParams& params, double duration,
                               const IntegratorConfig& cfg) {
  if (!(duration >= 0.0)) throw Error(ErrorKind::Precondition, "decay window must be non-negative");
  return propagate(DrivenSystem::free(params, psi.space()), psi, 0.0, duration, cfg);
}

EffectiveProgram effective_program(const SystemParams& params, const PulseSchedule& schedule) {
  const double T = schedule.total_time();
  return [params, schedule, T](double t) {
    return build_effective(params, schedule.evaluate(std::clamp(t, 0.0, T))).matrix;
  };
}

EffectiveResult propagate_effective(const EffectiveProgram& hamiltonian, const Eigen::VectorXcd& psi0,
                                    double t_begin, double t_end, const IntegratorConfig& cfg,
                                    const std::vector<double>& breakpoints) {
  require_duration(t_begin, t_end);
  const Eigen::Index m = psi0.size();
  Eigen::VectorXcd psi = psi0;
  EffectiveResult out;
  auto record = [&](double t) {
    if (cfg.record_stride <= 0) return;
    TrajectorySample s{t, psi.squaredNorm(), {}};
    s.amplitudes.assign(psi.data(), psi.data() + m);
    out.trajectory.push_back(std::move(s));
  };
  record(t_begin);
  const double h_max = cfg.step_for(t_end - t_begin);
  Eigen::VectorXcd k1(m), k2(m), k3(m), k4(m);
  for (const Segment& seg : make_segments(t_begin, t_end, breakpoints, h_max)) {
    const double step = (seg.end - seg.begin) / static_cast<double>(seg.steps);
    for (std::int64_t s = 0; s < seg.steps; ++s) {
      const double t = seg.begin + static_cast<double>(s) * step;
      const double t_next = s + 1 == seg.steps ? seg.end : t + step;
      const Eigen::MatrixXcd h0 = hamiltonian(t);
      const Eigen::MatrixXcd hm = hamiltonian(t + 0.5 * step);
      const Eigen::MatrixXcd h1 = hamiltonian(t_next);
      k1 = kMinusI * (h0 * psi);
      k2 = kMinusI * (hm * (psi + (0.5 * step) * k1));
      k3 = kMinusI * (hm * (psi + (0.5 * step) * k2));
      k4 = kMinusI * (h1 * (psi + step * k3));
      psi += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!psi.allFinite()) diverged(out.steps + s + 1, t_next);
      const std::int64_t global = out.steps + s + 1;
      if (cfg.record_stride > 0 && (global % cfg.record_stride == 0 || s + 1 == seg.steps)) {
        record(t_next);
      }
    }
    out.steps += seg.steps;
  }
  out.final_state = std::move(psi);
  out.p0 = out.final_state.squaredNorm();
  return out;
}

EffectiveResult propagate_effective(const Eigen::MatrixXcd& hamiltonian, const Eigen::VectorXcd& psi0,
                                    double duration, const IntegratorConfig& cfg) {
  require_duration(0.0, duration);
  if (!cfg.use_constant_power || cfg.record_stride > 0) {
    return propagate_effective([&hamiltonian](double) { return hamiltonian; }, psi0, 0.0, duration, cfg);
  }
  EffectiveResult out;
  Eigen::VectorXcd psi = psi0;
  for (const Segment& seg : make_segments(0.0, duration, {}, cfg.step_for(duration))) {
    const double step = (seg.end - seg.begin) / static_cast<double>(seg.steps);
    psi = apply_power(rk4_step_matrix(hamiltonian, step), seg.steps, psi);
    if (!psi.allFinite()) diverged(seg.steps, seg.end);
    out.steps += seg.steps;
  }
  out.final_state = std::move(psi);
  out.p0 = out.final_state.squaredNorm();
  return out;
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectorySample>& trajectory,
                          const std::vector<std::string>& labels) {
  out << "t,norm2";
  for (const std::string& l : labels) out << ",\"" << l << "_re\",\"" << l << "_im\"";
  out << '\n';
  char buf[64];
  for (const TrajectorySample& s : trajectory) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", s.t, s.norm2);
    out << buf;
    for (const Complex& a : s.amplitudes) {
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g", a.real(), a.imag());
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace cavgate
