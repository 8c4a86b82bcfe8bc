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

#include "cavgate/cavgate.h"

#include "cavgate/errors.hpp"
#include "cavgate/gates.hpp"
#include "cavgate/harness.hpp"

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

struct cg_session {
  cavgate::Config config;
  cavgate::RunSettings settings;
  int resolution = 0;
  std::string last_error;
  std::string output;
};

struct cg_gate_report {
  cavgate::GateReport report;
  std::string text;
};

namespace {

cg_status status_for(cavgate::ErrorKind kind) {
  using cavgate::ErrorKind;
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::UnknownFigure:
      return CG_ERR_CONFIG;
    case ErrorKind::Io:
      return CG_ERR_IO;
    default:
      return CG_ERR_NUMERIC;
  }
}

// Runs fn, translating exceptions into a status and the session error text.
template <class Fn>
cg_status guarded(cg_session* s, Fn&& fn) {
  if (s == nullptr) return CG_ERR_ARGUMENT;
  s->last_error.clear();
  try {
    fn();
    return CG_OK;
  } catch (const cavgate::Error& e) {
    s->last_error = e.what();
    return status_for(e.kind());
  } catch (const std::bad_alloc&) {
    s->last_error = "out of memory";
    return CG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return CG_ERR_INTERNAL;
  }
}

cg_status argument_error(cg_session* s, const char* message) {
  s->last_error = message;
  return CG_ERR_ARGUMENT;
}

}  // namespace

extern "C" {

const char* cg_version(void) { return cavgate::kVersion; }

const char* cg_status_string(cg_status status) {
  switch (status) {
    case CG_OK: return "ok";
    case CG_ERR_CONFIG: return "configuration error";
    case CG_ERR_NUMERIC: return "numerical failure";
    case CG_ERR_ARGUMENT: return "invalid argument";
    case CG_ERR_IO: return "i/o error";
    case CG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

cg_status cg_session_create(cg_session** out) {
  if (out == nullptr) return CG_ERR_ARGUMENT;
  *out = new (std::nothrow) cg_session();
  return *out == nullptr ? CG_ERR_INTERNAL : CG_OK;
}

void cg_session_destroy(cg_session* session) { delete session; }

const char* cg_session_last_error(const cg_session* session) {
  return session == nullptr ? "null session" : session->last_error.c_str();
}

const char* cg_session_output(const cg_session* session) {
  return session == nullptr ? "" : session->output.c_str();
}

cg_status cg_session_load_config(cg_session* s, const char* path) {
  return guarded(s, [&] {
    if (path == nullptr) throw cavgate::Error(cavgate::ErrorKind::Io, "null config path");
    cavgate::Config loaded = cavgate::Config::load(path);
    for (const auto& [k, v] : loaded.values()) s->config.set(k, v);
  });
}

cg_status cg_session_set(cg_session* s, const char* key, const char* value) {
  if (s != nullptr && (key == nullptr || value == nullptr)) return argument_error(s, "null key or value");
  return guarded(s, [&] { s->config.set(key, value); });
}

cg_status cg_session_clear(cg_session* s) {
  return guarded(s, [&] { s->config = cavgate::Config{}; });
}

cg_status cg_session_set_threads(cg_session* s, int threads) {
  if (s == nullptr) return CG_ERR_ARGUMENT;
  if (threads < 1) return argument_error(s, "threads must be at least 1");
  s->settings.threads = threads;
  return CG_OK;
}

cg_status cg_session_set_nmax(cg_session* s, int n_max) {
  if (s == nullptr) return CG_ERR_ARGUMENT;
  if (n_max < 1) return argument_error(s, "nmax must be at least 1");
  s->settings.n_max = n_max;
  return CG_OK;
}

cg_status cg_session_set_step(cg_session* s, double step) {
  if (s == nullptr) return CG_ERR_ARGUMENT;
  if (!(step == step)) return argument_error(s, "step must be a number");
  s->settings.step = step;
  return CG_OK;
}

cg_status cg_session_set_output_dir(cg_session* s, const char* dir) {
  if (s == nullptr) return CG_ERR_ARGUMENT;
  s->settings.out_dir = dir == nullptr ? "" : dir;
  return CG_OK;
}

cg_status cg_session_set_resolution(cg_session* s, int resolution) {
  if (s == nullptr) return CG_ERR_ARGUMENT;
  s->resolution = resolution;
  return CG_OK;
}

cg_status cg_run_evolve(cg_session* s) {
  return guarded(s, [&] {
    const cavgate::EvolveOutput r = cavgate::run_evolve(s->config, s->settings);
    char buf[256];
    std::snprintf(buf, sizeof buf, "P0 = %.17g\nsteps = %lld\nsamples = %zu\n", r.result.p0,
                  static_cast<long long>(r.result.steps), r.result.trajectory.size());
    s->output = buf;
    for (const std::string& f : r.files) s->output += "wrote " + f + "\n";
  });
}

cg_status cg_run_prep(cg_session* s, double* fidelity, double* p0) {
  return guarded(s, [&] {
    const cavgate::PrepResult r = cavgate::run_prep(s->config, s->settings);
    std::ostringstream out;
    cavgate::write_prep(out, r);
    s->output = out.str();
    if (fidelity != nullptr) *fidelity = r.fidelity;
    if (p0 != nullptr) *p0 = r.p0;
  });
}

cg_status cg_run_gate(cg_session* s, cg_gate_report** report) {
  if (report != nullptr) *report = nullptr;
  return guarded(s, [&] {
    auto handle = std::make_unique<cg_gate_report>();
    handle->report = cavgate::run_gate(s->config, s->settings);
    std::ostringstream out;
    cavgate::write_report(out, handle->report);
    handle->text = out.str();
    s->output = handle->text;
    if (report != nullptr) *report = handle.release();
  });
}

cg_status cg_run_sweep(cg_session* s, const char* csv_path) {
  return guarded(s, [&] {
    const cavgate::SweepSpec spec = cavgate::sweep_from_config(s->config);
    const cavgate::SweepResult r = cavgate::run_sweep(spec, s->settings);
    std::filesystem::path path;
    if (csv_path != nullptr && *csv_path != '\0') {
      path = csv_path;
    } else {
      path = std::filesystem::path(s->settings.out_dir.empty() ? "." : s->settings.out_dir) / "sweep.csv";
    }
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw cavgate::Error(cavgate::ErrorKind::Io, "cannot write '" + path.string() + "'");
    cavgate::write_sweep_csv(out, r);
    s->output = "wrote " + path.string() + " (" + std::to_string(r.values.size()) + " points, " +
                std::to_string(r.failures.size()) + " failed)\n";
  });
}

cg_status cg_run_figure(cg_session* s, const char* fig_id) {
  if (s != nullptr && fig_id == nullptr) return argument_error(s, "null figure id");
  return guarded(s, [&] {
    const cavgate::FigureOutput r = cavgate::reproduce_figure(fig_id, s->resolution, s->settings);
    s->output = "wrote " + r.csv_path + "\nwrote " + r.plot_path + "\nwrote " + r.script_path + "\n";
    if (!r.result.failures.empty()) {
      s->output += std::to_string(r.result.failures.size()) + " grid points failed (NaN)\n";
    }
  });
}

void cg_gate_report_destroy(cg_gate_report* report) { delete report; }

const char* cg_gate_report_text(const cg_gate_report* report) {
  return report == nullptr ? "" : report->text.c_str();
}

cg_status cg_gate_report_phase(const cg_gate_report* report, double* extracted, double* target) {
  if (report == nullptr) return CG_ERR_ARGUMENT;
  if (extracted != nullptr) *extracted = report->report.extracted_phi;
  if (target != nullptr) *target = report->report.target_phase;
  return CG_OK;
}

cg_status cg_gate_report_fidelity(const cg_gate_report* report, int renormalized, double* vs_extracted,
                                  double* vs_target) {
  if (report == nullptr) return CG_ERR_ARGUMENT;
  const cavgate::GateReport& r = report->report;
  if (vs_extracted != nullptr) {
    *vs_extracted = renormalized ? r.fidelity_extracted_renormalized : r.fidelity_extracted;
  }
  if (vs_target != nullptr) *vs_target = renormalized ? r.fidelity_target_renormalized : r.fidelity_target;
  return CG_OK;
}

cg_status cg_gate_report_branch(const cg_gate_report* report, int branch, double* re, double* im, double* p0,
                                double* leakage) {
  if (report == nullptr || branch < 0 || branch > 3) return CG_ERR_ARGUMENT;
  const cavgate::BranchResult& b = report->report.branches[static_cast<std::size_t>(branch)];
  if (re != nullptr) *re = b.amplitude.real();
  if (im != nullptr) *im = b.amplitude.imag();
  if (p0 != nullptr) *p0 = b.p0;
  if (leakage != nullptr) *leakage = b.leakage;
  return CG_OK;
}

int cg_gate_report_warning_count(const cg_gate_report* report) {
  return report == nullptr ? 0 : static_cast<int>(report->report.warnings.size());
}

const char* cg_gate_report_warning(const cg_gate_report* report, int index) {
  if (report == nullptr || index < 0 || index >= cg_gate_report_warning_count(report)) return nullptr;
  return report->report.warnings[static_cast<std::size_t>(index)].c_str();
}

}  // extern "C"
