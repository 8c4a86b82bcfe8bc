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

// Command-line front end; talks to the simulator only through the C API.

#include "cavgate/cavgate.h"

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace {

int exit_code(cg_status status) {
  switch (status) {
    case CG_OK: return 0;
    case CG_ERR_CONFIG:
    case CG_ERR_ARGUMENT:
    case CG_ERR_IO: return 1;
    default: return 2;
  }
}

struct SessionDeleter {
  void operator()(cg_session* s) const { cg_session_destroy(s); }
};

int report(cg_session* s, cg_status status) {
  if (status != CG_OK) {
    std::fprintf(stderr, "error: %s: %s\n", cg_status_string(status), cg_session_last_error(s));
  } else {
    std::fputs(cg_session_output(s), stdout);
  }
  return exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-atom cavity phase-gate simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  int threads = 1;
  int n_max = 2;
  double step = 0.0;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "Configuration file (name = value lines)");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--nmax", n_max, "Photon-number cutoff")->check(CLI::PositiveNumber);
  app.add_option("--step", step, "RK4 step in 1/g (<= 0: default)");
  app.add_option("--set", overrides, "Extra config entry name=value (repeatable)");
  app.set_version_flag("--version", std::string(cg_version()));

  CLI::App* evolve = app.add_subcommand("evolve", "Single trajectory from a config");
  CLI::App* prep = app.add_subcommand("prep", "E-Raman or E-STIRAP state preparation; prints F and P0");
  CLI::App* gate = app.add_subcommand("gate", "Run a controlled-phase gate protocol");
  CLI::App* sweep = app.add_subcommand("sweep", "Two-axis parameter sweep to CSV");
  CLI::App* figure = app.add_subcommand("figure", "Reproduce a figure grid");
  std::string fig_id;
  int resolution = 0;
  figure->add_option("fig_id", fig_id, "fig3, fig4, fig5, fig6a, fig6b, fig8a or fig8b")->required();
  figure->add_option("--resolution", resolution, "Grid points per axis (default per figure)");
  std::string sweep_csv;
  sweep->add_option("--csv", sweep_csv, "Output CSV path (default <out>/sweep.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  cg_session* raw = nullptr;
  if (cg_session_create(&raw) != CG_OK) {
    std::fputs("error: cannot create session\n", stderr);
    return 2;
  }
  std::unique_ptr<cg_session, SessionDeleter> session(raw);
  cg_session* s = session.get();

  cg_status st = CG_OK;
  if (!config_path.empty()) st = cg_session_load_config(s, config_path.c_str());
  for (const std::string& kv : overrides) {
    if (st != CG_OK) break;
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects name=value, got '%s'\n", kv.c_str());
      return 1;
    }
    st = cg_session_set(s, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
  }
  if (st == CG_OK) st = cg_session_set_threads(s, threads);
  if (st == CG_OK) st = cg_session_set_nmax(s, n_max);
  if (st == CG_OK) st = cg_session_set_step(s, step);
  if (st == CG_OK) st = cg_session_set_output_dir(s, out_dir.c_str());
  if (st == CG_OK) st = cg_session_set_resolution(s, resolution);
  if (st != CG_OK) return report(s, st);

  if (*evolve) return report(s, cg_run_evolve(s));
  if (*prep) return report(s, cg_run_prep(s, nullptr, nullptr));
  if (*gate) {
    cg_gate_report* r = nullptr;
    st = cg_run_gate(s, &r);
    if (st == CG_OK) {
      std::fputs(cg_gate_report_text(r), stdout);
      cg_gate_report_destroy(r);
      return 0;
    }
    return report(s, st);
  }
  if (*sweep) return report(s, cg_run_sweep(s, sweep_csv.empty() ? nullptr : sweep_csv.c_str()));
  if (*figure) return report(s, cg_run_figure(s, fig_id.c_str()));
  return 1;
}
