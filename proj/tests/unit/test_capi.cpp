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

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Session {
  cg_session* s = nullptr;
  Session() { REQUIRE(cg_session_create(&s) == CG_OK); }
  ~Session() { cg_session_destroy(s); }
};

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(cg_version()) == "1.0.0");
  CHECK(std::string(cg_status_string(CG_ERR_CONFIG)).size() > 0);
  CHECK(std::string(cg_status_string(static_cast<cg_status>(99))) == "unknown status");
}

TEST_CASE("null arguments are rejected") {
  CHECK(cg_session_create(nullptr) == CG_ERR_ARGUMENT);
  CHECK(cg_session_set(nullptr, "a", "1") == CG_ERR_ARGUMENT);
  CHECK(cg_run_prep(nullptr, nullptr, nullptr) == CG_ERR_ARGUMENT);
  cg_session_destroy(nullptr);
  cg_gate_report_destroy(nullptr);
  Session s;
  CHECK(cg_session_set(s.s, nullptr, "1") == CG_ERR_ARGUMENT);
  CHECK(cg_session_set_threads(s.s, 0) == CG_ERR_ARGUMENT);
  CHECK(cg_session_set_nmax(s.s, -1) == CG_ERR_ARGUMENT);
  CHECK(std::string(cg_session_last_error(s.s)).size() > 0);
  CHECK(cg_gate_report_phase(nullptr, nullptr, nullptr) == CG_ERR_ARGUMENT);
}

TEST_CASE("preparation through the C interface") {
  Session s;
  REQUIRE(cg_session_set(s.s, "protocol", "eraman") == CG_OK);
  double f = 0, p0 = 0;
  REQUIRE(cg_run_prep(s.s, &f, &p0) == CG_OK);
  CHECK(f == doctest::Approx(0.993).epsilon(0.005));
  CHECK(p0 == doctest::Approx(0.857).epsilon(0.02));
  CHECK(std::string(cg_session_output(s.s)).find("F = ") != std::string::npos);
  CHECK(std::string(cg_session_last_error(s.s)).empty());
}

TEST_CASE("bad configuration maps to CG_ERR_CONFIG") {
  Session s;
  cg_session_set(s.s, "protocol", "eraman");
  cg_session_set(s.s, "omgea1", "0.01");
  CHECK(cg_run_prep(s.s, nullptr, nullptr) == CG_ERR_CONFIG);
  CHECK(std::string(cg_session_last_error(s.s)).find("omgea1") != std::string::npos);
  CHECK(cg_session_clear(s.s) == CG_OK);
  CHECK(cg_run_figure(s.s, "fig99") == CG_ERR_CONFIG);
  CHECK(cg_session_load_config(s.s, "/nonexistent/x.cfg") == CG_ERR_IO);
}

TEST_CASE("numerical failures map to CG_ERR_NUMERIC") {
  Session s;
  cg_session_set(s.s, "protocol", "eraman");
  cg_session_set(s.s, "Delta", "0");
  CHECK(cg_run_prep(s.s, nullptr, nullptr) == CG_ERR_NUMERIC);
}

TEST_CASE("gate report accessors") {
  Session s;
  cg_session_set(s.s, "kind", "eraman");
  cg_session_set(s.s, "model", "effective");
  cg_gate_report* r = nullptr;
  REQUIRE(cg_run_gate(s.s, &r) == CG_OK);
  REQUIRE(r != nullptr);
  double ext = 0, tgt = 0;
  REQUIRE(cg_gate_report_phase(r, &ext, &tgt) == CG_OK);
  CHECK(std::abs(std::abs(ext) - M_PI) < 1e-6);
  double fe = 0, ft = 0;
  REQUIRE(cg_gate_report_fidelity(r, 1, &fe, &ft) == CG_OK);
  CHECK(fe == doctest::Approx(1.0).epsilon(1e-9));
  double re = 0, im = 0, p0 = 0, leak = 0;
  REQUIRE(cg_gate_report_branch(r, 0, &re, &im, &p0, &leak) == CG_OK);
  CHECK(re == doctest::Approx(1.0));
  CHECK(cg_gate_report_branch(r, 4, &re, &im, &p0, &leak) == CG_ERR_ARGUMENT);
  CHECK(std::string(cg_gate_report_text(r)).find("extracted_phi") != std::string::npos);
  CHECK(cg_gate_report_warning_count(r) == 0);
  CHECK(cg_gate_report_warning(r, 0) == nullptr);
  cg_gate_report_destroy(r);
}

TEST_CASE("sweep writes the requested file") {
  Session s;
  const auto path = std::filesystem::temp_directory_path() / "cavgate_capi_sweep.csv";
  std::filesystem::remove(path);
  cg_session_set(s.s, "experiment", "ramp_phase_linear");
  cg_session_set(s.s, "axis1", "slope");
  cg_session_set(s.s, "axis1_min", "1e-5");
  cg_session_set(s.s, "axis1_max", "1e-4");
  cg_session_set(s.s, "axis1_count", "3");
  cg_session_set(s.s, "axis2", "T");
  cg_session_set(s.s, "axis2_min", "1e4");
  cg_session_set(s.s, "axis2_max", "1e5");
  cg_session_set(s.s, "axis2_count", "3");
  REQUIRE(cg_run_sweep(s.s, path.string().c_str()) == CG_OK);
  std::ifstream in(path);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') ++rows;
  }
  CHECK(rows == 10);
}
