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
#include "cavgate/harness.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iterator>
#include <fstream>
#include <sstream>

using namespace cavgate;

namespace {

Config parse(const std::string& text) {
  std::istringstream in(text);
  return Config::parse(in, "test");
}

std::string csv_of(const SweepResult& r) {
  std::ostringstream out;
  write_sweep_csv(out, r);
  return out.str();
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Precondition;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("cavgate_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing") {
  const Config c = parse("# comment\nomega1 = 0.01  # trailing\n\n  Delta=1.357\nlabel = 1,1,0\n");
  CHECK(c.get_double("omega1", 0) == 0.01);
  CHECK(c.get_double("Delta", 0) == 1.357);
  CHECK(c.get_string("label", "") == "1,1,0");
  CHECK(c.get_double("missing", 4.0) == 4.0);
  CHECK(kind_of([] { parse("just words\n"); }) == ErrorKind::Config);
  CHECK(kind_of([] { parse("a = 1\na = 2\n"); }) == ErrorKind::Config);
  CHECK(kind_of([] { parse("bad key = 1\n"); }) == ErrorKind::Config);
  CHECK(kind_of([&] { (void)c.get_double("label", 0); }) == ErrorKind::Config);
  CHECK(kind_of([&] { (void)c.get_int("omega1", 0); }) == ErrorKind::Config);
  CHECK(kind_of([] { (void)Config::load("/nonexistent/cavgate.cfg"); }) == ErrorKind::Io);
  try {
    c.reject_unknown({"omega1", "Delta"}, "prep");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("'label'") != std::string::npos);
  }
}

TEST_CASE("preparation experiments at the reference points") {
  const RunSettings s;
  const PrepResult raman = raman_prep(SystemParams{1, 0.1, 0.1, 1.357, 0}, 0.01, 0.01, s);
  CHECK(raman.fidelity == doctest::Approx(0.993).epsilon(0.005));
  CHECK(raman.p0 == doctest::Approx(0.857).epsilon(0.02));
  const TrivialResult triv = trivial_evolution(SystemParams{1, 0.1, 0.1, 1.0, 0}, 0.01, 2000, 50, s);
  CHECK(triv.fidelity > 1 - 1e-4);
  CHECK(triv.p0 < 1.0);
}

TEST_CASE("prep and gate from config reject unknown fields") {
  const RunSettings s;
  CHECK(kind_of([&] { (void)run_prep(parse("protocol = eraman\nomega_1 = 0.01\n"), s); }) == ErrorKind::Config);
  CHECK(kind_of([&] { (void)run_prep(parse("protocol = magic\n"), s); }) == ErrorKind::Config);
  CHECK(kind_of([&] { (void)run_prep(parse("protocol = stirap\nreadout = middle\n"), s); }) == ErrorKind::Config);
  CHECK(kind_of([&] { (void)gate_protocol_from_config(parse("kind = eraman\npeak = 1\n")); }) == ErrorKind::Config);
  CHECK(kind_of([&] { (void)run_evolve(parse("pulse = square\nT = 1\n"), s); }) == ErrorKind::Config);
  const GateProtocol g = gate_protocol_from_config(parse("kind = one_laser\nomega1 = 0.02\nripple_amplitude = 0.1\n"));
  CHECK(g.kind == GateKind::OneLaserCP);
  CHECK(static_cast<bool>(g.omega1_modulation));
}

TEST_CASE("evolve writes the final state and trajectory") {
  RunSettings s;
  s.out_dir = scratch("evolve").string();
  const EvolveOutput out = run_evolve(parse("pulse = constant\nomega1 = 0.05\nomega_sigma = 0.05\nT = 100\n"
                                            "kappa = 0.1\ngamma = 0.1\nDelta = 1\nrecord = 1,1,0; s,1,0\n"
                                            "record_stride = 100\ndecay_window = auto\n"),
                                      s);
  REQUIRE(out.files.size() == 2);
  std::ifstream traj(out.files[1]);
  std::string header;
  std::getline(traj, header);
  CHECK(header == "t,norm2,\"1,1,0_re\",\"1,1,0_im\",\"s,1,0_re\",\"s,1,0_im\"");
  CHECK(out.result.trajectory.back().t == doctest::Approx(150.0));
  for (std::size_t k = 1; k < out.result.trajectory.size(); ++k) {
    CHECK(out.result.trajectory[k].t > out.result.trajectory[k - 1].t);
    CHECK(out.result.trajectory[k].norm2 <= out.result.trajectory[k - 1].norm2 + 1e-15);
  }
}

TEST_CASE("sweep spec validation names the offending field") {
  const char* base = "experiment = raman_prep_P0\naxis1 = omega1\naxis1_min = 0.01\naxis1_max = 0.02\n"
                     "axis1_count = 2\naxis2_min = 1\naxis2_max = 2\naxis2_count = 2\n";
  try {
    (void)sweep_from_config(parse(std::string(base) + "axis2 = Detuning\n"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    CHECK(std::string(e.what()).find("Detuning") != std::string::npos);
  }
  CHECK(kind_of([&] { (void)sweep_from_config(parse(std::string(base) + "axis2 = Delta\nkapa = 0.2\n")); }) ==
        ErrorKind::Config);
  CHECK(kind_of([&] { (void)sweep_from_config(parse("experiment = fig9\n")); }) == ErrorKind::Config);
  const SweepSpec ok = sweep_from_config(parse(std::string(base) + "axis2 = Delta\nkappa = 0.2\n"));
  CHECK(ok.fixed.at("kappa") == 0.2);
}

TEST_CASE("sweeps are deterministic and thread-count independent") {
  SweepSpec spec;
  spec.experiment = "fig3_P0";
  spec.axis1 = {"omega1", 0.005, 0.03, 3};
  spec.axis2 = {"Delta", 0.0, 2.0, 3};
  RunSettings one;
  RunSettings many;
  many.threads = 4;
  const std::string a = csv_of(run_sweep(spec, one));
  CHECK(a == csv_of(run_sweep(spec, one)));
  CHECK(a == csv_of(run_sweep(spec, many)));
  CHECK(a.find("axis1,axis2,value\n") != std::string::npos);
  CHECK(a.find("# experiment = fig3_P0\n") != std::string::npos);
}

TEST_CASE("failing points become NaN without aborting the sweep") {
  SweepSpec spec;
  spec.experiment = "raman_prep_F";
  spec.axis1 = {"omega1", 0.01, 0.02, 2};
  spec.axis2 = {"Delta", 0.0, 1.0, 2};
  const SweepResult r = run_sweep(spec, RunSettings{});
  REQUIRE(r.values.size() == 4);
  CHECK(std::isnan(r.values[0]));
  CHECK(std::isnan(r.values[2]));
  CHECK(r.values[1] > 0.9);
  CHECK(r.failures.size() == 2);
  CHECK(csv_of(r).find("# failures = 2\n") != std::string::npos);
  CHECK(csv_of(r).find(",nan\n") != std::string::npos);
}

TEST_CASE("Raman preparation trends in the detuning") {
  SweepSpec spec;
  spec.experiment = "raman_prep_P0";
  spec.axis1 = {"omega1", 0.01, 0.02, 2};
  spec.axis2 = {"Delta", 0.3, 3.0, 10};
  const SweepResult p0 = run_sweep(spec, RunSettings{});
  // P0 climbs with Delta until the longer pulse starts to cost more than the weaker excitation saves.
  for (int k = 1; k < 8; ++k) CHECK(p0.values[k] > p0.values[k - 1]);
  CHECK(p0.values[9] < p0.values[8]);
  spec.experiment = "raman_prep_F";
  const SweepResult f = run_sweep(spec, RunSettings{});
  int best = 0;
  for (int k = 1; k < 10; ++k) {
    if (f.values[k] > f.values[best]) best = k;
  }
  CHECK(best > 0);
  CHECK(best < 9);
}

TEST_CASE("Trivial evolution success rate falls with Omega1") {
  SweepSpec spec;
  spec.experiment = "fig3_P0";
  spec.axis1 = {"omega1", 0.005, 0.05, 4};
  spec.axis2 = {"Delta", 0.0, 2.0, 2};
  const SweepResult r = run_sweep(spec, RunSettings{});
  for (int k = 1; k < 4; ++k) CHECK(r.values[2 * k] < r.values[2 * (k - 1)]);
}

TEST_CASE("figures write csv and a plot description") {
  RunSettings s;
  s.out_dir = scratch("figure").string();
  const FigureOutput out = reproduce_figure("fig8a", 5, s);
  CHECK(std::filesystem::exists(out.csv_path));
  std::ifstream gp(out.script_path);
  const std::string script((std::istreambuf_iterator<char>(gp)), std::istreambuf_iterator<char>());
  CHECK(script.find("splot 'fig8a.csv'") != std::string::npos);
  CHECK(script.find("set contour") != std::string::npos);
  std::ifstream js(out.plot_path);
  const nlohmann::json plot = nlohmann::json::parse(js);
  CHECK(plot["data"] == "fig8a.csv");
  CHECK(plot["x"]["parameter"] == "slope");
  CHECK(plot["y"]["count"] == 5);
  CHECK(out.result.failures.empty());
  CHECK(figure_spec("fig8b", 0).axis1.count == 41);
  CHECK(figure_spec("fig4", 0).axis1.count == 21);
  CHECK(kind_of([&] { (void)reproduce_figure("fig7", 3, s); }) == ErrorKind::UnknownFigure);
  CHECK(figure_ids().size() == 7);
}

TEST_CASE("STIRAP preparation improves as the pulses slow down") {
  SweepSpec spec;
  spec.experiment = "stirap_prep_F";
  spec.axis1 = {"peak", 0.005, 0.005, 1};
  spec.axis2 = {"frequency", 2e-5, 1e-4, 2};
  RunSettings s;
  s.step = 0.1;
  const double slow = evaluate_experiment(spec, 0.005, 2e-5, s);
  const double fast = evaluate_experiment(spec, 0.005, 1e-4, s);
  CHECK(slow > fast);
  CHECK(slow > 0.95);
}
