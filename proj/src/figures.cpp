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

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>

namespace cavgate {

namespace {

struct FigureDef {
  std::string id;
  std::string title;
  std::string experiment;
  Axis axis1;
  Axis axis2;
  std::string x_label;
  std::string y_label;
  std::string z_label;
  int default_resolution;
  std::string style;
  double default_step = 0.0;  // used when the caller leaves the step at its default
};

const std::vector<FigureDef>& figures() {
  static const std::vector<FigureDef> defs{
      {"fig3", "Success rate P0(T), initial |01>, T = 2000/g", "fig3_P0", {"omega1", 0.001, 0.05, 21},
       {"Delta", 0.0, 2.0, 21}, "Omega1 / g", "Delta / g", "P0", 21, "surface"},
      {"fig4", "E-Raman preparation fidelity F", "raman_prep_F", {"omega1", 0.002, 0.02, 21},
       {"Delta", 0.2, 3.0, 21}, "Omega1 = Omega_sigma / g", "Delta / g", "F", 21, "surface"},
      {"fig5", "E-Raman preparation success rate P0", "raman_prep_P0", {"omega1", 0.002, 0.02, 21},
       {"Delta", 0.2, 3.0, 21}, "Omega1 = Omega_sigma / g", "Delta / g", "P0", 21, "surface"},
      {"fig6a", "E-STIRAP preparation fidelity F", "stirap_prep_F", {"peak", 0.005, 0.05, 21},
       {"frequency", 2e-5, 2e-4, 21}, "Omega / g", "omega / g", "F", 21, "surface", 0.1},
      {"fig6b", "E-STIRAP preparation success rate P0", "stirap_prep_P0", {"peak", 0.005, 0.05, 21},
       {"frequency", 2e-5, 2e-4, 21}, "Omega / g", "omega / g", "P0", 21, "surface", 0.1},
      {"fig8a", "Linear ramp: geometric phase per unit delta", "ramp_phase_linear", {"slope", 1e-5, 1e-3, 41},
       {"T", 1e4, 1e5, 41}, "alpha * g", "T * g", "phi_g / delta", 41, "contour"},
      {"fig8b", "Sine ramp: geometric phase per unit delta", "ramp_phase_sine", {"x_max", 0.1, 3.0, 41},
       {"frequency", 1e-5, 1e-4, 41}, "x_max", "beta / g", "phi_g / delta", 41, "contour"},
  };
  return defs;
}

const FigureDef& find_figure(const std::string& id) {
  for (const FigureDef& f : figures()) {
    if (f.id == id) return f;
  }
  std::string known;
  for (const FigureDef& f : figures()) known += (known.empty() ? "" : ", ") + f.id;
  throw Error(ErrorKind::UnknownFigure, "unknown figure '" + id + "' (expected " + known + ")");
}

// Run from the output directory: gnuplot <id>.gp renders <id>.png.
void write_gnuplot(std::ostream& out, const FigureDef& f, const SweepSpec& spec) {
  out << "set terminal pngcairo size 900,700\n"
      << "set output '" << f.id << ".png'\n"
      << "set datafile separator ','\n"
      << "set datafile commentschars '#'\n"
      << "set key autotitle columnhead\n"
      << "set title '" << f.title << "'\n"
      << "set xlabel '" << f.x_label << "'\n"
      << "set ylabel '" << f.y_label << "'\n"
      << "set zlabel '" << f.z_label << "'\n"
      << "set dgrid3d " << spec.axis2.count << "," << spec.axis1.count << "\n";
  if (f.style == "contour") {
    out << "set view map\nset contour base\nset cntrparam levels 12\nunset surface\n"
        << "splot '" << f.id << ".csv' using 1:2:3 with lines notitle\n";
  } else {
    out << "set pm3d\nset hidden3d\n"
        << "splot '" << f.id << ".csv' using 1:2:3 with lines notitle\n";
  }
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const FigureDef& f : figures()) v.push_back(f.id);
    return v;
  }();
  return ids;
}

SweepSpec figure_spec(const std::string& fig_id, int resolution) {
  const FigureDef& f = find_figure(fig_id);
  const int n = resolution > 0 ? resolution : f.default_resolution;
  if (n < 2) throw Error(ErrorKind::Config, "figure resolution must be at least 2");
  SweepSpec spec;
  spec.experiment = f.experiment;
  spec.axis1 = f.axis1;
  spec.axis2 = f.axis2;
  spec.axis1.count = n;
  spec.axis2.count = n;
  return spec;
}

FigureOutput reproduce_figure(const std::string& fig_id, int resolution, const RunSettings& settings) {
  const FigureDef& f = find_figure(fig_id);
  const SweepSpec spec = figure_spec(fig_id, resolution);

  const std::filesystem::path dir = settings.out_dir.empty() ? "." : settings.out_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create output directory '" + dir.string() + "'");

  RunSettings run = settings;
  if (run.step <= 0.0) run.step = f.default_step;
  FigureOutput out{(dir / (fig_id + ".csv")).string(), (dir / (fig_id + ".plot.json")).string(),
                   (dir / (fig_id + ".gp")).string(), run_sweep(spec, run)};
  {
    std::ofstream csv(out.csv_path);
    if (!csv) throw Error(ErrorKind::Io, "cannot write '" + out.csv_path + "'");
    write_sweep_csv(csv, out.result);
  }

  nlohmann::ordered_json plot;
  plot["figure"] = f.id;
  plot["title"] = f.title;
  plot["data"] = fig_id + ".csv";
  plot["comment_prefix"] = "#";
  plot["columns"] = {"axis1", "axis2", "value"};
  plot["style"] = f.style;
  plot["x"] = {{"column", "axis1"}, {"parameter", spec.axis1.name}, {"label", f.x_label},
               {"range", {spec.axis1.min, spec.axis1.max}}, {"count", spec.axis1.count}};
  plot["y"] = {{"column", "axis2"}, {"parameter", spec.axis2.name}, {"label", f.y_label},
               {"range", {spec.axis2.min, spec.axis2.max}}, {"count", spec.axis2.count}};
  plot["z"] = {{"column", "value"}, {"label", f.z_label}};
  plot["grid"] = "row-major, axis1 outer";
  plot["units"] = "hbar = g = 1, times in 1/g";
  {
    std::ofstream js(out.plot_path);
    if (!js) throw Error(ErrorKind::Io, "cannot write '" + out.plot_path + "'");
    js << plot.dump(2) << '\n';
  }
  {
    std::ofstream gp(out.script_path);
    if (!gp) throw Error(ErrorKind::Io, "cannot write '" + out.script_path + "'");
    write_gnuplot(gp, f, spec);
  }
  return out;
}

}  // namespace cavgate
