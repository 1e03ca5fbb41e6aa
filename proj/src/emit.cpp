// Copyright 2026 The rabi-forge Authors
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

#include "rabiforge/emit.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "rabiforge/errors.hpp"

namespace rabiforge {

namespace {

using nlohmann::ordered_json;

constexpr double kTwoPi = 2.0 * 3.141592653589793;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Short form for pixel coordinates and plot labels.
std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

ordered_json metadata_json(const StepMetadata& m) {
  ordered_json j;
  j["accepted_steps"] = m.accepted;
  j["rejected_steps"] = m.rejected;
  j["max_scaled_error"] = m.max_scaled_error;
  j["error_estimate"] = m.error_estimate;
  j["max_norm_drift"] = m.max_norm_drift;
  j["max_hermiticity_drift"] = m.max_hermiticity_drift;
  j["min_eigenvalue"] = m.min_eigenvalue;
  return j;
}

// ---------------------------------------------------------------- SVG bits

struct PlotBox {
  double x0, y0, x1, y1;  // pixel corners, y grows downward
  double u0, u1;          // data range mapped to x0..x1
  double v0, v1;          // data range mapped to y1..y0 (v grows upward)

  double x(double u) const { return x0 + (u - u0) / (u1 - u0) * (x1 - x0); }
  double y(double v) const { return y1 - (v - v0) / (v1 - v0) * (y1 - y0); }
};

void svg_open(std::string& s, int w, int h) {
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
       std::to_string(w) + "\" height=\"" + std::to_string(h) +
       "\" viewBox=\"0 0 " + std::to_string(w) + " " + std::to_string(h) +
       "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void svg_frame(std::string& s, const PlotBox& b) {
  s += "<rect x=\"" + px(b.x0) + "\" y=\"" + px(b.y0) + "\" width=\"" +
       px(b.x1 - b.x0) + "\" height=\"" + px(b.y1 - b.y0) +
       "\" fill=\"none\" stroke=\"#444\"/>\n";
}

void svg_text(std::string& s, double x, double y, const std::string& text,
              const char* anchor = "middle", const char* extra = "") {
  s += "<text x=\"" + px(x) + "\" y=\"" + px(y) + "\" text-anchor=\"" +
       anchor + "\" " + extra + ">" + text + "</text>\n";
}

void svg_x_ticks(std::string& s, const PlotBox& b, int n, double scale,
                 const std::string& label) {
  for (int i = 0; i <= n; ++i) {
    const double u = b.u0 + (b.u1 - b.u0) * i / n;
    const double xx = b.x(u);
    s += "<line x1=\"" + px(xx) + "\" y1=\"" + px(b.y1) + "\" x2=\"" + px(xx) +
         "\" y2=\"" + px(b.y1 + 5) + "\" stroke=\"#444\"/>\n";
    svg_text(s, xx, b.y1 + 18, fmt_short(u * scale));
  }
  svg_text(s, 0.5 * (b.x0 + b.x1), b.y1 + 36, label);
}

void svg_y_ticks(std::string& s, const PlotBox& b, int n, double scale,
                 const std::string& label) {
  for (int i = 0; i <= n; ++i) {
    const double v = b.v0 + (b.v1 - b.v0) * i / n;
    const double yy = b.y(v);
    s += "<line x1=\"" + px(b.x0 - 5) + "\" y1=\"" + px(yy) + "\" x2=\"" +
         px(b.x0) + "\" y2=\"" + px(yy) + "\" stroke=\"#444\"/>\n";
    svg_text(s, b.x0 - 8, yy + 4, fmt_short(v * scale), "end");
  }
  svg_text(s, b.x0 - 52, 0.5 * (b.y0 + b.y1), label, "middle",
           ("transform=\"rotate(-90 " + px(b.x0 - 52) + " " +
            px(0.5 * (b.y0 + b.y1)) + ")\"")
               .c_str());
}

void svg_polyline(std::string& s, const PlotBox& b,
                  const std::vector<double>& u, const std::vector<double>& v,
                  const char* color, double width = 1.5) {
  s += "<polyline fill=\"none\" stroke=\"";
  s += color;
  s += "\" stroke-width=\"" + px(width) + "\" points=\"";
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) s += ' ';
    s += px(b.x(u[i])) + "," + px(b.y(v[i]));
  }
  s += "\"/>\n";
}

// Ten-anchor approximation of the viridis colour map.
std::string viridis(double t) {
  static constexpr unsigned char anchors[10][3] = {
      {0x44, 0x01, 0x54}, {0x48, 0x28, 0x78}, {0x3e, 0x49, 0x89},
      {0x31, 0x68, 0x8e}, {0x26, 0x82, 0x8e}, {0x1f, 0x9e, 0x89},
      {0x35, 0xb7, 0x79}, {0x6e, 0xce, 0x58}, {0xb5, 0xde, 0x2b},
      {0xfd, 0xe7, 0x25}};
  t = std::clamp(t, 0.0, 1.0) * 9.0;
  const int lo = std::min(8, static_cast<int>(t));
  const double w = t - lo;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(
                    anchors[lo][0] + w * (anchors[lo + 1][0] - anchors[lo][0]))),
                static_cast<int>(std::lround(
                    anchors[lo][1] + w * (anchors[lo + 1][1] - anchors[lo][1]))),
                static_cast<int>(std::lround(
                    anchors[lo][2] + w * (anchors[lo + 1][2] - anchors[lo][2]))));
  return buf;
}

}  // namespace

// -------------------------------------------------------------------- CSV

std::string to_csv(const EvolutionResult& r) {
  std::string out = "time_s,sigma_x,sigma_y,sigma_z,pe\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    out += fmt(r.times[i]) + "," + fmt(r.sx[i]) + "," + fmt(r.sy[i]) + "," +
           fmt(r.sz[i]) + "," + fmt(r.pe[i]) + "\n";
  }
  return out;
}

std::string to_csv(const SweepResult& r) {
  std::string out = std::string(sweep_path_name(r.path)) + "_" +
                    sweep_path_units(r.path) + ",time_s," +
                    observable_name(r.observable) + "\n";
  for (std::size_t row = 0; row < r.values.size(); ++row) {
    const std::string v = fmt(r.values[row]);
    for (std::size_t col = 0; col < r.times.size(); ++col) {
      out += v + "," + fmt(r.times[col]) + "," + fmt(r.data[row][col]) + "\n";
    }
  }
  return out;
}

std::string to_csv(const TrajectoryResult& r) {
  std::string out = "time_s,bloch_x,bloch_y,bloch_z\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    out += fmt(r.times[i]) + "," + fmt(r.points[i].x) + "," +
           fmt(r.points[i].y) + "," + fmt(r.points[i].z) + "\n";
  }
  return out;
}

// ------------------------------------------------------------------- JSON

std::string to_json(const EvolutionResult& r) {
  ordered_json j;
  j["kind"] = "evolution";
  j["time_s"] = r.times;
  j["sigma_x"] = r.sx;
  j["sigma_y"] = r.sy;
  j["sigma_z"] = r.sz;
  j["pe"] = r.pe;
  j["metadata"] = metadata_json(r.metadata);
  return j.dump(2) + "\n";
}

std::string to_json(const SweepResult& r) {
  ordered_json j;
  j["kind"] = "sweep";
  j["path"] = sweep_path_name(r.path);
  j["units"] = sweep_path_units(r.path);
  j["observable"] = observable_name(r.observable);
  j["values"] = r.values;
  j["time_s"] = r.times;
  j["data"] = r.data;
  return j.dump(2) + "\n";
}

std::string to_json(const TrajectoryResult& r) {
  ordered_json j;
  j["kind"] = "trajectory";
  j["params"] = ordered_json{{"detuning_rad_per_s", r.params.omega_a_star},
                             {"splitting_rad_per_s", r.params.omega_d_star},
                             {"phase_rad", r.params.phi0_star},
                             {"amplitude1_rad_per_s", r.params.omega1},
                             {"amplitude2_rad_per_s", r.params.omega2}};
  j["time_s"] = r.times;
  ordered_json pts = ordered_json::array();
  for (const auto& p : r.points)
    pts.push_back(ordered_json::array({p.x, p.y, p.z}));
  j["points"] = pts;
  return j.dump(2) + "\n";
}

// -------------------------------------------------------------------- SVG

std::string to_svg_lineplot(const EvolutionResult& r) {
  const int w = 860;
  const int h = 520;
  PlotBox box{70, 40, w - 170.0, h - 60.0, r.times.front(), r.times.back(),
              -1.0, 1.0};

  std::string s;
  svg_open(s, w, h);
  // zero line
  s += "<line x1=\"" + px(box.x0) + "\" y1=\"" + px(box.y(0)) + "\" x2=\"" +
       px(box.x1) + "\" y2=\"" + px(box.y(0)) +
       "\" stroke=\"#ccc\" stroke-dasharray=\"4 3\"/>\n";

  struct Series {
    const std::vector<double>* data;
    const char* color;
    const char* label;
  };
  const Series series[] = {{&r.sx, "#e15759", "sigma_x"},
                           {&r.sy, "#59a14f", "sigma_y"},
                           {&r.sz, "#4e79a7", "sigma_z"},
                           {&r.pe, "#b07aa1", "P_e"}};
  for (const auto& sr : series)
    svg_polyline(s, box, r.times, *sr.data, sr.color);

  svg_frame(s, box);
  svg_x_ticks(s, box, 5, 1.0e6, "time (us)");
  svg_y_ticks(s, box, 4, 1.0, "observable");

  double ly = box.y0 + 10;
  for (const auto& sr : series) {
    s += "<line x1=\"" + px(box.x1 + 14) + "\" y1=\"" + px(ly) + "\" x2=\"" +
         px(box.x1 + 42) + "\" y2=\"" + px(ly) + "\" stroke=\"" + sr.color +
         "\" stroke-width=\"2\"/>\n";
    svg_text(s, box.x1 + 48, ly + 4, sr.label, "start");
    ly += 20;
  }
  s += "</svg>\n";
  return s;
}

std::string to_svg_heatmap(const SweepResult& r) {
  const std::size_t rows = r.values.size();
  const std::size_t cols = r.times.size();
  if (rows < 2 || cols < 2)
    fail(ErrorCode::degenerate_range,
         "heatmap needs at least 2 sweep values and 2 time samples");

  const bool is_pe = r.observable == SweepObservable::pe;
  const double lo = is_pe ? 0.0 : -1.0;
  const double hi = 1.0;

  const int w = 860;
  const int h = 560;
  PlotBox box{90, 40, w - 130.0, h - 60.0, r.times.front(), r.times.back(),
              0.0, static_cast<double>(rows)};

  std::string s;
  svg_open(s, w, h);

  // One rect per run of equally coloured cells; rows are laid out by index
  // with the first sweep value at the bottom.
  const double dw = (box.x1 - box.x0) / static_cast<double>(cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const double y_top = box.y(static_cast<double>(i + 1));
    const double cell_h = box.y(static_cast<double>(i)) - y_top;
    std::size_t run_start = 0;
    std::string run_color =
        viridis((r.data[i][0] - lo) / (hi - lo));
    for (std::size_t jj = 1; jj <= cols; ++jj) {
      std::string color =
          jj < cols ? viridis((r.data[i][jj] - lo) / (hi - lo)) : std::string();
      if (jj == cols || color != run_color) {
        const double x = box.x0 + dw * static_cast<double>(run_start);
        const double width = dw * static_cast<double>(jj - run_start);
        // Overshoot a hair so antialiasing does not leave seams.
        s += "<rect x=\"" + px(x) + "\" y=\"" + px(y_top) + "\" width=\"" +
             px(width + 0.3) + "\" height=\"" + px(cell_h + 0.3) +
             "\" fill=\"" + run_color + "\"/>\n";
        run_start = jj;
        run_color = std::move(color);
      }
    }
  }

  svg_frame(s, box);
  svg_x_ticks(s, box, 5, 1.0e6, "time (us)");

  // Vertical ticks: row index positions labelled with the swept value.
  const bool phase_path = r.path == SweepPath::phase_difference;
  const double vscale = phase_path ? 1.0 : 1.0 / (kTwoPi * 1.0e6);
  const int n_ticks = 4;
  for (int i = 0; i <= n_ticks; ++i) {
    const std::size_t row =
        static_cast<std::size_t>(std::lround(
            static_cast<double>(rows - 1) * i / n_ticks));
    const double yy = box.y(static_cast<double>(row) + 0.5);
    s += "<line x1=\"" + px(box.x0 - 5) + "\" y1=\"" + px(yy) + "\" x2=\"" +
         px(box.x0) + "\" y2=\"" + px(yy) + "\" stroke=\"#444\"/>\n";
    svg_text(s, box.x0 - 8, yy + 4, fmt_short(r.values[row] * vscale), "end");
  }
  const std::string y_label = std::string(sweep_path_name(r.path)) +
                              (phase_path ? " (rad)" : " (2pi MHz)");
  svg_text(s, box.x0 - 62, 0.5 * (box.y0 + box.y1), y_label, "middle",
           ("transform=\"rotate(-90 " + px(box.x0 - 62) + " " +
            px(0.5 * (box.y0 + box.y1)) + ")\"")
               .c_str());

  // Colour bar.
  const double bx = box.x1 + 30;
  const int strips = 64;
  for (int i = 0; i < strips; ++i) {
    const double t0 = static_cast<double>(i) / strips;
    const double y_top = box.y1 - (box.y1 - box.y0) * (i + 1.0) / strips;
    s += "<rect x=\"" + px(bx) + "\" y=\"" + px(y_top) + "\" width=\"18\"" +
         " height=\"" + px((box.y1 - box.y0) / strips + 0.3) + "\" fill=\"" +
         viridis(t0) + "\"/>\n";
  }
  s += "<rect x=\"" + px(bx) + "\" y=\"" + px(box.y0) +
       "\" width=\"18\" height=\"" + px(box.y1 - box.y0) +
       "\" fill=\"none\" stroke=\"#444\"/>\n";
  svg_text(s, bx + 24, box.y1 + 4, fmt_short(lo), "start");
  svg_text(s, bx + 24, box.y0 + 4, fmt_short(hi), "start");
  svg_text(s, bx + 9, box.y0 - 10, observable_name(r.observable));

  s += "</svg>\n";
  return s;
}

std::string to_svg_trajectory(const TrajectoryResult& r) {
  const int w = 900;
  const int h = 480;
  // Left: y-z plane of the Bloch sphere.  Right: z against time.
  PlotBox ball{70, 50, 430, 410, -1.15, 1.15, -1.15, 1.15};
  PlotBox zt{520, 50, w - 40.0, 410, r.times.front(), r.times.back(), -1.0,
             1.0};

  std::vector<double> ys(r.points.size()), zs(r.points.size());
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    ys[i] = r.points[i].y;
    zs[i] = r.points[i].z;
  }

  std::string s;
  svg_open(s, w, h);

  // Unit circle (the sphere's silhouette) and axes through the origin.
  s += "<circle cx=\"" + px(ball.x(0)) + "\" cy=\"" + px(ball.y(0)) +
       "\" r=\"" + px(ball.x(1) - ball.x(0)) +
       "\" fill=\"none\" stroke=\"#bbb\"/>\n";
  s += "<line x1=\"" + px(ball.x(-1.1)) + "\" y1=\"" + px(ball.y(0)) +
       "\" x2=\"" + px(ball.x(1.1)) + "\" y2=\"" + px(ball.y(0)) +
       "\" stroke=\"#ddd\"/>\n";
  s += "<line x1=\"" + px(ball.x(0)) + "\" y1=\"" + px(ball.y(-1.1)) +
       "\" x2=\"" + px(ball.x(0)) + "\" y2=\"" + px(ball.y(1.1)) +
       "\" stroke=\"#ddd\"/>\n";

  svg_polyline(s, ball, ys, zs, "#4e79a7", 1.2);
  // Start and end markers.
  s += "<circle cx=\"" + px(ball.x(ys.front())) + "\" cy=\"" +
       px(ball.y(zs.front())) + "\" r=\"4\" fill=\"#59a14f\"/>\n";
  s += "<circle cx=\"" + px(ball.x(ys.back())) + "\" cy=\"" +
       px(ball.y(zs.back())) + "\" r=\"4\" fill=\"#e15759\"/>\n";

  svg_frame(s, ball);
  svg_x_ticks(s, ball, 4, 1.0, "&lt;sigma_y&gt;");
  svg_y_ticks(s, ball, 4, 1.0, "&lt;sigma_z&gt;");

  svg_polyline(s, zt, r.times, zs, "#4e79a7", 1.2);
  svg_frame(s, zt);
  svg_x_ticks(s, zt, 5, 1.0e6, "time (us)");
  svg_y_ticks(s, zt, 4, 1.0, "&lt;sigma_z&gt;");

  s += "</svg>\n";
  return s;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io_error, "cannot open for writing: " + path);
  out << content;
  if (!out.flush()) fail(ErrorCode::io_error, "write failed: " + path);
}

}  // namespace rabiforge
