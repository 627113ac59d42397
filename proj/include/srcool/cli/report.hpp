// Copyright 2026 The srcool Authors
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

#ifndef SRCOOL_CLI_REPORT_HPP
#define SRCOOL_CLI_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "srcool/analysis.hpp"

namespace srcool::cli {

inline constexpr const char* tool_version = SRCOOL_VERSION;
inline constexpr int csv_schema_version = 1;

/// Writes to a sibling temporary file and renames it into place, so readers
/// never see a partial file.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, path);
}

/// Fixed-format scientific number for tables.
inline std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

/// Comma-separated table with a schema comment line.
class CsvTable {
 public:
  CsvTable(std::string kind, std::vector<std::string> columns) : kind_(std::move(kind)), columns_(std::move(columns)) {}

  void add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size()) throw std::logic_error("row width does not match the header");
    rows_.push_back(std::move(cells));
  }

  std::string str() const {
    std::string out = "# srcool " + kind_ + " schema v" + std::to_string(csv_schema_version) + "\n";
    for (std::size_t k = 0; k < columns_.size(); ++k) out += (k ? "," : "") + columns_[k];
    out += "\n";
    for (const auto& r : rows_) {
      for (std::size_t k = 0; k < r.size(); ++k) out += (k ? "," : "") + r[k];
      out += "\n";
    }
    return out;
  }

 private:
  std::string kind_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

inline const std::vector<std::string>& trajectory_columns() {
  static const std::vector<std::string> cols = {"t_us",          "pop_psi0",      "pop_psif", "pop_perp",
                                                "pop_reservoir", "pop_1P1_total", "pop_1D2_total", "pop_6s"};
  return cols;
}

inline std::string trajectory_csv(const Trajectory& tr) {
  CsvTable t("trajectory", trajectory_columns());
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    std::vector<std::string> row{sci(tr.times[k])};
    for (std::size_t c = 1; c < trajectory_columns().size(); ++c) row.push_back(sci(tr.series(trajectory_columns()[c])[k]));
    t.add_row(std::move(row));
  }
  return t.str();
}

// ---------------------------------------------------------------------------
// SVG line plots

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  double floor = 1e-12;  // smallest plotted value on a log axis
};

inline std::string svg_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '&': o += "&amp;"; break;
      case '"': o += "&quot;"; break;
      default: o += c;
    }
  }
  return o;
}

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string svg_plot(const std::vector<PlotSeries>& series, const PlotSpec& spec) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};
  const double W = 720, H = 440, left = 80, right = 190, top = 40, bottom = 60;
  const double pw = W - left - right, ph = H - top - bottom;
  auto ty = [&](double y) { return spec.log_y ? std::log10(std::max(y, spec.floor)) : y; };

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      x0 = std::min(x0, s.x[k]);
      x1 = std::max(x1, s.x[k]);
      y0 = std::min(y0, ty(s.y[k]));
      y1 = std::max(y1, ty(s.y[k]));
    }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (spec.log_y) {
    y0 = std::floor(y0);
    y1 = std::ceil(y1);
  }
  if (!(y1 > y0)) y1 = y0 + 1.0;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + (1.0 - (ty(y) - y0) / (y1 - y0)) * ph; };
  auto py_raw = [&](double yt) { return top + (1.0 - (yt - y0) / (y1 - y0)) * ph; };

  std::string o = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_num(W) + "\" height=\"" + svg_num(H) +
                  "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o += "<text x=\"" + svg_num(left + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
       svg_escape(spec.title) + "</text>\n";
  o += "<rect x=\"" + svg_num(left) + "\" y=\"" + svg_num(top) + "\" width=\"" + svg_num(pw) + "\" height=\"" +
       svg_num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 5; ++k) {
    const double xv = x0 + (x1 - x0) * k / 5.0;
    char lab[32];
    std::snprintf(lab, sizeof lab, "%g", xv);
    o += "<text x=\"" + svg_num(px(xv)) + "\" y=\"" + svg_num(top + ph + 18) + "\" text-anchor=\"middle\">" + lab +
         "</text>\n";
  }
  const int nyt = spec.log_y ? static_cast<int>(y1 - y0) : 5;
  for (int k = 0; k <= nyt; ++k) {
    const double yt = y0 + (y1 - y0) * k / std::max(nyt, 1);
    char lab[32];
    if (spec.log_y)
      std::snprintf(lab, sizeof lab, "1e%d", static_cast<int>(std::lround(yt)));
    else
      std::snprintf(lab, sizeof lab, "%g", yt);
    o += "<line x1=\"" + svg_num(left) + "\" x2=\"" + svg_num(left + pw) + "\" y1=\"" + svg_num(py_raw(yt)) +
         "\" y2=\"" + svg_num(py_raw(yt)) + "\" stroke=\"#ddd\"/>\n";
    o += "<text x=\"" + svg_num(left - 6) + "\" y=\"" + svg_num(py_raw(yt) + 4) + "\" text-anchor=\"end\">" + lab +
         "</text>\n";
  }
  o += "<text x=\"" + svg_num(left + pw / 2) + "\" y=\"" + svg_num(H - 15) + "\" text-anchor=\"middle\">" +
       svg_escape(spec.x_label) + "</text>\n";
  o += "<text transform=\"translate(18," + svg_num(top + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
       svg_escape(spec.y_label) + "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = palette[s % (sizeof palette / sizeof *palette)];
    std::string pts;
    for (std::size_t k = 0; k < series[s].x.size(); ++k)
      pts += (k ? " " : "") + svg_num(px(series[s].x[k])) + "," + svg_num(py(series[s].y[k]));
    o += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts +
         "\"/>\n";
    const double ly = top + 14 + 18.0 * static_cast<double>(s);
    o += "<line x1=\"" + svg_num(left + pw + 12) + "\" x2=\"" + svg_num(left + pw + 36) + "\" y1=\"" + svg_num(ly) +
         "\" y2=\"" + svg_num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    o += "<text x=\"" + svg_num(left + pw + 42) + "\" y=\"" + svg_num(ly + 4) + "\">" + svg_escape(series[s].name) +
         "</text>\n";
  }
  o += "</svg>\n";
  return o;
}

/// Two-panel cooling plot: linear populations and their log10.
inline std::pair<std::string, std::string> cooling_svgs(const Trajectory& tr) {
  std::vector<PlotSeries> s;
  for (const char* n : {kObsPsi0, kObsPsiF, kObsPerp, kObsReservoir, kObsP1, kObsD2, kObs6s})
    s.push_back({n, tr.times, tr.series(n)});
  PlotSpec lin{"Cooling populations", "t (us)", "population", false};
  PlotSpec log{"Cooling populations (log10)", "t (us)", "population", true};
  return {svg_plot(s, lin), svg_plot(s, log)};
}

}  // namespace srcool::cli

#endif  // SRCOOL_CLI_REPORT_HPP
