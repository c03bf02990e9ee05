// Copyright 2026 The ldpmarl Authors.
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

#include "ldpmarl/plot.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "ldpmarl/csv.h"

namespace ldpmarl {
namespace fs = std::filesystem;
namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kLeft = 70;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 55;

constexpr std::array<const char*, 8> kColors = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Num(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void Add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void Finish() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

void Frame(std::ostringstream& svg, const std::string& title,
           const std::string& x_label, const std::string& y_label) {
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << (kLeft + (kWidth - kLeft - kRight) / 2) << "\" y=\"22\""
      << " text-anchor=\"middle\" font-size=\"15\">" << Escape(title)
      << "</text>\n"
      << "<text x=\"" << (kLeft + (kWidth - kLeft - kRight) / 2) << "\" y=\""
      << (kHeight - 12) << "\" text-anchor=\"middle\">" << Escape(x_label)
      << "</text>\n"
      << "<text transform=\"translate(18," << (kTop + (kHeight - kTop - kBottom) / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << Escape(y_label)
      << "</text>\n";
}

void Axes(std::ostringstream& svg, const Range& x, const Range& y,
          bool x_ticks) {
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw
      << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fy = kTop + ph - ph * i / 4.0;
    const double vy = y.lo + (y.hi - y.lo) * i / 4.0;
    svg << "<line x1=\"" << kLeft << "\" x2=\"" << (kLeft + pw) << "\" y1=\""
        << fy << "\" y2=\"" << fy << "\" stroke=\"#ddd\"/>\n"
        << "<text x=\"" << (kLeft - 6) << "\" y=\"" << (fy + 4)
        << "\" text-anchor=\"end\">" << Num(vy) << "</text>\n";
    if (x_ticks) {
      const double fx = kLeft + pw * i / 4.0;
      const double vx = x.lo + (x.hi - x.lo) * i / 4.0;
      svg << "<text x=\"" << fx << "\" y=\"" << (kTop + ph + 18)
          << "\" text-anchor=\"middle\">" << Num(vx) << "</text>\n";
    }
  }
}

void Legend(std::ostringstream& svg, const std::vector<Series>& series) {
  const double x = kWidth - kRight + 14;
  for (size_t i = 0; i < series.size(); ++i) {
    const double y = kTop + 10 + 20.0 * i;
    svg << "<rect x=\"" << x << "\" y=\"" << (y - 9) << "\" width=\"12\" "
        << "height=\"12\" fill=\"" << kColors[i % kColors.size()] << "\"/>\n"
        << "<text x=\"" << (x + 18) << "\" y=\"" << (y + 1) << "\">"
        << Escape(series[i].label) << "</text>\n";
  }
}

void WriteFile(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

std::string LineChartSvg(const std::string& title, const std::string& x_label,
                         const std::string& y_label,
                         const std::vector<Series>& series) {
  Range xr, yr;
  for (const Series& s : series) {
    for (double v : s.x) xr.Add(v);
    for (double v : s.y) yr.Add(v);
  }
  xr.Finish();
  yr.Finish();
  std::ostringstream svg;
  Frame(svg, title, x_label, y_label);
  Axes(svg, xr, yr, true);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  for (size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    const size_t n = std::min(s.x.size(), s.y.size());
    // Long series are thinned to about one point per horizontal pixel.
    const size_t stride = std::max<size_t>(1, n / static_cast<size_t>(pw));
    svg << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\""
        << kColors[i % kColors.size()] << "\" points=\"";
    for (size_t j = 0; j < n; j += stride) {
      if (!std::isfinite(s.y[j])) continue;
      const double px = kLeft + pw * (s.x[j] - xr.lo) / (xr.hi - xr.lo);
      const double py = kTop + ph - ph * (s.y[j] - yr.lo) / (yr.hi - yr.lo);
      svg << Num(px) << ',' << Num(py) << ' ';
    }
    svg << "\"/>\n";
  }
  Legend(svg, series);
  svg << "</svg>\n";
  return svg.str();
}

std::string BarChartSvg(const std::string& title, const std::string& x_label,
                        const std::string& y_label,
                        const std::vector<std::string>& categories,
                        const std::vector<Series>& series) {
  Range yr;
  yr.Add(0.0);
  for (const Series& s : series) {
    for (double v : s.y) yr.Add(v);
  }
  yr.Finish();
  std::ostringstream svg;
  Frame(svg, title, x_label, y_label);
  Axes(svg, Range{}, yr, false);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const double group = categories.empty() ? pw : pw / categories.size();
  const double bar = group * 0.8 / std::max<size_t>(1, series.size());
  for (size_t c = 0; c < categories.size(); ++c) {
    const double gx = kLeft + group * c + group * 0.1;
    svg << "<text x=\"" << (gx + group * 0.4) << "\" y=\"" << (kTop + ph + 18)
        << "\" text-anchor=\"middle\">" << Escape(categories[c]) << "</text>\n";
    for (size_t i = 0; i < series.size(); ++i) {
      const double v = c < series[i].y.size() ? series[i].y[c] : 0.0;
      const double h = ph * (v - yr.lo) / (yr.hi - yr.lo);
      svg << "<rect x=\"" << Num(gx + bar * i) << "\" y=\""
          << Num(kTop + ph - h) << "\" width=\"" << Num(bar) << "\" height=\""
          << Num(h) << "\" fill=\"" << kColors[i % kColors.size()]
          << "\"/>\n";
    }
  }
  Legend(svg, series);
  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::string> RenderPlots(const fs::path& in_dir,
                                     const fs::path& out_dir) {
  std::vector<std::string> written;

  // Per-ratio smoothed curves, ordered by ratio.
  std::map<double, CsvTable> ratios;
  const fs::path summary = in_dir / "summary";
  if (fs::is_directory(summary)) {
    for (const auto& entry : fs::directory_iterator(summary)) {
      const std::string name = entry.path().filename().string();
      if (name.rfind("ratio_", 0) != 0 || entry.path().extension() != ".csv") {
        continue;
      }
      const std::string label = entry.path().stem().string().substr(6);
      ratios[std::stod(label)] = ReadCsv(entry.path().string());
    }
  }
  if (!ratios.empty()) {
    const std::array<std::array<const char*, 3>, 3> curves = {{
        {"steps_mean", "steps.svg", "Average steps to goal"},
        {"reward_mean", "reward.svg", "Average episode reward"},
        {"delta_q_mean", "delta_q.svg", "Mean |Q - Q*|"},
    }};
    for (const auto& [column, file, title] : curves) {
      std::vector<Series> series;
      for (const auto& [ratio, table] : ratios) {
        Series s;
        s.label = FormatDouble(ratio * 100.0) + "% attackers";
        s.x = table.NumericColumn("episode");
        s.y = table.NumericColumn(column);
        series.push_back(std::move(s));
      }
      WriteFile(out_dir / file, LineChartSvg(title, "episode", title, series));
      written.push_back(file);
    }
  }

  const fs::path hist_path = summary / "gamma_hist.csv";
  if (fs::exists(hist_path)) {
    const CsvTable hist = ReadCsv(hist_path.string());
    std::map<double, std::map<int, double>> counts;
    std::map<int, bool> gammas;
    for (const auto& row : hist.rows) {
      const double r = std::stod(row[hist.Column("ratio")]);
      const int g = std::stoi(row[hist.Column("gamma")]);
      counts[r][g] += std::stod(row[hist.Column("count")]);
      gammas[g] = true;
    }
    if (!counts.empty()) {
      std::vector<std::string> categories;
      for (const auto& [g, unused] : gammas) categories.push_back(std::to_string(g));
      std::vector<Series> series;
      for (const auto& [r, by_gamma] : counts) {
        Series s;
        s.label = FormatDouble(r * 100.0) + "% attackers";
        for (const auto& [g, unused] : gammas) {
          auto it = by_gamma.find(g);
          s.y.push_back(it == by_gamma.end() ? 0.0 : it->second);
        }
        series.push_back(std::move(s));
      }
      WriteFile(out_dir / "gamma_hist.svg",
                BarChartSvg("Accepted poisoning degree", "gamma", "count",
                            categories, series));
      written.push_back("gamma_hist.svg");
    }
  }

  const fs::path calib_path = in_dir / "calibration.csv";
  if (fs::exists(calib_path)) {
    const CsvTable calib = ReadCsv(calib_path.string());
    std::map<double, Series> rmse, attack;
    Series nodp{"no DP", {}, {}};
    Series dp_tau{"DP at tau", {}, {}};
    std::map<double, bool> seen_gamma;
    for (const auto& row : calib.rows) {
      const double k = std::stod(row[calib.Column("kappa")]);
      const double g = std::stod(row[calib.Column("gamma")]);
      auto& rs = rmse[k];
      rs.label = "kappa " + FormatDouble(k);
      rs.x.push_back(g);
      rs.y.push_back(std::stod(row[calib.Column("rmse")]));
      auto& as = attack[k];
      as.label = "attack, kappa " + FormatDouble(k);
      as.x.push_back(g);
      as.y.push_back(std::stod(row[calib.Column("outliers_attack")]));
      if (!seen_gamma[g]) {
        seen_gamma[g] = true;
        nodp.x.push_back(g);
        nodp.y.push_back(std::stod(row[calib.Column("outliers_nodp")]));
        dp_tau.x.push_back(g);
        dp_tau.y.push_back(std::stod(row[calib.Column("outliers_dp_tau")]));
      }
    }
    std::vector<Series> rmse_series, outlier_series = {nodp, dp_tau};
    for (auto& [k, s] : rmse) rmse_series.push_back(s);
    for (auto& [k, s] : attack) outlier_series.push_back(s);
    WriteFile(out_dir / "calibration_rmse.svg",
              LineChartSvg("RMSE under attack", "gamma", "RMSE", rmse_series));
    WriteFile(out_dir / "calibration_outliers.svg",
              LineChartSvg("Detected outliers", "gamma", "outliers",
                           outlier_series));
    written.push_back("calibration_rmse.svg");
    written.push_back("calibration_outliers.svg");
  }
  return written;
}

}  // namespace ldpmarl
