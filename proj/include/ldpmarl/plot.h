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

// Static SVG rendering of campaign and calibration CSVs.

#ifndef LDPMARL_PLOT_H_
#define LDPMARL_PLOT_H_

#include <filesystem>
#include <string>
#include <vector>

namespace ldpmarl {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Line chart with linear axes and a legend.
std::string LineChartSvg(const std::string& title, const std::string& x_label,
                         const std::string& y_label,
                         const std::vector<Series>& series);

// Grouped bar chart: one group per category, one bar per series (series y
// values are indexed like `categories`).
std::string BarChartSvg(const std::string& title, const std::string& x_label,
                        const std::string& y_label,
                        const std::vector<std::string>& categories,
                        const std::vector<Series>& series);

// Renders whatever inputs exist under `in_dir`: summary/ratio_*.csv (steps,
// reward and delta_q curves), summary/gamma_hist.csv and calibration.csv.
// Writes into `out_dir` and returns the written file names.
std::vector<std::string> RenderPlots(const std::filesystem::path& in_dir,
                                     const std::filesystem::path& out_dir);

}  // namespace ldpmarl

#endif  // LDPMARL_PLOT_H_
