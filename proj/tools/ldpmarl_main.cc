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

// ldpmarl: run campaigns, the outlier calibration experiment, plots and
// replays. Exit status 0 on success, 1 on usage or config errors, 2 when a
// run failed.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ldpmarl/campaign.h"
#include "ldpmarl/config.h"
#include "ldpmarl/csv.h"
#include "ldpmarl/detector.h"
#include "ldpmarl/errors.h"
#include "ldpmarl/plot.h"

namespace fs = std::filesystem;
using namespace ldpmarl;  // NOLINT

namespace {

constexpr int kUsage = 1;
constexpr int kRunFailure = 2;

int RunCommand(const std::string& config_path, const std::string& out_dir,
               const std::vector<uint64_t>& seeds,
               const std::vector<std::string>& overrides, bool quiet) {
  ConfigMap map;
  if (!config_path.empty()) map = LoadConfigFile(config_path);
  for (const std::string& o : overrides) ApplyOverride(map, o);
  if (!seeds.empty()) {
    std::string list;
    for (uint64_t s : seeds) list += (list.empty() ? "" : ",") + std::to_string(s);
    map["campaign.seeds"] = list;
  }
  const ExperimentConfig config = ExperimentConfig::FromMap(map);
  const CampaignResult result =
      RunCampaign(config, out_dir, quiet ? nullptr : &std::cerr);
  if (result.failures > 0) {
    std::cerr << result.failures << " arm(s) failed; see "
              << (fs::path(out_dir) / "summary" / "failures.csv").string()
              << '\n';
    return kRunFailure;
  }
  return 0;
}

int CalibrateCommand(const std::vector<std::string>& kappas,
                     const std::vector<double>& gammas, double tau, int n,
                     int reps, uint64_t seed, const std::string& sampler_name,
                     const PrivacyParams& privacy, const std::string& out_dir) {
  const auto sampler = ParseAttackSampler(sampler_name);
  if (!sampler) throw ConfigError("unknown sampler '" + sampler_name + "'");
  privacy.Validate();
  fs::create_directories(out_dir);
  std::ofstream out(fs::path(out_dir) / "calibration.csv", std::ios::binary);
  out << "kappa,gamma,tau,n,reps,outliers_nodp,outliers_dp_tau,outliers_dp,"
         "outliers_attack,rmse\n";
  for (const std::string& k : kappas) {
    CalibrationSetup setup;
    setup.n = n;
    setup.tau = tau;
    setup.sampler = *sampler;
    setup.kappa = k == "auto" ? KappaForBoundedNoise(tau, privacy) : std::stod(k);
    for (double g : gammas) {
      setup.gamma = g;
      const CalibrationResult r = CalibrationAverage(setup, privacy, reps, seed);
      out << FormatDouble(setup.kappa) << ',' << FormatDouble(g) << ','
          << FormatDouble(tau) << ',' << n << ',' << reps << ','
          << FormatDouble(r.outliers_nodp) << ','
          << FormatDouble(r.outliers_dp_tau) << ','
          << FormatDouble(r.outliers_dp) << ','
          << FormatDouble(r.outliers_attack) << ',' << FormatDouble(r.rmse)
          << '\n';
    }
  }
  return 0;
}

int PlotCommand(const std::string& in_dir, std::string out_dir) {
  if (out_dir.empty()) out_dir = (fs::path(in_dir) / "plots").string();
  const auto files = RenderPlots(in_dir, out_dir);
  if (files.empty()) {
    std::cerr << "nothing to plot under " << in_dir << '\n';
    return kUsage;
  }
  for (const auto& f : files) std::cout << (fs::path(out_dir) / f).string() << '\n';
  return 0;
}

int ReplayCommand(const std::string& manifest, std::string out_dir,
                  bool quiet) {
  const ExperimentConfig config = ConfigFromManifest(LoadConfigFile(manifest));
  if (out_dir.empty()) {
    out_dir = (fs::path(manifest).parent_path() / "replay").string();
  }
  const CampaignResult result =
      RunCampaign(config, out_dir, quiet ? nullptr : &std::cerr);
  return result.failures > 0 ? kRunFailure : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative multi-agent Q-learning under LDP and poisoning"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  std::vector<uint64_t> seeds;
  std::vector<std::string> overrides;
  bool quiet = false;
  CLI::App* run = app.add_subcommand("run", "Run a campaign from a config file");
  run->add_option("--config", config_path, "Config file (key = value lines)")
      ->check(CLI::ExistingFile);
  run->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  run->add_option("--seed", seeds, "Seed(s); overrides campaign.seeds");
  run->add_option("--set", overrides, "Config override key=value")
      ->allow_extra_args(false);
  run->add_flag("--quiet", quiet, "No progress output");

  std::vector<std::string> kappas = {"1", "auto"};
  std::vector<double> gammas = {1, 2, 3, 4, 5, 6, 7, 8};
  double tau = 1.0;
  int n = 100;
  int reps = 1000;
  uint64_t calib_seed = 1;
  std::string sampler = "shifted-laplace";
  std::string calib_out = ".";
  PrivacyParams privacy;
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "Outlier-count and RMSE experiment");
  calibrate->add_option("--kappa", kappas, "Tolerance multiplier(s) or 'auto'")
      ->capture_default_str();
  calibrate->add_option("--gamma", gammas, "Poisoning degree(s)")
      ->capture_default_str();
  calibrate->add_option("--tau", tau, "Base detector threshold")
      ->capture_default_str();
  calibrate->add_option("--n", n, "Values per round")->capture_default_str();
  calibrate->add_option("--reps", reps, "Monte-Carlo rounds")
      ->capture_default_str();
  calibrate->add_option("--seed", calib_seed, "Seed")->capture_default_str();
  calibrate->add_option("--sampler", sampler,
                        "Attack noise law: shifted-laplace or tilted")
      ->capture_default_str();
  calibrate->add_option("--epsilon", privacy.epsilon, "Privacy budget")
      ->capture_default_str();
  calibrate->add_option("--lower", privacy.lower, "Lower Q bound")
      ->capture_default_str();
  calibrate->add_option("--upper", privacy.upper, "Upper Q bound")
      ->capture_default_str();
  calibrate->add_option("--alpha", privacy.alpha, "Learning rate in the noise scale")
      ->capture_default_str();
  calibrate->add_option("--out-dir", calib_out, "Output directory")
      ->capture_default_str();

  std::string plot_in, plot_out;
  CLI::App* plot = app.add_subcommand("plot", "Render SVG plots from CSVs");
  plot->add_option("--in-dir", plot_in, "Campaign or calibration directory")
      ->required();
  plot->add_option("--out-dir", plot_out, "Output directory (default in/plots)");

  std::string manifest, replay_out;
  CLI::App* replay = app.add_subcommand("replay", "Re-run a campaign manifest");
  replay->add_option("manifest", manifest, "Manifest file")
      ->required()
      ->check(CLI::ExistingFile);
  replay->add_option("--out-dir", replay_out,
                     "Output directory (default <manifest dir>/replay)");
  replay->add_flag("--quiet", quiet, "No progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*run) return RunCommand(config_path, out_dir, seeds, overrides, quiet);
    if (*calibrate) {
      return CalibrateCommand(kappas, gammas, tau, n, reps, calib_seed, sampler,
                              privacy, calib_out);
    }
    if (*plot) return PlotCommand(plot_in, plot_out);
    if (*replay) return ReplayCommand(manifest, replay_out, quiet);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRunFailure;
  }
  return kUsage;
}
