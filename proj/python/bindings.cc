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

// Python bindings: config resolution, single runs, campaigns, the solver and
// samplers, and the calibration experiment. Overrides are passed as a dict of
// config keys to strings or numbers, exactly as in a config file.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ldpmarl/attack.h"
#include "ldpmarl/campaign.h"
#include "ldpmarl/config.h"
#include "ldpmarl/csv.h"
#include "ldpmarl/detector.h"
#include "ldpmarl/errors.h"
#include "ldpmarl/privacy.h"
#include "ldpmarl/simulation.h"

namespace py = pybind11;
using namespace py::literals;

namespace ldpmarl {
namespace {

// Accepts str, bool, int, float or a list of those as config values.
std::string ValueText(const py::handle& v) {
  if (py::isinstance<py::bool_>(v)) return v.cast<bool>() ? "true" : "false";
  if (py::isinstance<py::int_>(v)) return std::to_string(v.cast<int64_t>());
  if (py::isinstance<py::float_>(v)) return FormatDouble(v.cast<double>());
  if (py::isinstance<py::str>(v)) return v.cast<std::string>();
  if (py::isinstance<py::sequence>(v)) {
    std::string out;
    for (const py::handle& item : v.cast<py::sequence>()) {
      out += (out.empty() ? "" : ",") + ValueText(item);
    }
    return out;
  }
  throw py::type_error("unsupported config value type");
}

ExperimentConfig ResolveConfig(const std::string& path, const py::dict& overrides) {
  ConfigMap map;
  if (!path.empty()) map = LoadConfigFile(path);
  for (const auto& [k, v] : overrides) map[k.cast<std::string>()] = ValueText(v);
  return ExperimentConfig::FromMap(map);
}

py::dict EpisodeDict(const EpisodeMetrics& m) {
  return py::dict("episode"_a = m.episode, "steps"_a = m.steps,
                  "reward"_a = m.cumulative_reward, "delta_q"_a = m.delta_q,
                  "alarms"_a = m.alarms, "advice"_a = m.advice_records,
                  "malicious"_a = m.malicious_records,
                  "goal_reached"_a = m.goal_reached, "winner"_a = m.winner,
                  "gammas"_a = m.gamma_samples);
}

std::vector<std::vector<double>> Rows(const QTable& q) {
  std::vector<std::vector<double>> out(q.num_states());
  for (StateId s = 0; s < q.num_states(); ++s) {
    const auto row = q.Row(s);
    out[s].assign(row.begin(), row.end());
  }
  return out;
}

class PySimulation {
 public:
  PySimulation(const py::dict& overrides, uint64_t seed, double ratio,
               const std::string& config) {
    ExperimentConfig c = ResolveConfig(config, overrides);
    c.attack.attacker_ratio = ratio;
    sim_ = std::make_unique<Simulation>(c, seed);
  }

  py::dict RunEpisode() { return EpisodeDict(sim_->RunEpisode()); }
  py::list Run(int episodes) {
    py::list out;
    for (const EpisodeMetrics& m : sim_->Run(episodes)) out.append(EpisodeDict(m));
    return out;
  }
  std::vector<std::vector<double>> QValues(int agent) const {
    return Rows(sim_->agents().at(agent).q);
  }
  std::vector<int> Attackers() const { return sim_->attacker_ids(); }
  int Episodes() const { return sim_->episodes_played(); }

 private:
  std::unique_ptr<Simulation> sim_;
};

}  // namespace
}  // namespace ldpmarl

PYBIND11_MODULE(_core, m) {
  using namespace ldpmarl;  // NOLINT
  m.doc() = "Cooperative multi-agent Q-learning with LDP advice and poisoning";
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError",
                                            PyExc_RuntimeError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);

  m.def("resolve_config",
        [](const py::dict& overrides, const std::string& config) {
          return ResolveConfig(config, overrides).ToMap();
        },
        "overrides"_a = py::dict(), "config"_a = "",
        "Resolved key -> value map for a config file plus overrides.");

  py::class_<PySimulation>(m, "Simulation")
      .def(py::init<const py::dict&, uint64_t, double, const std::string&>(),
           "overrides"_a = py::dict(), "seed"_a = 1, "ratio"_a = 0.0,
           "config"_a = "")
      .def("run_episode", &PySimulation::RunEpisode)
      .def("run", &PySimulation::Run, "episodes"_a)
      .def("q_values", &PySimulation::QValues, "agent"_a,
           "Q-table of one agent as a list of per-state rows.")
      .def_property_readonly("attackers", &PySimulation::Attackers)
      .def_property_readonly("episodes_played", &PySimulation::Episodes);

  m.def("run_campaign",
        [](const py::dict& overrides, const std::filesystem::path& out_dir,
           const std::string& config) {
          const ExperimentConfig c = ResolveConfig(config, overrides);
          CampaignResult r;
          {
            py::gil_scoped_release release;
            r = RunCampaign(c, out_dir, nullptr);
          }
          py::list arms;
          for (const ArmResult& a : r.arms) {
            arms.append(py::dict(
                "ratio"_a = a.ratio, "seed"_a = a.seed, "attackers"_a = a.attackers,
                "failed"_a = a.failed, "error"_a = a.error,
                "convergence_episode"_a = a.summary.convergence_episode,
                "steps"_a = a.summary.steps, "reward"_a = a.summary.reward,
                "delta_q"_a = a.summary.delta_q));
          }
          return py::dict("failures"_a = r.failures, "arms"_a = arms);
        },
        "overrides"_a = py::dict(), "out_dir"_a = "out", "config"_a = "",
        "Runs a full campaign and writes its CSVs under out_dir.");

  m.def("solve_multiplier", &SolveLagrangeMultiplier, "gamma"_a, "b"_a);
  m.def("attack_mean", &AttackMean, "theta"_a, "c"_a, "b"_a);
  m.def("profile",
        [](double gamma, double b, double theta) {
          const AdversarialProfile p = MakeProfile(gamma, b, theta);
          return py::dict("gamma"_a = p.gamma, "c"_a = p.c, "mu_star"_a = p.mu_star,
                          "b"_a = p.b, "theta"_a = p.theta);
        },
        "gamma"_a, "b"_a = 1.15, "theta"_a = 0.0);

  m.def("bounded_laplace",
        [](double q, int n, uint64_t seed, double epsilon, double lower,
           double upper, double alpha) {
          PrivacyParams p;
          p.epsilon = epsilon;
          p.lower = lower;
          p.upper = upper;
          p.alpha = alpha;
          p.Validate();
          Rng rng(seed);
          std::vector<double> out(n);
          for (double& v : out) v = BlpPerturb(q, p, rng);
          return out;
        },
        "q"_a, "n"_a = 1, "seed"_a = 1, "epsilon"_a = 1.0, "lower"_a = -1.5,
        "upper"_a = 10.0, "alpha"_a = 0.1);

  m.def("adversarial_noise",
        [](double gamma, int n, uint64_t seed, const std::string& sampler) {
          const auto s = ParseAttackSampler(sampler);
          if (!s) throw ConfigError("unknown sampler '" + sampler + "'");
          const AdversarialProfile p = MakeProfile(gamma, PrivacyParams().Scale(), 0.0);
          Rng rng(seed);
          std::vector<double> out(n);
          for (double& v : out) v = SampleAdversarial(p, *s, rng);
          return out;
        },
        "gamma"_a, "n"_a = 1, "seed"_a = 1, "sampler"_a = "shifted-laplace");

  m.def("calibrate",
        [](double kappa, double gamma, double tau, int n, int reps, uint64_t seed) {
          CalibrationSetup setup;
          setup.kappa = kappa;
          setup.gamma = gamma;
          setup.tau = tau;
          setup.n = n;
          const CalibrationResult r =
              CalibrationAverage(setup, PrivacyParams(), reps, seed);
          return py::dict("outliers_nodp"_a = r.outliers_nodp,
                          "outliers_dp_tau"_a = r.outliers_dp_tau,
                          "outliers_dp"_a = r.outliers_dp,
                          "outliers_attack"_a = r.outliers_attack, "rmse"_a = r.rmse);
        },
        "kappa"_a = 1.0, "gamma"_a = 1.0, "tau"_a = 1.0, "n"_a = 100,
        "reps"_a = 1000, "seed"_a = 1);
  m.def("bounded_noise_kappa",
        [](double tau) { return KappaForBoundedNoise(tau, PrivacyParams()); },
        "tau"_a = 1.0);
}
