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

#include "ldpmarl/config.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "ldpmarl/csv.h"
#include "ldpmarl/errors.h"

namespace ldpmarl {
namespace {

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double ToDouble(const std::string& key, const std::string& v) {
  size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
  return out;
}

int64_t ToInt(const std::string& key, const std::string& v) {
  size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) {
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
  }
  return out;
}

bool ToBool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

std::string FromBool(bool b) { return b ? "true" : "false"; }

template <typename T, typename F>
std::string JoinList(const std::vector<T>& items, F&& format) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ",";
    out += format(items[i]);
  }
  return out;
}

std::vector<std::string> ListItems(const std::string& v) {
  std::vector<std::string> out;
  if (Trim(v).empty()) return out;
  for (const std::string& item : SplitString(v, ',')) out.push_back(Trim(item));
  return out;
}

}  // namespace

ConfigMap ParseConfigText(std::string_view text) {
  ConfigMap map;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (size_t hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    const std::string trimmed = Trim(line);
    if (trimmed.empty()) continue;
    const size_t eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    const std::string key = Trim(std::string_view(trimmed).substr(0, eq));
    const std::string value = Trim(std::string_view(trimmed).substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key");
    }
    map[key] = value;
  }
  return map;
}

ConfigMap LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfigText(buf.str());
}

void ApplyOverride(ConfigMap& map, std::string_view assignment) {
  const size_t eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) +
                      "' is not key=value");
  }
  const std::string key = Trim(assignment.substr(0, eq));
  if (key.empty()) throw ConfigError("override with empty key");
  map[key] = Trim(assignment.substr(eq + 1));
}

ExperimentConfig ExperimentConfig::Defaults(std::string_view scale) {
  const auto preset = FindScalePreset(scale);
  if (!preset) throw ConfigError("unknown scale '" + std::string(scale) + "'");
  ExperimentConfig c;
  c.scale = std::string(preset->name);
  c.world.height = preset->height;
  c.world.width = preset->width;
  c.world.num_agents = preset->agents;
  c.world.num_obstacles = preset->obstacles;
  c.campaign.episodes = preset->episodes;
  c.campaign.baseline_episodes = 2 * preset->episodes;
  c.privacy.alpha = c.learner.alpha;
  return c;
}

ExperimentConfig ExperimentConfig::FromMap(const ConfigMap& map) {
  std::string scale = "medium";
  if (auto it = map.find("env.scale"); it != map.end()) scale = it->second;
  ExperimentConfig c = Defaults(scale);

  bool privacy_alpha_set = false;
  bool baseline_episodes_set = false;
  bool baseline_seed_set = false;

  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"env.scale", [](auto&, auto&) {}},
      {"env.height",
       [&](auto& k, auto& v) { c.world.height = static_cast<int>(ToInt(k, v)); }},
      {"env.width",
       [&](auto& k, auto& v) { c.world.width = static_cast<int>(ToInt(k, v)); }},
      {"env.agents",
       [&](auto& k, auto& v) {
         c.world.num_agents = static_cast<int>(ToInt(k, v));
       }},
      {"env.obstacles",
       [&](auto& k, auto& v) {
         c.world.num_obstacles = static_cast<int>(ToInt(k, v));
       }},
      {"env.freeways",
       [&](auto& k, auto& v) {
         c.world.num_freeways = v == "auto" ? -1 : static_cast<int>(ToInt(k, v));
       }},
      {"env.goal",
       [&](auto& k, auto& v) {
         if (v == "auto") {
           c.world.goal.reset();
           return;
         }
         auto parts = ListItems(v);
         if (parts.size() != 2) throw ConfigError(k + ": expected 'x,y'");
         c.world.goal = Cell{static_cast<int>(ToInt(k, parts[0])),
                             static_cast<int>(ToInt(k, parts[1]))};
       }},
      {"env.step_limit",
       [&](auto& k, auto& v) {
         c.world.step_limit = static_cast<int>(ToInt(k, v));
       }},
      {"env.layout_seed",
       [&](auto& k, auto& v) {
         const int64_t s = ToInt(k, v);
         if (s < 0) throw ConfigError(k + ": seed must be >= 0");
         c.world.layout_seed = static_cast<uint64_t>(s);
       }},
      {"env.dynamic_obstacles",
       [&](auto& k, auto& v) { c.world.dynamic_obstacles = ToBool(k, v); }},
      {"reward.goal",
       [&](auto& k, auto& v) { c.world.rewards.goal = ToDouble(k, v); }},
      {"reward.freeway",
       [&](auto& k, auto& v) { c.world.rewards.freeway = ToDouble(k, v); }},
      {"reward.obstacle",
       [&](auto& k, auto& v) { c.world.rewards.obstacle = ToDouble(k, v); }},
      {"reward.wall",
       [&](auto& k, auto& v) { c.world.rewards.wall = ToDouble(k, v); }},
      {"learner.alpha",
       [&](auto& k, auto& v) { c.learner.alpha = ToDouble(k, v); }},
      {"learner.discount",
       [&](auto& k, auto& v) { c.learner.discount = ToDouble(k, v); }},
      {"learner.epsilon",
       [&](auto& k, auto& v) { c.learner.epsilon = ToDouble(k, v); }},
      {"privacy.enabled",
       [&](auto& k, auto& v) { c.privacy_enabled = ToBool(k, v); }},
      {"privacy.epsilon",
       [&](auto& k, auto& v) { c.privacy.epsilon = ToDouble(k, v); }},
      {"privacy.lower",
       [&](auto& k, auto& v) { c.privacy.lower = ToDouble(k, v); }},
      {"privacy.upper",
       [&](auto& k, auto& v) { c.privacy.upper = ToDouble(k, v); }},
      {"privacy.alpha",
       [&](auto& k, auto& v) {
         if (v == "auto") return;
         c.privacy.alpha = ToDouble(k, v);
         privacy_alpha_set = true;
       }},
      {"advice.enabled",
       [&](auto& k, auto& v) { c.advice.enabled = ToBool(k, v); }},
      {"advice.weight",
       [&](auto& k, auto& v) { c.advice.aggregation.weight = ToDouble(k, v); }},
      {"advice.zone_radius",
       [&](auto& k, auto& v) {
         c.advice.aggregation.zone_radius = static_cast<int>(ToInt(k, v));
       }},
      {"advice.ask_rule",
       [&](auto& k, auto& v) {
         auto r = ParseRequestRule(v);
         if (!r) throw ConfigError(k + ": unknown rule '" + v + "'");
         c.advice.ask_rule = *r;
       }},
      {"advice.give_rule",
       [&](auto& k, auto& v) {
         auto r = ParseRequestRule(v);
         if (!r) throw ConfigError(k + ": unknown rule '" + v + "'");
         c.advice.give_rule = *r;
       }},
      {"advice.ask_constant",
       [&](auto& k, auto& v) { c.advice.ask_constant = ToDouble(k, v); }},
      {"advice.give_constant",
       [&](auto& k, auto& v) { c.advice.give_constant = ToDouble(k, v); }},
      {"advice.ask_budget",
       [&](auto& k, auto& v) { c.advice.ask_budget = ToInt(k, v); }},
      {"advice.give_budget",
       [&](auto& k, auto& v) { c.advice.give_budget = ToInt(k, v); }},
      {"advice.attacker_give_budget",
       [&](auto& k, auto& v) { c.advice.attacker_give_budget = ToInt(k, v); }},
      {"attack.mode",
       [&](auto& k, auto& v) {
         auto m = ParseAttackMode(v);
         if (!m) throw ConfigError(k + ": unknown mode '" + v + "'");
         c.attack.mode = *m;
       }},
      {"attack.sampler",
       [&](auto& k, auto& v) {
         auto s = ParseAttackSampler(v);
         if (!s) throw ConfigError(k + ": unknown sampler '" + v + "'");
         c.attack.sampler = *s;
       }},
      {"attack.tau_gamma",
       [&](auto& k, auto& v) {
         c.attack.tau_gamma = static_cast<int>(ToInt(k, v));
       }},
      {"attack.theta",
       [&](auto& k, auto& v) { c.attack.theta = ToDouble(k, v); }},
      {"attack.blind",
       [&](auto& k, auto& v) { c.attack.blind = ToBool(k, v); }},
      {"attack.external_gamma",
       [&](auto& k, auto& v) { c.attack.external_gamma = ToDouble(k, v); }},
      {"detector.enabled",
       [&](auto& k, auto& v) { c.detector.enabled = ToBool(k, v); }},
      {"detector.tau",
       [&](auto& k, auto& v) { c.detector.tau = ToDouble(k, v); }},
      {"detector.kappa",
       [&](auto& k, auto& v) { c.detector.kappa = ToDouble(k, v); }},
      {"detector.blocking",
       [&](auto& k, auto& v) { c.detector.blocking = ToBool(k, v); }},
      {"metrics.window",
       [&](auto& k, auto& v) { c.metrics.window = static_cast<int>(ToInt(k, v)); }},
      {"metrics.convergence_threshold",
       [&](auto& k, auto& v) {
         c.metrics.convergence_threshold = ToDouble(k, v);
       }},
      {"metrics.persistence",
       [&](auto& k, auto& v) {
         c.metrics.persistence = static_cast<int>(ToInt(k, v));
       }},
      {"campaign.ratios",
       [&](auto& k, auto& v) {
         c.campaign.ratios.clear();
         for (const auto& item : ListItems(v)) {
           c.campaign.ratios.push_back(ToDouble(k, item));
         }
       }},
      {"campaign.seeds",
       [&](auto& k, auto& v) {
         c.campaign.seeds.clear();
         for (const auto& item : ListItems(v)) {
           const int64_t s = ToInt(k, item);
           if (s < 0) throw ConfigError(k + ": seeds must be >= 0");
           c.campaign.seeds.push_back(static_cast<uint64_t>(s));
         }
       }},
      {"campaign.episodes",
       [&](auto& k, auto& v) {
         if (v == "auto") return;
         c.campaign.episodes = static_cast<int>(ToInt(k, v));
       }},
      {"campaign.baseline_episodes",
       [&](auto& k, auto& v) {
         if (v == "auto") return;
         c.campaign.baseline_episodes = static_cast<int>(ToInt(k, v));
         baseline_episodes_set = true;
       }},
      {"campaign.baseline_seed",
       [&](auto& k, auto& v) {
         if (v == "auto") return;
         const int64_t s = ToInt(k, v);
         if (s < 0) throw ConfigError(k + ": seed must be >= 0");
         c.campaign.baseline_seed = static_cast<uint64_t>(s);
         baseline_seed_set = true;
       }},
      {"campaign.advice_log",
       [&](auto& k, auto& v) { c.campaign.advice_log = ToBool(k, v); }},
  };

  for (const auto& [key, value] : map) {
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(key, value);
  }
  if (!privacy_alpha_set) c.privacy.alpha = c.learner.alpha;
  if (!baseline_episodes_set) {
    c.campaign.baseline_episodes = 2 * c.campaign.episodes;
  }
  if (!baseline_seed_set && !c.campaign.seeds.empty()) {
    c.campaign.baseline_seed = c.campaign.seeds.front();
  }
  c.Validate();
  return c;
}

ConfigMap ExperimentConfig::ToMap() const {
  ConfigMap m;
  const auto d = [](double v) { return FormatDouble(v); };
  m["env.scale"] = scale;
  m["env.height"] = std::to_string(world.height);
  m["env.width"] = std::to_string(world.width);
  m["env.agents"] = std::to_string(world.num_agents);
  m["env.obstacles"] = std::to_string(world.num_obstacles);
  m["env.freeways"] = std::to_string(world.ResolvedFreeways());
  const Cell g = world.ResolvedGoal();
  m["env.goal"] = std::to_string(g.x) + "," + std::to_string(g.y);
  m["env.step_limit"] = std::to_string(world.step_limit);
  m["env.dynamic_obstacles"] = FromBool(world.dynamic_obstacles);
  m["env.layout_seed"] = std::to_string(world.layout_seed);
  m["reward.goal"] = d(world.rewards.goal);
  m["reward.freeway"] = d(world.rewards.freeway);
  m["reward.obstacle"] = d(world.rewards.obstacle);
  m["reward.wall"] = d(world.rewards.wall);
  m["learner.alpha"] = d(learner.alpha);
  m["learner.discount"] = d(learner.discount);
  m["learner.epsilon"] = d(learner.epsilon);
  m["privacy.enabled"] = FromBool(privacy_enabled);
  m["privacy.epsilon"] = d(privacy.epsilon);
  m["privacy.lower"] = d(privacy.lower);
  m["privacy.upper"] = d(privacy.upper);
  m["privacy.alpha"] = d(privacy.alpha);
  m["advice.enabled"] = FromBool(advice.enabled);
  m["advice.weight"] = d(advice.aggregation.weight);
  m["advice.zone_radius"] = std::to_string(advice.aggregation.zone_radius);
  m["advice.ask_rule"] = std::string(RequestRuleName(advice.ask_rule));
  m["advice.give_rule"] = std::string(RequestRuleName(advice.give_rule));
  m["advice.ask_constant"] = d(advice.ask_constant);
  m["advice.give_constant"] = d(advice.give_constant);
  m["advice.ask_budget"] = std::to_string(advice.ask_budget);
  m["advice.give_budget"] = std::to_string(advice.give_budget);
  m["advice.attacker_give_budget"] = std::to_string(advice.attacker_give_budget);
  m["attack.mode"] = std::string(AttackModeName(attack.mode));
  m["attack.sampler"] = std::string(AttackSamplerName(attack.sampler));
  m["attack.tau_gamma"] = std::to_string(attack.tau_gamma);
  m["attack.theta"] = d(attack.theta);
  m["attack.blind"] = FromBool(attack.blind);
  m["attack.external_gamma"] = d(attack.external_gamma);
  m["detector.enabled"] = FromBool(detector.enabled);
  m["detector.tau"] = d(detector.tau);
  m["detector.kappa"] = d(detector.kappa);
  m["detector.blocking"] = FromBool(detector.blocking);
  m["metrics.window"] = std::to_string(metrics.window);
  m["metrics.convergence_threshold"] = d(metrics.convergence_threshold);
  m["metrics.persistence"] = std::to_string(metrics.persistence);
  m["campaign.ratios"] = JoinList(campaign.ratios, d);
  m["campaign.seeds"] =
      JoinList(campaign.seeds, [](uint64_t s) { return std::to_string(s); });
  m["campaign.episodes"] = std::to_string(campaign.episodes);
  m["campaign.baseline_episodes"] = std::to_string(campaign.baseline_episodes);
  m["campaign.baseline_seed"] = std::to_string(campaign.baseline_seed);
  m["campaign.advice_log"] = FromBool(campaign.advice_log);
  return m;
}

void ExperimentConfig::Validate() const {
  world.Validate();
  learner.Validate();
  try {
    privacy.Validate();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  advice.Validate();
  attack.Validate();
  detector.Validate();
  if (metrics.window < 1) throw ConfigError("metrics.window must be >= 1");
  if (metrics.persistence < 1) {
    throw ConfigError("metrics.persistence must be >= 1");
  }
  if (campaign.ratios.empty()) throw ConfigError("campaign.ratios is empty");
  for (double r : campaign.ratios) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw ConfigError("attacker ratios must lie in [0, 1]");
    }
  }
  if (campaign.seeds.empty()) throw ConfigError("campaign.seeds is empty");
  if (campaign.episodes < 1) throw ConfigError("campaign.episodes must be >= 1");
  if (campaign.baseline_episodes < 1) {
    throw ConfigError("campaign.baseline_episodes must be >= 1");
  }
}

std::string FormatConfig(const ConfigMap& map) {
  std::string out;
  for (const auto& [k, v] : map) out += k + " = " + v + "\n";
  return out;
}

}  // namespace ldpmarl
