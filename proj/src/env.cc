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

#include "ldpmarl/env.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "ldpmarl/errors.h"

namespace ldpmarl {
namespace {

constexpr ScalePreset kPresets[] = {
    {"small", 5, 5, 5, 1, 3000},
    {"medium", 10, 10, 10, 3, 5000},
    {"large", 15, 15, 20, 5, 8000},
};

// Draws `count` distinct cell indices from `pool` by a partial Fisher-Yates
// shuffle.
std::vector<int> DrawDistinct(std::vector<int> pool, int count, Rng& rng) {
  for (int i = 0; i < count; ++i) {
    int j = i + rng.UniformInt(static_cast<int>(pool.size()) - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

}  // namespace

std::string_view ActionName(Action action) {
  switch (action) {
    case Action::kUp:
      return "up";
    case Action::kDown:
      return "down";
    case Action::kLeft:
      return "left";
    case Action::kRight:
      return "right";
    case Action::kStay:
      return "stay";
  }
  return "?";
}

Cell Move(Cell from, Action action) {
  switch (action) {
    case Action::kUp:
      return {from.x - 1, from.y};
    case Action::kDown:
      return {from.x + 1, from.y};
    case Action::kLeft:
      return {from.x, from.y - 1};
    case Action::kRight:
      return {from.x, from.y + 1};
    case Action::kStay:
      break;
  }
  return from;
}

void RewardSchedule::Validate() const {
  for (double v : {goal, freeway, obstacle, wall}) {
    if (!std::isfinite(v)) throw ConfigError("rewards must be finite");
  }
  if (!(goal > freeway)) {
    throw ConfigError("goal reward must exceed the freeway reward");
  }
}

std::optional<ScalePreset> FindScalePreset(std::string_view name) {
  for (const auto& preset : kPresets) {
    if (preset.name == name) return preset;
  }
  return std::nullopt;
}

int WorldSpec::ResolvedFreeways() const {
  if (num_freeways >= 0) return num_freeways;
  return static_cast<int>(std::lround(2.0 * height * width / 25.0));
}

Cell WorldSpec::ResolvedGoal() const {
  return goal.value_or(Cell{height - 1, width - 1});
}

void WorldSpec::Validate() const {
  if (height <= 0 || width <= 0) {
    throw ConfigError("grid dimensions must be positive");
  }
  if (num_agents <= 0) throw ConfigError("need at least one agent");
  if (num_obstacles < 0) throw ConfigError("obstacle count must be >= 0");
  if (step_limit <= 0) throw ConfigError("step_limit must be positive");
  Cell g = ResolvedGoal();
  if (g.x < 0 || g.x >= height || g.y < 0 || g.y >= width) {
    throw ConfigError("goal lies outside the grid");
  }
  const int free_cells = height * width - 1;
  if (num_agents + num_obstacles > free_cells) {
    throw ConfigError("grid " + std::to_string(height) + "x" +
                      std::to_string(width) + " cannot place " +
                      std::to_string(num_agents) + " agents and " +
                      std::to_string(num_obstacles) +
                      " obstacles on distinct non-goal cells");
  }
  if (ResolvedFreeways() > free_cells) {
    throw ConfigError("too many freeway cells for the grid");
  }
  rewards.Validate();
}

GridWorld::GridWorld(const WorldSpec& spec, Rng& layout_rng)
    : height_(spec.height),
      width_(spec.width),
      step_limit_(spec.step_limit),
      dynamic_obstacles_(spec.dynamic_obstacles),
      goal_(spec.ResolvedGoal()),
      rewards_(spec.rewards) {
  spec.Validate();
  agents_.assign(spec.num_agents, Cell{});
  obstacles_.assign(spec.num_obstacles, Cell{});

  std::vector<int> pool;
  const int goal_id = EncodeCell(goal_);
  for (int id = 0; id < num_states(); ++id) {
    if (id != goal_id) pool.push_back(id);
  }
  for (int id : DrawDistinct(pool, spec.ResolvedFreeways(), layout_rng)) {
    freeways_.push_back(DecodeState(id));
  }
  std::sort(freeways_.begin(), freeways_.end(), [this](Cell a, Cell b) {
    return EncodeCell(a) < EncodeCell(b);
  });
  RebuildMasks();
}

void GridWorld::Reset(Rng& rng) {
  std::vector<int> pool;
  const int goal_id = EncodeCell(goal_);
  for (int id = 0; id < num_states(); ++id) {
    if (id != goal_id) pool.push_back(id);
  }
  const int needed = num_agents() + static_cast<int>(obstacles_.size());
  if (needed > static_cast<int>(pool.size())) {
    throw ConfigError("grid too small to place all entities");
  }
  std::vector<int> cells = DrawDistinct(std::move(pool), needed, rng);
  for (int i = 0; i < num_agents(); ++i) agents_[i] = DecodeState(cells[i]);
  for (size_t k = 0; k < obstacles_.size(); ++k) {
    obstacles_[k] = DecodeState(cells[num_agents() + k]);
  }
  RebuildMasks();
  steps_ = 0;
  winner_.reset();
  last_source_ = RewardSource::kNone;
}

StepResult GridWorld::Step(int agent, Action action) {
  CheckAgent(agent);
  if (done()) throw PreconditionError("step called on a finished episode");

  const Cell target = Move(agents_[agent], action);
  StepResult result;
  if (!InBounds(target)) {
    result.next = agents_[agent];
    result.reward = rewards_.wall;
    last_source_ = RewardSource::kWall;
    return result;
  }
  agents_[agent] = target;
  result.next = target;
  const bool moved = action != Action::kStay;
  if (target == goal_) {
    result.reward = rewards_.goal;
    result.done = true;
    winner_ = agent;
    last_source_ = RewardSource::kGoal;
  } else if (moved && IsObstacle(target)) {
    result.reward = rewards_.obstacle;
    last_source_ = RewardSource::kObstacle;
  } else if (moved && IsFreeway(target)) {
    result.reward = rewards_.freeway;
    last_source_ = RewardSource::kFreeway;
  } else {
    last_source_ = RewardSource::kNone;
  }
  return result;
}

void GridWorld::Tick(Rng& rng) {
  if (dynamic_obstacles_) {
    for (Cell& obstacle : obstacles_) {
      const Action a = kAllActions[rng.UniformInt(kNumActions)];
      const Cell next = Move(obstacle, a);
      if (InBounds(next) && !(next == goal_)) obstacle = next;
    }
    RebuildMasks();
  }
  ++steps_;
}

StateId GridWorld::EncodeState(int agent) const {
  CheckAgent(agent);
  return EncodeCell(agents_[agent]);
}

Cell GridWorld::DecodeState(StateId state) const {
  return {state / width_, state % width_};
}

bool GridWorld::IsObstacle(Cell cell) const {
  return InBounds(cell) && obstacle_mask_[EncodeCell(cell)] != 0;
}

bool GridWorld::IsFreeway(Cell cell) const {
  return InBounds(cell) && freeway_mask_[EncodeCell(cell)] != 0;
}

Cell GridWorld::agent_position(int agent) const {
  CheckAgent(agent);
  return agents_[agent];
}

void GridWorld::SetAgentPosition(int agent, Cell cell) {
  CheckAgent(agent);
  if (!InBounds(cell)) throw ConfigError("agent position outside the grid");
  agents_[agent] = cell;
}

void GridWorld::SetObstacles(std::vector<Cell> obstacles) {
  for (Cell c : obstacles) {
    if (!InBounds(c) || c == goal_) {
      throw ConfigError("obstacle must be an in-grid, non-goal cell");
    }
  }
  obstacles_ = std::move(obstacles);
  RebuildMasks();
}

void GridWorld::SetFreeways(std::vector<Cell> freeways) {
  for (Cell c : freeways) {
    if (!InBounds(c)) throw ConfigError("freeway outside the grid");
  }
  freeways_ = std::move(freeways);
  RebuildMasks();
}

void GridWorld::CheckAgent(int agent) const {
  if (agent < 0 || agent >= num_agents()) {
    throw ConfigError("invalid agent id " + std::to_string(agent));
  }
}

void GridWorld::RebuildMasks() {
  obstacle_mask_.assign(num_states(), 0);
  freeway_mask_.assign(num_states(), 0);
  for (Cell c : obstacles_) obstacle_mask_[EncodeCell(c)] = 1;
  for (Cell c : freeways_) freeway_mask_[EncodeCell(c)] = 1;
}

}  // namespace ldpmarl
