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

// Grid-world Markov game: N agents navigate an H x W grid towards a fixed
// goal while obstacles wander and freeway cells pay a small bonus.
//
// Coordinates are (x, y) with x the row in [0, H) and y the column in
// [0, W). A state is the agent's own cell, encoded row-major as x * W + y.

#ifndef LDPMARL_ENV_H_
#define LDPMARL_ENV_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ldpmarl/rng.h"

namespace ldpmarl {

using StateId = int;

struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

enum class Action : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3, kStay = 4 };

inline constexpr int kNumActions = 5;

inline constexpr std::array<Action, kNumActions> kAllActions = {
    Action::kUp, Action::kDown, Action::kLeft, Action::kRight, Action::kStay};

std::string_view ActionName(Action action);

// Cell reached by applying `action` from `from`, ignoring walls.
Cell Move(Cell from, Action action);

struct RewardSchedule {
  double goal = 10.0;
  double freeway = 0.5;
  double obstacle = -1.5;
  double wall = -0.5;

  // Throws ConfigError unless goal > freeway and all values are finite.
  void Validate() const;
};

struct ScalePreset {
  std::string_view name;
  int height;
  int width;
  int agents;
  int obstacles;
  int episodes;
};

// small (5x5, N=5, O=1), medium (10x10, N=10, O=3), large (15x15, N=20, O=5).
std::optional<ScalePreset> FindScalePreset(std::string_view name);

struct WorldSpec {
  int height = 10;
  int width = 10;
  int num_agents = 10;
  int num_obstacles = 3;
  // Negative selects the default density of two freeways per 25 cells.
  int num_freeways = -1;
  // Unset places the goal in the bottom-right corner.
  std::optional<Cell> goal;
  int step_limit = 1000;
  bool dynamic_obstacles = true;
  // Seeds the freeway layout. The map is a property of the environment, so
  // it stays fixed across run seeds.
  uint64_t layout_seed = 1;
  RewardSchedule rewards;

  int ResolvedFreeways() const;
  Cell ResolvedGoal() const;
  // Throws ConfigError when the grid cannot hold every entity.
  void Validate() const;
};

struct StepResult {
  Cell next;
  double reward = 0.0;
  bool done = false;
};

// Which reward source fired on a transition; at most one per step.
enum class RewardSource { kNone, kWall, kFreeway, kObstacle, kGoal };

class GridWorld {
 public:
  // Validates `spec` and draws the (static) freeway layout from `layout_rng`.
  // Agents and obstacles are placed by Reset().
  GridWorld(const WorldSpec& spec, Rng& layout_rng);

  // Re-randomizes agent and obstacle positions onto distinct cells other
  // than the goal and zeroes the step counter.
  void Reset(Rng& rng);

  // Moves `agent` one cell. A wall bump leaves the agent in place. The
  // reward follows the precedence goal > obstacle > freeway > wall > 0.
  StepResult Step(int agent, Action action);

  // End-of-step bookkeeping: each obstacle makes a uniformly random one-cell
  // move (or stays); moves off the grid or onto the goal are rejected. Then
  // the step counter advances.
  void Tick(Rng& rng);

  StateId EncodeState(int agent) const;
  StateId EncodeCell(Cell cell) const { return cell.x * width_ + cell.y; }
  Cell DecodeState(StateId state) const;

  bool InBounds(Cell cell) const {
    return cell.x >= 0 && cell.x < height_ && cell.y >= 0 && cell.y < width_;
  }
  bool IsObstacle(Cell cell) const;
  bool IsFreeway(Cell cell) const;

  int height() const { return height_; }
  int width() const { return width_; }
  int num_states() const { return height_ * width_; }
  int num_agents() const { return static_cast<int>(agents_.size()); }
  int step_limit() const { return step_limit_; }
  int steps() const { return steps_; }
  Cell goal() const { return goal_; }
  Cell agent_position(int agent) const;
  const std::vector<Cell>& agent_positions() const { return agents_; }
  const std::vector<Cell>& obstacles() const { return obstacles_; }
  const std::vector<Cell>& freeways() const { return freeways_; }
  const RewardSchedule& rewards() const { return rewards_; }
  RewardSource last_reward_source() const { return last_source_; }

  bool goal_reached() const { return winner_.has_value(); }
  std::optional<int> winner() const { return winner_; }
  // True once some agent stands on the goal or the step limit is reached.
  bool done() const { return goal_reached() || steps_ >= step_limit_; }

  // Test hooks for hand-built scenarios.
  void SetAgentPosition(int agent, Cell cell);
  void SetObstacles(std::vector<Cell> obstacles);
  void SetFreeways(std::vector<Cell> freeways);

 private:
  void CheckAgent(int agent) const;
  void RebuildMasks();

  int height_;
  int width_;
  int step_limit_;
  bool dynamic_obstacles_;
  Cell goal_;
  RewardSchedule rewards_;
  std::vector<Cell> agents_;
  std::vector<Cell> obstacles_;
  std::vector<Cell> freeways_;
  std::vector<char> obstacle_mask_;
  std::vector<char> freeway_mask_;
  int steps_ = 0;
  std::optional<int> winner_;
  RewardSource last_source_ = RewardSource::kNone;
};

}  // namespace ldpmarl

#endif  // LDPMARL_ENV_H_
