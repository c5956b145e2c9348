#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssdlab/grid.hpp"

namespace ssdlab {

enum class EnvKind : std::uint8_t { Cleanup, Harvest, Dictate, Give, Take };

std::string_view to_string(EnvKind kind);
std::optional<EnvKind> parse_env_kind(std::string_view id);
inline bool is_button_game(EnvKind k) {
  return k == EnvKind::Dictate || k == EnvKind::Give || k == EnvKind::Take;
}

struct CleanupConfig {
  double waste_spawn_prob = 0.5;
  double waste_saturation_fraction = 0.40;
  double apple_spawn_coeff = 0.125;
  int episode_length = 1000;
  double fine_cost = -1.0;
  double fine_penalty = -50.0;
  // Per-agent permission to fire the cleaning beam; empty means everyone may.
  std::vector<bool> can_clean;

  void validate() const;
};

struct HarvestConfig {
  // Regrowth probability indexed by the number of apples within the radius,
  // last entry used for that count and above.
  std::array<double, 4> spawn_probs{0.0, 0.005, 0.02, 0.05};
  int neighborhood_radius = 2;
  int episode_length = 1000;
  double fine_cost = -1.0;
  double fine_penalty = -50.0;
  // Agents flagged here cannot eat apples with fewer than
  // restricted_min_neighbors apples around them. Empty means nobody is restricted.
  std::vector<bool> restricted;
  int restricted_min_neighbors = 4;

  void validate() const;
};

struct ButtonGameConfig {
  // Safety cap; the game normally ends when no apples are left.
  int max_steps = 200;
  double fine_cost = -1.0;
  double fine_penalty = -50.0;

  void validate() const;
};

struct EnvironmentConfig {
  EnvKind kind = EnvKind::Cleanup;
  std::string map;  // bundled map name or path to a map file; empty selects the default
  int num_agents = 0;  // 0 uses the map header
  int beam_length = kDefaultBeamLength;
  ViewConfig view;
  CleanupConfig cleanup;
  HarvestConfig harvest;
  ButtonGameConfig button;
};

enum class EventType : std::uint8_t { AppleEaten, WasteCleaned, FineLanded, ButtonPressed };

std::string_view to_string(EventType type);

struct Event {
  EventType type;
  std::int64_t step;
  int agent;
  int target = -1;  // fined agent, when relevant
  int count = 1;    // waste cells cleaned, apples moved by a button
};

struct StepInfo {
  std::vector<int> apples_eaten;
  std::vector<int> waste_cleaned;
  std::vector<int> fines_landed;
  std::vector<int> fines_received;
  std::vector<int> button_presses;
  std::vector<Event> events;

  void reset(std::size_t n);
};

struct StepResult {
  // smoothed_rewards inside each observation are zero; the owner of the reward
  // traces fills them in.
  std::vector<Observation> observations;
  std::vector<double> extrinsic_rewards;
  bool done = false;
  StepInfo info;
};

class Environment {
 public:
  virtual ~Environment() = default;

  virtual EnvKind kind() const = 0;
  virtual std::unique_ptr<Environment> clone() const = 0;

  // Actions available to every agent in this game; policies index into it.
  virtual std::span<const Action> action_set() const = 0;

  StepResult reset(std::uint64_t seed);
  StepResult step(std::span<const Action> actions);

  int num_agents() const { return static_cast<int>(state_.agents.size()); }
  int num_actions() const { return static_cast<int>(action_set().size()); }
  const GridState& state() const { return state_; }
  bool done() const { return done_; }
  int beam_length() const { return beam_length_; }
  const ViewConfig& view() const { return view_; }

  Observation observe(int agent, std::span<const double> traces = {}) const;

 protected:
  Environment(GridState initial, int beam_length, ViewConfig view);

  // Game-specific part of reset: place resources, zero counters.
  virtual void on_reset() = 0;
  // Game-specific phases after movement: beams, eating, buttons, regrowth.
  virtual void on_step(std::span<const Action> actions, std::vector<double>& rewards,
                       StepInfo& info) = 0;
  virtual bool finished() const = 0;

  // Shared phases.
  void fire_fines(std::span<const Action> actions, double fine_cost, double fine_penalty,
                  std::vector<double>& rewards, StepInfo& info);
  void eat_apples(std::vector<double>& rewards, StepInfo& info,
                  const std::vector<bool>& can_eat);

  GridState initial_;
  GridState state_;
  std::vector<Pos> previous_positions_;
  int beam_length_;
  ViewConfig view_;

 private:
  StepResult make_result(std::vector<double> rewards, StepInfo info) const;

  bool done_ = true;
};

std::unique_ptr<Environment> make_environment(const EnvironmentConfig& config);
std::unique_ptr<Environment> make_environment(std::string_view env_id);

}  // namespace ssdlab
