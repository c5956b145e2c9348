#include "ssdlab/environment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ssdlab/button_games.hpp"
#include "ssdlab/cleanup.hpp"
#include "ssdlab/errors.hpp"
#include "ssdlab/harvest.hpp"
#include "ssdlab/map_loader.hpp"

namespace ssdlab {

std::string_view to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::Cleanup: return "cleanup";
    case EnvKind::Harvest: return "harvest";
    case EnvKind::Dictate: return "dictate";
    case EnvKind::Give: return "give";
    case EnvKind::Take: return "take";
  }
  return "unknown";
}

std::optional<EnvKind> parse_env_kind(std::string_view id) {
  for (auto k : {EnvKind::Cleanup, EnvKind::Harvest, EnvKind::Dictate, EnvKind::Give,
                 EnvKind::Take}) {
    if (to_string(k) == id) return k;
  }
  return std::nullopt;
}

std::string_view to_string(EventType type) {
  switch (type) {
    case EventType::AppleEaten: return "apple_eaten";
    case EventType::WasteCleaned: return "waste_cleaned";
    case EventType::FineLanded: return "fine_landed";
    case EventType::ButtonPressed: return "button_pressed";
  }
  return "unknown";
}

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

void check_fines(double cost, double penalty) {
  if (!(penalty < cost && cost <= 0.0)) {
    throw ConfigError("fine_penalty < fine_cost <= 0 required (got cost " + std::to_string(cost) +
                      ", penalty " + std::to_string(penalty) + ")");
  }
}

}  // namespace

void CleanupConfig::validate() const {
  if (!is_probability(waste_spawn_prob)) throw ConfigError("waste_spawn_prob must be in [0,1]");
  if (!is_probability(waste_saturation_fraction) || waste_saturation_fraction <= 0.0) {
    throw ConfigError("waste_saturation_fraction must be in (0,1]");
  }
  if (!is_probability(apple_spawn_coeff)) throw ConfigError("apple_spawn_coeff must be in [0,1]");
  if (episode_length <= 0) throw ConfigError("episode_length must be positive");
  check_fines(fine_cost, fine_penalty);
}

void HarvestConfig::validate() const {
  if (spawn_probs[0] != 0.0) throw ConfigError("spawn_probs[0] must be 0");
  for (std::size_t i = 0; i < spawn_probs.size(); ++i) {
    if (!is_probability(spawn_probs[i])) throw ConfigError("spawn_probs must be in [0,1]");
    if (i > 0 && spawn_probs[i] < spawn_probs[i - 1]) {
      throw ConfigError("spawn_probs must be nondecreasing");
    }
  }
  if (neighborhood_radius < 1) throw ConfigError("neighborhood_radius must be >= 1");
  if (episode_length <= 0) throw ConfigError("episode_length must be positive");
  if (restricted_min_neighbors < 0) throw ConfigError("restricted_min_neighbors must be >= 0");
  check_fines(fine_cost, fine_penalty);
}

void ButtonGameConfig::validate() const {
  if (max_steps <= 0) throw ConfigError("max_steps must be positive");
  check_fines(fine_cost, fine_penalty);
}

void StepInfo::reset(std::size_t n) {
  apples_eaten.assign(n, 0);
  waste_cleaned.assign(n, 0);
  fines_landed.assign(n, 0);
  fines_received.assign(n, 0);
  button_presses.assign(n, 0);
  events.clear();
}

Environment::Environment(GridState initial, int beam_length, ViewConfig view)
    : initial_(std::move(initial)), state_(initial_), beam_length_(beam_length), view_(view) {
  if (beam_length_ < 1) throw ConfigError("beam_length must be >= 1");
  if (view_.agent_row < 0 || view_.agent_row >= kViewSize || view_.agent_col < 0 ||
      view_.agent_col >= kViewSize) {
    throw ConfigError("view offset outside the observation window");
  }
}

StepResult Environment::reset(std::uint64_t seed) {
  state_ = initial_;
  state_.rng = Rng(seed);
  state_.step = 0;
  on_reset();
  done_ = false;
  StepInfo info;
  info.reset(state_.agents.size());
  return make_result(std::vector<double>(state_.agents.size(), 0.0), std::move(info));
}

StepResult Environment::step(std::span<const Action> actions) {
  if (done_) throw UsageError("step() called on a finished episode; call reset() first");
  const auto n = state_.agents.size();
  if (actions.size() != n) {
    throw ConfigError("expected " + std::to_string(n) + " actions, got " +
                      std::to_string(actions.size()));
  }
  const auto allowed = action_set();
  for (Action a : actions) {
    if (std::find(allowed.begin(), allowed.end(), a) == allowed.end()) {
      throw ConfigError("action " + std::string(to_string(a)) + " is not available in " +
                        std::string(to_string(kind())));
    }
  }

  previous_positions_.resize(n);
  for (std::size_t i = 0; i < n; ++i) previous_positions_[i] = state_.agents[i].pos;

  std::vector<double> rewards(n, 0.0);
  StepInfo info;
  info.reset(n);
  resolve_moves_in_place(state_, actions);
  on_step(actions, rewards, info);
  ++state_.step;
  done_ = finished();
  return make_result(std::move(rewards), std::move(info));
}

Observation Environment::observe(int agent, std::span<const double> traces) const {
  if (traces.empty()) {
    const std::vector<double> zeros(state_.agents.size(), 0.0);
    return ssdlab::observe(state_, agent, zeros, view_);
  }
  return ssdlab::observe(state_, agent, traces, view_);
}

StepResult Environment::make_result(std::vector<double> rewards, StepInfo info) const {
  StepResult result;
  const int n = num_agents();
  result.observations.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) result.observations.push_back(observe(i));
  result.extrinsic_rewards = std::move(rewards);
  result.done = done_;
  result.info = std::move(info);
  return result;
}

void Environment::fire_fines(std::span<const Action> actions, double fine_cost,
                             double fine_penalty, std::vector<double>& rewards, StepInfo& info) {
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i] != Action::FireFine) continue;
    if (state_.step < state_.agents[i].frozen_until) continue;
    const auto beam = project_beam(state_, static_cast<int>(i), BeamKind::Fine, beam_length_);
    if (beam.hit_agents.empty()) continue;
    const int target = beam.hit_agents.front();
    rewards[i] += fine_cost;
    rewards[static_cast<std::size_t>(target)] += fine_penalty;
    ++info.fines_landed[i];
    ++info.fines_received[static_cast<std::size_t>(target)];
    info.events.push_back({EventType::FineLanded, state_.step, static_cast<int>(i), target, 1});
  }
}

void Environment::eat_apples(std::vector<double>& rewards, StepInfo& info,
                             const std::vector<bool>& can_eat) {
  for (std::size_t i = 0; i < state_.agents.size(); ++i) {
    const Pos p = state_.agents[i].pos;
    if (state_.at(p) != Cell::Apple) continue;
    if (!can_eat.empty() && !can_eat[i]) continue;
    state_.at(p) = Cell::Empty;
    rewards[i] += 1.0;
    ++info.apples_eaten[i];
    info.events.push_back({EventType::AppleEaten, state_.step, static_cast<int>(i), -1, 1});
  }
}

namespace {

GridState load_for(const EnvironmentConfig& config) {
  const std::string name = config.map.empty() ? std::string(to_string(config.kind)) : config.map;
  const auto bundled = bundled_map(name);
  const std::string text = bundled ? std::string(*bundled) : read_map_text(name);
  return config.num_agents > 0 ? load_map(text, config.num_agents, 0) : load_map(text);
}

}  // namespace

std::unique_ptr<Environment> make_environment(const EnvironmentConfig& config) {
  GridState initial = load_for(config);
  switch (config.kind) {
    case EnvKind::Cleanup:
      return std::make_unique<CleanupEnv>(std::move(initial), config.cleanup, config.beam_length,
                                          config.view);
    case EnvKind::Harvest:
      return std::make_unique<HarvestEnv>(std::move(initial), config.harvest, config.beam_length,
                                          config.view);
    case EnvKind::Dictate:
    case EnvKind::Give:
    case EnvKind::Take:
      return std::make_unique<ButtonGameEnv>(config.kind, std::move(initial), config.button,
                                             config.beam_length, config.view);
  }
  throw ConfigError("unknown environment kind");
}

std::unique_ptr<Environment> make_environment(std::string_view env_id) {
  const auto kind = parse_env_kind(env_id);
  if (!kind) throw ConfigError("unknown environment id: " + std::string(env_id));
  EnvironmentConfig config;
  config.kind = *kind;
  return make_environment(config);
}

}  // namespace ssdlab
