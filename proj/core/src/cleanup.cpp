#include "ssdlab/cleanup.hpp"

#include <algorithm>
#include <array>

#include "ssdlab/errors.hpp"

namespace ssdlab {
namespace {

constexpr std::array<Action, 9> kCleanupActions{
    Action::Noop,       Action::Forward,     Action::Backward, Action::StepLeft,  Action::StepRight,
    Action::RotateLeft, Action::RotateRight, Action::FireFine, Action::FireClean,
};

bool occupied(const GridState& state, Pos p) { return state.agent_at(p).has_value(); }

}  // namespace

std::size_t river_size(const GridState& state) {
  return state.count(Cell::River) + state.count(Cell::Waste);
}

double waste_fraction(const GridState& state) {
  const auto river = river_size(state);
  if (river == 0) return 0.0;
  return static_cast<double>(state.count(Cell::Waste)) / static_cast<double>(river);
}

double cleanup_apple_spawn_probability(double fraction, const CleanupConfig& config) {
  const double cleanliness = std::max(0.0, 1.0 - fraction / config.waste_saturation_fraction);
  return config.apple_spawn_coeff * cleanliness;
}

std::size_t initial_waste_count(std::size_t river_cells, double saturation) {
  std::size_t k = 0;
  while (k < river_cells &&
         static_cast<double>(k) / static_cast<double>(river_cells) <= saturation) {
    ++k;
  }
  return k;
}

int spawn_waste(GridState& state, const CleanupConfig& config) {
  if (waste_fraction(state) >= config.waste_saturation_fraction) return 0;
  if (!state.rng.bernoulli(config.waste_spawn_prob)) return 0;
  std::vector<std::size_t> clean;
  for (std::size_t i = 0; i < state.cells.size(); ++i) {
    if (state.cells[i] == Cell::River) clean.push_back(i);
  }
  if (clean.empty()) return 0;
  state.cells[clean[state.rng.below(clean.size())]] = Cell::Waste;
  return 1;
}

int regrow_cleanup_apples(GridState& state, const CleanupConfig& config) {
  const double p = cleanup_apple_spawn_probability(waste_fraction(state), config);
  if (p <= 0.0) return 0;
  int spawned = 0;
  for (std::size_t i = 0; i < state.cells.size(); ++i) {
    if (!state.apple_capable[i] || state.cells[i] != Cell::Empty) continue;
    if (occupied(state, state.pos_of(i))) continue;
    if (state.rng.bernoulli(p)) {
      state.cells[i] = Cell::Apple;
      ++spawned;
    }
  }
  return spawned;
}

CleanupEnv::CleanupEnv(GridState initial, CleanupConfig config, int beam_length, ViewConfig view)
    : Environment(std::move(initial), beam_length, view), config_(std::move(config)) {
  config_.validate();
  if (!config_.can_clean.empty() &&
      config_.can_clean.size() != initial_.agents.size()) {
    throw ConfigError("can_clean must list every agent");
  }
  if (river_size(initial_) == 0) throw ConfigError("cleanup map has no river");
}

std::unique_ptr<Environment> CleanupEnv::clone() const {
  return std::make_unique<CleanupEnv>(*this);
}

std::span<const Action> CleanupEnv::action_set() const { return kCleanupActions; }

void CleanupEnv::on_reset() {
  std::vector<std::size_t> river;
  for (std::size_t i = 0; i < state_.cells.size(); ++i) {
    if (state_.cells[i] == Cell::Waste) state_.cells[i] = Cell::River;
    if (state_.cells[i] == Cell::River) river.push_back(i);
  }
  // Partial Fisher-Yates: the first `count` entries become waste.
  const auto count = initial_waste_count(river.size(), config_.waste_saturation_fraction);
  for (std::size_t k = 0; k < count; ++k) {
    const auto j = k + state_.rng.below(river.size() - k);
    std::swap(river[k], river[j]);
    state_.cells[river[k]] = Cell::Waste;
  }
}

void CleanupEnv::on_step(std::span<const Action> actions, std::vector<double>& rewards,
                         StepInfo& info) {
  fire_fines(actions, config_.fine_cost, config_.fine_penalty, rewards, info);

  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i] != Action::FireClean) continue;
    if (!config_.can_clean.empty() && !config_.can_clean[i]) continue;
    if (state_.step < state_.agents[i].frozen_until) continue;
    const auto beam = project_beam(state_, static_cast<int>(i), BeamKind::Clean, beam_length_);
    int cleaned = 0;
    for (Pos p : beam.hit_waste) {
      if (state_.at(p) != Cell::Waste) continue;  // already cleaned by a lower id this step
      state_.at(p) = Cell::River;
      ++cleaned;
    }
    if (cleaned > 0) {
      info.waste_cleaned[i] += cleaned;
      info.events.push_back(
          {EventType::WasteCleaned, state_.step, static_cast<int>(i), -1, cleaned});
    }
  }

  eat_apples(rewards, info, {});
  spawn_waste(state_, config_);
  regrow_cleanup_apples(state_, config_);
}

bool CleanupEnv::finished() const { return state_.step >= config_.episode_length; }

}  // namespace ssdlab
