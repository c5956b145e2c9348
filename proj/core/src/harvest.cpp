#include "ssdlab/harvest.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

#include "ssdlab/errors.hpp"

namespace ssdlab {
namespace {

constexpr std::array<Action, 8> kHarvestActions{
    Action::Noop,      Action::Forward,    Action::Backward,    Action::StepLeft,
    Action::StepRight, Action::RotateLeft, Action::RotateRight, Action::FireFine,
};

}  // namespace

int apples_within(const GridState& state, Pos p, int radius) {
  int count = 0;
  for (int dr = -radius; dr <= radius; ++dr) {
    const int span = radius - std::abs(dr);
    for (int dc = -span; dc <= span; ++dc) {
      if (dr == 0 && dc == 0) continue;
      const Pos q{p.row + dr, p.col + dc};
      if (state.in_bounds(q) && state.at(q) == Cell::Apple) ++count;
    }
  }
  return count;
}

double harvest_spawn_probability(int neighbor_apples, const HarvestConfig& config) {
  const auto idx = std::min<std::size_t>(static_cast<std::size_t>(std::max(neighbor_apples, 0)),
                                         config.spawn_probs.size() - 1);
  return config.spawn_probs[idx];
}

int regrow_harvest_apples(GridState& state, const HarvestConfig& config) {
  // Decide every cell against the pre-phase layout, then apply.
  std::vector<std::size_t> born;
  for (std::size_t i = 0; i < state.cells.size(); ++i) {
    if (!state.apple_capable[i] || state.cells[i] != Cell::Empty) continue;
    const Pos p = state.pos_of(i);
    if (state.agent_at(p)) continue;
    const double prob =
        harvest_spawn_probability(apples_within(state, p, config.neighborhood_radius), config);
    if (prob > 0.0 && state.rng.bernoulli(prob)) born.push_back(i);
  }
  for (auto i : born) state.cells[i] = Cell::Apple;
  return static_cast<int>(born.size());
}

HarvestEnv::HarvestEnv(GridState initial, HarvestConfig config, int beam_length, ViewConfig view)
    : Environment(std::move(initial), beam_length, view), config_(std::move(config)) {
  config_.validate();
  if (!config_.restricted.empty() && config_.restricted.size() != initial_.agents.size()) {
    throw ConfigError("restricted must list every agent");
  }
}

std::unique_ptr<Environment> HarvestEnv::clone() const {
  return std::make_unique<HarvestEnv>(*this);
}

std::span<const Action> HarvestEnv::action_set() const { return kHarvestActions; }

void HarvestEnv::on_reset() {}

void HarvestEnv::on_step(std::span<const Action> actions, std::vector<double>& rewards,
                         StepInfo& info) {
  fire_fines(actions, config_.fine_cost, config_.fine_penalty, rewards, info);

  std::vector<bool> can_eat;
  if (!config_.restricted.empty()) {
    can_eat.assign(state_.agents.size(), true);
    for (std::size_t i = 0; i < state_.agents.size(); ++i) {
      if (!config_.restricted[i]) continue;
      const Pos p = state_.agents[i].pos;
      can_eat[i] = apples_within(state_, p, config_.neighborhood_radius) >=
                   config_.restricted_min_neighbors;
    }
  }
  eat_apples(rewards, info, can_eat);
  regrow_harvest_apples(state_, config_);
}

bool HarvestEnv::finished() const { return state_.step >= config_.episode_length; }

}  // namespace ssdlab
