#pragma once

#include "ssdlab/environment.hpp"

namespace ssdlab {

// Commons game: apples regrow in proportion to the apples nearby, so a
// patch harvested bare never recovers.
class HarvestEnv final : public Environment {
 public:
  HarvestEnv(GridState initial, HarvestConfig config, int beam_length = kDefaultBeamLength,
             ViewConfig view = {});

  EnvKind kind() const override { return EnvKind::Harvest; }
  std::unique_ptr<Environment> clone() const override;
  std::span<const Action> action_set() const override;

  const HarvestConfig& config() const { return config_; }

 private:
  void on_reset() override;
  void on_step(std::span<const Action> actions, std::vector<double>& rewards,
               StepInfo& info) override;
  bool finished() const override;

  HarvestConfig config_;
};

// Apples within l1 distance `radius` of p, excluding p itself.
int apples_within(const GridState& state, Pos p, int radius);

double harvest_spawn_probability(int neighbor_apples, const HarvestConfig& config);

// One regrowth phase against the pre-phase apple layout. Returns apples spawned.
int regrow_harvest_apples(GridState& state, const HarvestConfig& config);

}  // namespace ssdlab
