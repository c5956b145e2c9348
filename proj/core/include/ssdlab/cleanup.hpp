#pragma once

#include <cstddef>

#include "ssdlab/environment.hpp"

namespace ssdlab {

// Public-goods game: apples grow in the orchard only while the river is
// clean enough, and only agents who leave the orchard can clean it.
class CleanupEnv final : public Environment {
 public:
  CleanupEnv(GridState initial, CleanupConfig config, int beam_length = kDefaultBeamLength,
             ViewConfig view = {});

  EnvKind kind() const override { return EnvKind::Cleanup; }
  std::unique_ptr<Environment> clone() const override;
  std::span<const Action> action_set() const override;

  const CleanupConfig& config() const { return config_; }

 private:
  void on_reset() override;
  void on_step(std::span<const Action> actions, std::vector<double>& rewards,
               StepInfo& info) override;
  bool finished() const override;

  CleanupConfig config_;
};

std::size_t river_size(const GridState& state);
double waste_fraction(const GridState& state);

// coeff * max(0, 1 - waste_fraction / saturation).
double cleanup_apple_spawn_probability(double waste_fraction, const CleanupConfig& config);

// Smallest waste cell count whose fraction strictly exceeds the saturation threshold.
std::size_t initial_waste_count(std::size_t river_cells, double saturation);

// Regrowth phases, exposed for direct testing. Return the number of cells spawned.
int spawn_waste(GridState& state, const CleanupConfig& config);
int regrow_cleanup_apples(GridState& state, const CleanupConfig& config);

}  // namespace ssdlab
