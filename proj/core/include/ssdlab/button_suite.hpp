#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ssdlab/actor_critic.hpp"
#include "ssdlab/environment.hpp"
#include "ssdlab/inequity.hpp"

namespace ssdlab {

// Exhaustive search over the button owner's action sequences (the other
// player idles), maximising the owner's discounted extrinsic return.
struct SelfishSearch {
  double best = 0.0;
  double best_without_press = 0.0;
  // -infinity when no sequence within the horizon presses.
  double best_with_press = 0.0;
  // Restricted to presses made while the owner's room still holds apples.
  double best_with_early_press = 0.0;
  std::size_t states = 0;
};

SelfishSearch selfish_button_search(const EnvironmentConfig& config, int horizon, double gamma);

// One deterministic scripted episode: the owner either walks to the button
// first and then harvests, or only harvests; the other player harvests.
struct ScriptedButtonOutcome {
  std::array<double, 2> extrinsic{};
  std::array<double, 2> subjective{};
  bool pressed = false;
  int steps = 0;
};

ScriptedButtonOutcome scripted_button_episode(const EnvironmentConfig& config, bool owner_presses,
                                              std::span<const IAParams> ia, std::uint64_t seed = 0);

struct ButtonSuiteOptions {
  LearnerConfig learner;
  int training_episodes = 200;  // per worker
  int evaluation_episodes = 50;
  std::uint64_t seed = 0;
  IAParams aia{0.0, 1.0, 0.975, 0.99};
  IAParams dia{5.0, 0.0, 0.975, 0.99};
};

struct ButtonCondition {
  std::string game;
  std::string population;  // selfish, aia or dia
  int episodes = 0;
  double press_frequency = 0.0;  // fraction of evaluation episodes with a press by the owner
  double owner_return = 0.0;
  double other_return = 0.0;
};

// Trains a homogeneous population of each kind on the game and reports how
// often the button owner presses it afterwards.
std::vector<ButtonCondition> run_button_suite(const EnvironmentConfig& config,
                                              const ButtonSuiteOptions& options);

std::string button_rows(const std::vector<ButtonCondition>& rows);

}  // namespace ssdlab
