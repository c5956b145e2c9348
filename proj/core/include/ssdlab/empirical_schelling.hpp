#pragma once

#include <cstdint>
#include <vector>

#include "ssdlab/environment.hpp"
#include "ssdlab/schelling.hpp"
#include "ssdlab/trainer.hpp"

namespace ssdlab {

enum class Enforcement { Scripted, Trained };

struct EmpiricalOptions {
  int episodes_per_point = 20;
  std::uint64_t seed = 0;
  Enforcement mode = Enforcement::Scripted;

  // Scripted Cleanup cooperators start cleaning above this waste fraction.
  double clean_start_fraction = 0.15;

  // Trained mode: learner settings and training episodes per population.
  LearnerConfig learner;
  int training_episodes = 100;
  // Bonus per apple eaten by anyone, given to agents allowed to clean.
  double group_reward = 0.1;
};

// Per-episode role-average extrinsic returns for one population.
struct PopulationSamples {
  int cooperators = 0;
  std::vector<double> cooperator_returns;
  std::vector<double> defector_returns;
};

struct EmpiricalDiagram {
  SchellingDiagram diagram;
  std::vector<PopulationSamples> populations;  // cooperators = 0..N
};

// Which agents cooperate in a population with `cooperators` cooperators for a
// given episode. Scripted runs rotate roles across episodes.
std::vector<bool> cooperator_roles(int agents, int cooperators, int rotation);

// Environment config with the enforcement rules for the given roles applied.
EnvironmentConfig enforce_roles(const EnvironmentConfig& base, const std::vector<bool>& cooperator);

// Runs every population from 0 to N cooperators and averages per role.
// Cleanup and Harvest only.
EmpiricalDiagram empirical_schelling(const EnvironmentConfig& base, const EmpiricalOptions& options);

// Mean and standard error of the mean (sample standard deviation / sqrt(n)).
struct MeanError {
  double mean = 0.0;
  double standard_error = 0.0;
};
MeanError mean_and_error(const std::vector<double>& samples);

}  // namespace ssdlab
