#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ssdlab/actor_critic.hpp"
#include "ssdlab/environment.hpp"
#include "ssdlab/inequity.hpp"
#include "ssdlab/metrics.hpp"

namespace ssdlab {

struct AgentSetup {
  PolicyParams policy;
  IAParams ia = IAParams::selfish();
  // Training-only bonus per apple eaten by anyone this step. Never reaches
  // the extrinsic rewards or the metrics.
  double group_reward = 0.0;
  bool learning = true;
};

// Fresh, randomly initialised population for an environment.
std::vector<AgentSetup> make_population(const Environment& env, const LearnerConfig& config,
                                        std::span<const IAParams> ia, std::uint64_t seed);

ModelShape model_shape_for(const Environment& env, const LearnerConfig& config);

struct AgentEpisodeStats {
  double extrinsic_return = 0.0;
  double subjective_return = 0.0;
  double intrinsic_return = 0.0;  // as delivered, after any delay
  int apples = 0;
  int waste_cleaned = 0;
  int fines_landed = 0;
  int fines_received = 0;
  int button_presses = 0;
  std::uint64_t param_checksum = 0;
};

// Event counters per agent per step, in replay-log order.
enum class Counter : std::size_t { Apples, Cleaned, FinesLanded, FinesReceived, Presses };
inline constexpr std::size_t kCounters = 5;

struct RecordedStep {
  std::vector<Action> actions;
  std::vector<double> rewards;
  std::vector<std::array<std::uint16_t, kCounters>> counters;
  std::uint64_t checksum = 0;  // state after the step
};

struct RecordedEpisode {
  std::uint64_t env_seed = 0;
  std::uint64_t initial_checksum = 0;
  std::vector<RecordedStep> steps;
};

struct EpisodeLog {
  int episode = 0;
  int worker = 0;
  std::uint64_t env_seed = 0;
  std::vector<AgentEpisodeStats> agents;
  EpisodeRecord record;
  MetricsRow metrics;
  std::optional<RecordedEpisode> replay;
};

struct TrainingLog {
  std::vector<EpisodeLog> episodes;

  // One JSON object per line per (episode, agent).
  std::string to_jsonl() const;
};

struct TrainOptions {
  LearnerConfig learner;
  int episodes = 0;  // per worker
  std::uint64_t seed = 0;
  int intrinsic_delay = 0;
  // Record a replay for every episode whose per-worker index is a multiple of
  // this, plus each worker's last episode. 0 records nothing.
  int record_every = 0;
  std::function<void(const EpisodeLog&)> on_episode;
};

// Independent actor-critic learners. `workers` environment copies run k-step
// segments against a shared parameter snapshot; afterwards each agent's
// gradients (summed over workers in worker order) are applied to that agent
// only. workers = 1 is fully reproducible from the seed.
TrainingLog train(const Environment& prototype, std::vector<AgentSetup>& population,
                  const TrainOptions& options);

// Runs episodes with the current policies and no updates.
TrainingLog evaluate(const Environment& prototype, const std::vector<AgentSetup>& population,
                     const TrainOptions& options);

// The synchronous update: per_worker[w][i] is agent i's trajectory from
// worker w. Agents with learning = false are left untouched.
void apply_population_update(std::vector<AgentSetup>& population,
                             const std::vector<std::vector<Trajectory>>& per_worker,
                             const LearnerConfig& config);

std::uint64_t episode_seed(std::uint64_t seed, int worker, int episode);

}  // namespace ssdlab
