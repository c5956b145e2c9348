#pragma once

#include <filesystem>
#include <vector>

#include "ssdlab/config.hpp"
#include "ssdlab/trainer.hpp"

namespace ssdlab {

struct ExperimentResult {
  TrainingLog log;
  std::vector<AgentSetup> population;
  std::filesystem::path directory;
};

// Population for a config: fresh weights from the seed, per-agent inequity
// settings, group rewards and learning flags.
std::vector<AgentSetup> build_population(const ExperimentConfig& config, const Environment& env);

// Trains and writes, under the output directory:
//   config.txt          canonical config
//   training_log.jsonl  one record per episode per agent
//   metrics.csv         one row per episode
//   replays/episode_N.ssdr  recorded episodes
//   checkpoints/agent_I.ssdp  final parameters
//   status.txt          "complete", or "failed: <reason>" after a mid-run error
// Partial logs are flushed before an error propagates.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Loads agent_I.ssdp for every agent from a checkpoint directory.
std::vector<AgentSetup> load_population(const ExperimentConfig& config, const Environment& env,
                                        const std::filesystem::path& checkpoints);

}  // namespace ssdlab
