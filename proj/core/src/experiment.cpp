#include "ssdlab/experiment.hpp"

#include <fstream>

#include "ssdlab/checkpoint.hpp"
#include "ssdlab/csv.hpp"
#include "ssdlab/errors.hpp"
#include "ssdlab/replay.hpp"

namespace ssdlab {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

}  // namespace

std::vector<AgentSetup> build_population(const ExperimentConfig& config, const Environment& env) {
  const int n = env.num_agents();
  const auto ia = config.agent_ia(n);
  auto population = make_population(env, config.learner, ia, mix_seed(config.seed, 0x9a7a));
  const auto bonus = config.agent_group_reward(n);
  const auto learning = config.agent_learning(n);
  for (std::size_t i = 0; i < population.size(); ++i) {
    population[i].group_reward = bonus[i];
    population[i].learning = learning[i];
  }
  return population;
}

std::vector<AgentSetup> load_population(const ExperimentConfig& config, const Environment& env,
                                        const fs::path& checkpoints) {
  auto population = build_population(config, env);
  for (std::size_t i = 0; i < population.size(); ++i) {
    const auto path = checkpoints / ("agent_" + std::to_string(i) + ".ssdp");
    population[i].policy = load_checkpoint(path);
    const auto& s = population[i].policy.shape;
    if (s.input_dim != feature_size(env.num_agents()) || s.num_actions != env.num_actions()) {
      throw ConfigError(path.string() + " does not match the environment");
    }
  }
  return population;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.directory = config.output;
  const fs::path dir = result.directory;
  fs::create_directories(dir / "replays");
  fs::create_directories(dir / "checkpoints");
  write_text(dir / "config.txt", config.canonical());
  write_text(dir / "status.txt", "running\n");

  std::ofstream jsonl(dir / "training_log.jsonl");
  std::ofstream metrics(dir / "metrics.csv");
  if (!jsonl || !metrics) throw ConfigError("cannot write results under " + dir.string());
  metrics << metrics_schema().header() << '\n';

  try {
    const auto env = make_environment(config.env);
    result.population = build_population(config, *env);

    TrainOptions options;
    options.learner = config.learner;
    options.episodes = config.episodes;
    options.seed = config.seed;
    options.intrinsic_delay = config.intrinsic_delay;
    options.record_every = config.record_every;
    options.on_episode = [&](const EpisodeLog& ep) {
      TrainingLog single;
      single.episodes.push_back(ep);
      jsonl << single.to_jsonl() << std::flush;
      metrics << metrics_row(ep.episode, ep.worker, ep.metrics) << '\n' << std::flush;
      if (ep.replay) {
        save_replay(dir / "replays" / ("episode_" + std::to_string(ep.episode) + ".ssdr"),
                    make_replay(config, ep));
      }
    };
    result.log = train(*env, result.population, options);
    for (std::size_t i = 0; i < result.population.size(); ++i) {
      save_checkpoint(dir / "checkpoints" / ("agent_" + std::to_string(i) + ".ssdp"),
                      result.population[i].policy);
    }
  } catch (const std::exception& e) {
    jsonl.flush();
    metrics.flush();
    write_text(dir / "status.txt", std::string("failed: ") + e.what() + "\n");
    throw;
  }
  write_text(dir / "status.txt", "complete\n");
  return result;
}

}  // namespace ssdlab
