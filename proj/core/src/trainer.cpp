#include "ssdlab/trainer.hpp"

#include <exception>
#include <memory>
#include <numeric>
#include <thread>

#include <nlohmann/json.hpp>

#include "ssdlab/config.hpp"
#include "ssdlab/errors.hpp"

namespace ssdlab {

namespace {

constexpr std::uint64_t kActionStream = 0x5eed0ac7;

void check_population(const Environment& env, const std::vector<AgentSetup>& population) {
  const int n = env.num_agents();
  if (static_cast<int>(population.size()) != n) {
    throw ConfigError("population has " + std::to_string(population.size()) +
                      " agents but the environment has " + std::to_string(n));
  }
  for (std::size_t i = 0; i < population.size(); ++i) {
    const auto& shape = population[i].policy.shape;
    if (shape.input_dim != feature_size(n) || shape.num_actions != env.num_actions()) {
      throw ConfigError("agent " + std::to_string(i) + " policy shape does not match the environment");
    }
    population[i].ia.validate();
  }
}

struct SegmentOutput {
  std::vector<Trajectory> trajectories;  // empty when the worker had nothing to do
  std::optional<EpisodeLog> finished;
};

// One environment copy plus everything that persists across segments.
class Worker {
 public:
  Worker(const Environment& prototype, int index, const TrainOptions& options)
      : env_(prototype.clone()),
        index_(index),
        options_(options),
        n_(static_cast<std::size_t>(prototype.num_agents())),
        delay_(n_, options.intrinsic_delay),
        rng_(mix_seed(options.seed ^ kActionStream, static_cast<std::uint64_t>(index))) {}

  bool exhausted() const { return !in_episode_ && next_episode_ >= options_.episodes; }

  SegmentOutput collect(const std::vector<AgentSetup>& population) {
    SegmentOutput out;
    if (exhausted()) return out;
    if (!in_episode_) begin_episode(population);

    const int k = options_.learner.k;
    out.trajectories.resize(n_);
    std::vector<Action> actions(n_);
    std::vector<int> choices(n_);
    const auto action_set = env_->action_set();
    bool done = false;

    for (int s = 0; s < k && !done; ++s) {
      for (std::size_t i = 0; i < n_; ++i) {
        choices[i] = act(population[i].policy, features_[i], rng_);
        actions[i] = action_set[static_cast<std::size_t>(choices[i])];
      }
      StepResult result = env_->step(actions);
      const auto& r = result.extrinsic_rewards;

      traces_ = update_traces(traces_, r, ias_);
      std::vector<double> intrinsic(n_, 0.0);
      if (n_ >= 2) {
        const auto u = subjective_reward(r, traces_, ias_);
        for (std::size_t i = 0; i < n_; ++i) intrinsic[i] = u.values[i] - r[i];
      }
      const auto delivered = delay_.push(intrinsic);
      const int apples_total = std::accumulate(result.info.apples_eaten.begin(),
                                               result.info.apples_eaten.end(), 0);

      for (std::size_t i = 0; i < n_; ++i) {
        const double subjective = r[i] + delivered[i] + population[i].group_reward * apples_total;
        out.trajectories[i].steps.push_back(
            {std::move(features_[i]), choices[i], subjective, r[i]});
        auto& st = log_.agents[i];
        st.extrinsic_return += r[i];
        st.subjective_return += subjective;
        st.intrinsic_return += delivered[i];
        st.apples += result.info.apples_eaten[i];
        st.waste_cleaned += result.info.waste_cleaned[i];
        st.fines_landed += result.info.fines_landed[i];
        st.fines_received += result.info.fines_received[i];
        st.button_presses += result.info.button_presses[i];
        log_.record.waste_cleaned[i] += result.info.waste_cleaned[i];
        log_.record.apples_eaten[i] += result.info.apples_eaten[i];
        log_.record.fines_landed[i] += result.info.fines_landed[i];
      }
      log_.record.append(r);
      if (log_.replay) record_step(actions, result);

      refresh_features(result.observations);
      done = result.done;
    }

    for (std::size_t i = 0; i < n_; ++i) {
      auto& traj = out.trajectories[i];
      traj.terminal = done;
      traj.bootstrap_value = done ? 0.0 : forward(population[i].policy, features_[i]).value;
    }

    if (done) {
      log_.metrics = compute_metrics(log_.record);
      out.finished = std::move(log_);
      in_episode_ = false;
      ++next_episode_;
    }
    return out;
  }

 private:
  void begin_episode(const std::vector<AgentSetup>& population) {
    const int e = next_episode_;
    log_ = EpisodeLog{};
    log_.episode = e * options_.learner.workers + index_;
    log_.worker = index_;
    log_.env_seed = episode_seed(options_.seed, index_, e);
    log_.agents.assign(n_, {});
    log_.record = EpisodeRecord::empty(static_cast<int>(n_), env_->kind() == EnvKind::Cleanup);

    ias_.clear();
    for (const auto& a : population) ias_.push_back(a.ia);
    traces_ = RewardTrace::zeros(n_);
    delay_.clear();

    StepResult start = env_->reset(log_.env_seed);
    const bool record = options_.record_every > 0 &&
                        (e % options_.record_every == 0 || e == options_.episodes - 1);
    if (record) {
      log_.replay = RecordedEpisode{};
      log_.replay->env_seed = log_.env_seed;
      log_.replay->initial_checksum = checksum(env_->state());
    }
    refresh_features(start.observations);
    in_episode_ = true;
  }

  void refresh_features(std::vector<Observation>& observations) {
    features_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      observations[i].smoothed_rewards = traces_.values;
      features_[i] = encode_observation(observations[i], options_.learner.reward_feature_scale);
    }
  }

  void record_step(const std::vector<Action>& actions, const StepResult& result) {
    RecordedStep step;
    step.actions = actions;
    step.rewards = result.extrinsic_rewards;
    step.counters.resize(n_);
    const auto& info = result.info;
    for (std::size_t i = 0; i < n_; ++i) {
      step.counters[i] = {static_cast<std::uint16_t>(info.apples_eaten[i]),
                          static_cast<std::uint16_t>(info.waste_cleaned[i]),
                          static_cast<std::uint16_t>(info.fines_landed[i]),
                          static_cast<std::uint16_t>(info.fines_received[i]),
                          static_cast<std::uint16_t>(info.button_presses[i])};
    }
    step.checksum = checksum(env_->state());
    log_.replay->steps.push_back(std::move(step));
  }

  std::unique_ptr<Environment> env_;
  int index_;
  const TrainOptions& options_;
  std::size_t n_;
  IntrinsicDelayLine delay_;
  Rng rng_;

  bool in_episode_ = false;
  int next_episode_ = 0;
  std::vector<IAParams> ias_;
  RewardTrace traces_;
  std::vector<std::vector<double>> features_;
  EpisodeLog log_;
};

std::vector<SegmentOutput> collect_round(std::vector<Worker>& workers,
                                         const std::vector<AgentSetup>& population) {
  std::vector<SegmentOutput> outputs(workers.size());
  if (workers.size() == 1) {
    outputs[0] = workers[0].collect(population);
    return outputs;
  }
  std::vector<std::exception_ptr> errors(workers.size());
  std::vector<std::thread> threads;
  threads.reserve(workers.size());
  for (std::size_t w = 0; w < workers.size(); ++w) {
    threads.emplace_back([&, w] {
      try {
        outputs[w] = workers[w].collect(population);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return outputs;
}

TrainingLog run(const Environment& prototype, std::vector<AgentSetup>& population,
                const TrainOptions& options, bool learn) {
  options.learner.validate();
  if (options.episodes < 0) throw ConfigError("episodes must be >= 0");
  if (options.intrinsic_delay < 0) throw ConfigError("intrinsic_delay must be >= 0");
  check_population(prototype, population);

  TrainingLog log;
  if (options.episodes == 0) return log;

  std::vector<Worker> workers;
  workers.reserve(static_cast<std::size_t>(options.learner.workers));
  for (int w = 0; w < options.learner.workers; ++w) workers.emplace_back(prototype, w, options);

  auto any_left = [&] {
    for (const auto& w : workers) {
      if (!w.exhausted()) return true;
    }
    return false;
  };

  while (any_left()) {
    auto outputs = collect_round(workers, population);
    if (learn) {
      std::vector<std::vector<Trajectory>> per_worker;
      for (auto& o : outputs) {
        if (!o.trajectories.empty()) per_worker.push_back(std::move(o.trajectories));
      }
      apply_population_update(population, per_worker, options.learner);
    }
    for (auto& o : outputs) {
      if (!o.finished) continue;
      for (std::size_t i = 0; i < population.size(); ++i) {
        o.finished->agents[i].param_checksum = population[i].policy.checksum();
      }
      if (options.on_episode) options.on_episode(*o.finished);
      log.episodes.push_back(std::move(*o.finished));
    }
  }
  return log;
}

}  // namespace

ModelShape model_shape_for(const Environment& env, const LearnerConfig& config) {
  ModelShape shape;
  shape.kind = config.approximator;
  shape.input_dim = feature_size(env.num_agents());
  shape.num_actions = env.num_actions();
  shape.hidden = config.hidden;
  shape.table_size = config.table_size;
  return shape;
}

std::vector<AgentSetup> make_population(const Environment& env, const LearnerConfig& config,
                                        std::span<const IAParams> ia, std::uint64_t seed) {
  if (static_cast<int>(ia.size()) != env.num_agents()) {
    throw ConfigError("expected " + std::to_string(env.num_agents()) +
                      " inequity settings, got " + std::to_string(ia.size()));
  }
  const ModelShape shape = model_shape_for(env, config);
  std::vector<AgentSetup> population(ia.size());
  for (std::size_t i = 0; i < ia.size(); ++i) {
    Rng rng(mix_seed(seed, i));
    population[i].policy = PolicyParams::initialize(shape, rng);
    population[i].ia = ia[i];
  }
  return population;
}

std::uint64_t episode_seed(std::uint64_t seed, int worker, int episode) {
  return mix_seed(mix_seed(seed, static_cast<std::uint64_t>(worker)),
                  static_cast<std::uint64_t>(episode));
}

void apply_population_update(std::vector<AgentSetup>& population,
                             const std::vector<std::vector<Trajectory>>& per_worker,
                             const LearnerConfig& config) {
  for (std::size_t i = 0; i < population.size(); ++i) {
    auto& agent = population[i];
    if (!agent.learning) continue;
    std::vector<double> total(agent.policy.weights.size(), 0.0);
    bool any = false;
    for (const auto& trajectories : per_worker) {
      const auto& traj = trajectories.at(i);
      if (traj.steps.empty()) continue;
      const auto grad = compute_gradient(agent.policy, traj, config);
      for (std::size_t p = 0; p < total.size(); ++p) total[p] += grad.values[p];
      any = true;
    }
    if (any) apply_gradient(agent.policy, total, config);
  }
}

TrainingLog train(const Environment& prototype, std::vector<AgentSetup>& population,
                  const TrainOptions& options) {
  return run(prototype, population, options, true);
}

TrainingLog evaluate(const Environment& prototype, const std::vector<AgentSetup>& population,
                     const TrainOptions& options) {
  auto copy = population;
  return run(prototype, copy, options, false);
}

std::string TrainingLog::to_jsonl() const {
  std::string out;
  for (const auto& ep : episodes) {
    for (std::size_t i = 0; i < ep.agents.size(); ++i) {
      const auto& a = ep.agents[i];
      nlohmann::ordered_json j;
      j["episode"] = ep.episode;
      j["worker"] = ep.worker;
      j["env_seed"] = hex64(ep.env_seed);
      j["agent"] = i;
      j["extrinsic_return"] = a.extrinsic_return;
      j["subjective_return"] = a.subjective_return;
      j["intrinsic_return"] = a.intrinsic_return;
      j["apples"] = a.apples;
      j["waste_cleaned"] = a.waste_cleaned;
      j["fines_landed"] = a.fines_landed;
      j["fines_received"] = a.fines_received;
      j["button_presses"] = a.button_presses;
      j["param_checksum"] = hex64(a.param_checksum);
      j["T"] = ep.record.T;
      j["utilitarian"] = ep.metrics.utilitarian;
      j["equality"] = ep.metrics.equality;
      j["sustainability"] = ep.metrics.sustainability;
      if (ep.metrics.contribution) {
        j["contribution"] = *ep.metrics.contribution;
      } else {
        j["contribution"] = nullptr;
      }
      j["negative_total"] = ep.metrics.negative_total;
      out += j.dump();
      out += '\n';
    }
  }
  return out;
}

}  // namespace ssdlab
