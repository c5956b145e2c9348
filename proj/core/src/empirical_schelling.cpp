#include "ssdlab/empirical_schelling.hpp"

#include <cmath>
#include <memory>
#include <numeric>

#include "ssdlab/errors.hpp"
#include "ssdlab/scripted_policies.hpp"

namespace ssdlab {

std::vector<bool> cooperator_roles(int agents, int cooperators, int rotation) {
  std::vector<bool> roles(static_cast<std::size_t>(agents), false);
  for (int j = 0; j < cooperators; ++j) {
    roles[static_cast<std::size_t>((rotation + j) % agents)] = true;
  }
  return roles;
}

EnvironmentConfig enforce_roles(const EnvironmentConfig& base, const std::vector<bool>& cooperator) {
  EnvironmentConfig config = base;
  switch (base.kind) {
    case EnvKind::Cleanup: config.cleanup.can_clean = cooperator; break;
    case EnvKind::Harvest: config.harvest.restricted = cooperator; break;
    default:
      throw ConfigError("empirical Schelling diagrams support cleanup and harvest only, not " +
                        std::string(to_string(base.kind)));
  }
  return config;
}

MeanError mean_and_error(const std::vector<double>& samples) {
  if (samples.size() < 2) throw StatisticsError("need at least 2 samples for a standard error");
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

namespace {

double role_mean(const std::vector<double>& returns, const std::vector<bool>& roles, bool want) {
  double sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < returns.size(); ++i) {
    if (roles[i] != want) continue;
    sum += returns[i];
    ++count;
  }
  return sum / count;
}

std::vector<std::unique_ptr<ScriptedPolicy>> scripted_population(
    const EnvironmentConfig& config, const std::vector<bool>& roles, const EmpiricalOptions& options) {
  std::vector<std::unique_ptr<ScriptedPolicy>> policies;
  for (bool coop : roles) {
    if (config.kind == EnvKind::Cleanup) {
      if (coop) {
        policies.push_back(std::make_unique<RiverCleaner>(options.clean_start_fraction));
      } else {
        policies.push_back(std::make_unique<AppleSeeker>());
      }
    } else if (coop) {
      policies.push_back(std::make_unique<AppleSeeker>(config.harvest.restricted_min_neighbors,
                                                       config.harvest.neighborhood_radius));
    } else {
      policies.push_back(std::make_unique<AppleSeeker>());
    }
  }
  return policies;
}

PopulationSamples run_scripted(const EnvironmentConfig& base, int agents, int cooperators,
                               const EmpiricalOptions& options) {
  PopulationSamples out;
  out.cooperators = cooperators;
  for (int e = 0; e < options.episodes_per_point; ++e) {
    const auto roles = cooperator_roles(agents, cooperators, e);
    const auto config = enforce_roles(base, roles);
    auto env = make_environment(config);
    auto policies = scripted_population(config, roles, options);
    const auto seed = mix_seed(mix_seed(options.seed, static_cast<std::uint64_t>(cooperators)),
                               static_cast<std::uint64_t>(e));
    const auto returns = run_scripted_episode(*env, policies, seed);
    if (cooperators > 0) out.cooperator_returns.push_back(role_mean(returns, roles, true));
    if (cooperators < agents) out.defector_returns.push_back(role_mean(returns, roles, false));
  }
  return out;
}

PopulationSamples run_trained(const EnvironmentConfig& base, int agents, int cooperators,
                              const EmpiricalOptions& options) {
  PopulationSamples out;
  out.cooperators = cooperators;
  const auto roles = cooperator_roles(agents, cooperators, 0);
  const auto config = enforce_roles(base, roles);
  const auto env = make_environment(config);
  const auto point_seed = mix_seed(options.seed, static_cast<std::uint64_t>(cooperators));

  const std::vector<IAParams> selfish(static_cast<std::size_t>(agents), IAParams::selfish());
  auto population = make_population(*env, options.learner, selfish, point_seed);
  if (config.kind == EnvKind::Cleanup) {
    for (std::size_t i = 0; i < roles.size(); ++i) {
      if (roles[i]) population[i].group_reward = options.group_reward;
    }
  }

  TrainOptions training;
  training.learner = options.learner;
  training.episodes = options.training_episodes;
  training.seed = point_seed;
  train(*env, population, training);

  TrainOptions eval = training;
  eval.learner.workers = 1;
  eval.episodes = options.episodes_per_point;
  eval.seed = mix_seed(point_seed, 0xe7a1);
  const auto log = evaluate(*env, population, eval);
  for (const auto& ep : log.episodes) {
    std::vector<double> returns;
    for (const auto& a : ep.agents) returns.push_back(a.extrinsic_return);
    if (cooperators > 0) out.cooperator_returns.push_back(role_mean(returns, roles, true));
    if (cooperators < agents) out.defector_returns.push_back(role_mean(returns, roles, false));
  }
  return out;
}

}  // namespace

EmpiricalDiagram empirical_schelling(const EnvironmentConfig& base, const EmpiricalOptions& options) {
  if (options.episodes_per_point < 2) {
    throw StatisticsError("empirical Schelling diagrams need at least 2 episodes per point");
  }
  const int n = make_environment(enforce_roles(base, {}))->num_agents();
  if (n < 2) throw DomainError("empirical Schelling diagrams need at least 2 players");

  EmpiricalDiagram result;
  auto& d = result.diagram;
  d.num_players = n;
  d.cooperator.assign(static_cast<std::size_t>(n), 0.0);
  d.defector.assign(static_cast<std::size_t>(n), 0.0);
  d.cooperator_stderr.assign(static_cast<std::size_t>(n), 0.0);
  d.defector_stderr.assign(static_cast<std::size_t>(n), 0.0);

  for (int c = 0; c <= n; ++c) {
    auto samples = options.mode == Enforcement::Scripted ? run_scripted(base, n, c, options)
                                                         : run_trained(base, n, c, options);
    if (c > 0) {
      const auto me = mean_and_error(samples.cooperator_returns);
      d.cooperator[static_cast<std::size_t>(c - 1)] = me.mean;
      d.cooperator_stderr[static_cast<std::size_t>(c - 1)] = me.standard_error;
    }
    if (c < n) {
      const auto me = mean_and_error(samples.defector_returns);
      d.defector[static_cast<std::size_t>(c)] = me.mean;
      d.defector_stderr[static_cast<std::size_t>(c)] = me.standard_error;
    }
    result.populations.push_back(std::move(samples));
  }
  return result;
}

}  // namespace ssdlab
