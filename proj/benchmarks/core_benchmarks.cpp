#include <benchmark/benchmark.h>

#include <vector>

#include "ssdlab/actor_critic.hpp"
#include "ssdlab/environment.hpp"
#include "ssdlab/inequity.hpp"
#include "ssdlab/trainer.hpp"

using namespace ssdlab;

namespace {

void environment_step(benchmark::State& state, EnvKind kind, const char* map) {
  EnvironmentConfig c;
  c.kind = kind;
  c.map = map;
  auto env = make_environment(c);
  const auto actions = env->action_set();
  Rng rng(1);
  std::vector<Action> joint(static_cast<std::size_t>(env->num_agents()));
  std::uint64_t episode = 0;
  env->reset(episode);
  for (auto _ : state) {
    if (env->done()) env->reset(++episode);
    for (auto& a : joint) a = actions[rng.below(actions.size())];
    benchmark::DoNotOptimize(env->step(joint));
  }
}

void BM_CleanupStep(benchmark::State& state) { environment_step(state, EnvKind::Cleanup, "cleanup"); }
void BM_HarvestStep(benchmark::State& state) { environment_step(state, EnvKind::Harvest, "harvest"); }

void BM_Observe(benchmark::State& state) {
  auto env = make_environment("cleanup");
  env->reset(0);
  for (auto _ : state) benchmark::DoNotOptimize(env->observe(0));
}

void BM_FsUtility(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> rewards(n);
  for (std::size_t i = 0; i < n; ++i) rewards[i] = static_cast<double>(i % 3);
  const std::vector<IAParams> params(n);
  for (auto _ : state) benchmark::DoNotOptimize(fs_utility(rewards, params));
}

void BM_SubjectiveReward(benchmark::State& state) {
  const std::vector<double> rewards{1.0, 0.0, 0.0, -50.0, 1.0};
  const std::vector<IAParams> params(5);
  auto trace = RewardTrace::zeros(5);
  for (auto _ : state) {
    trace = update_traces(trace, rewards, params);
    benchmark::DoNotOptimize(subjective_reward(rewards, trace, params));
  }
}

void BM_Gradient(benchmark::State& state) {
  const auto kind = static_cast<ApproximatorKind>(state.range(0));
  EnvironmentConfig c;
  c.map = "cleanup_mini";
  auto env = make_environment(c);
  LearnerConfig config;
  config.approximator = kind;
  const auto shape = model_shape_for(*env, config);
  Rng rng(3);
  const auto params = PolicyParams::initialize(shape, rng);
  Trajectory traj;
  for (int s = 0; s < config.k; ++s) {
    TrajectoryStep step;
    step.features.resize(static_cast<std::size_t>(shape.input_dim));
    for (auto& f : step.features) f = rng.uniform();
    step.action = static_cast<int>(rng.below(static_cast<std::uint64_t>(shape.num_actions)));
    step.subjective_reward = rng.uniform();
    traj.steps.push_back(step);
  }
  for (auto _ : state) benchmark::DoNotOptimize(compute_gradient(params, traj, config));
  state.SetLabel(std::string(to_string(kind)));
}

}  // namespace

BENCHMARK(BM_CleanupStep);
BENCHMARK(BM_HarvestStep);
BENCHMARK(BM_Observe);
BENCHMARK(BM_FsUtility)->Arg(2)->Arg(5)->Arg(16);
BENCHMARK(BM_SubjectiveReward);
BENCHMARK(BM_Gradient)
    ->Arg(static_cast<int>(ApproximatorKind::Tabular))
    ->Arg(static_cast<int>(ApproximatorKind::Linear))
    ->Arg(static_cast<int>(ApproximatorKind::Mlp));

BENCHMARK_MAIN();
