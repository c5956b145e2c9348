#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "ssdlab/errors.hpp"
#include "ssdlab/trainer.hpp"

using namespace ssdlab;

namespace {

std::unique_ptr<Environment> mini(EnvKind kind, int length = 60) {
  EnvironmentConfig c;
  c.kind = kind;
  c.map = kind == EnvKind::Cleanup ? "cleanup_mini" : "harvest_mini";
  c.cleanup.episode_length = length;
  c.harvest.episode_length = length;
  return make_environment(c);
}

LearnerConfig small_learner(int workers = 1) {
  LearnerConfig l;
  l.k = 10;
  l.workers = workers;
  l.learning_rate = 0.001;
  l.max_grad_norm = 5.0;
  return l;
}

std::vector<AgentSetup> population(const Environment& env, const LearnerConfig& l, double beta,
                                   std::uint64_t seed) {
  const std::vector<IAParams> ia(static_cast<std::size_t>(env.num_agents()),
                                 IAParams{0.0, beta, 0.975, 0.99});
  return make_population(env, l, ia, seed);
}

}  // namespace

TEST(Trainer, SameSeedGivesIdenticalLogs) {
  auto env = mini(EnvKind::Harvest);
  TrainOptions o;
  o.learner = small_learner();
  o.episodes = 3;
  o.seed = 21;
  auto a = population(*env, o.learner, 0.05, 1);
  auto b = population(*env, o.learner, 0.05, 1);
  const auto la = train(*env, a, o).to_jsonl();
  const auto lb = train(*env, b, o).to_jsonl();
  EXPECT_EQ(la, lb);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].policy.weights, b[i].policy.weights);

  o.seed = 22;
  auto c = population(*env, o.learner, 0.05, 1);
  EXPECT_NE(train(*env, c, o).to_jsonl(), la);
}

TEST(Trainer, ZeroEpisodesLeavesParamsAlone) {
  auto env = mini(EnvKind::Cleanup);
  TrainOptions o;
  o.learner = small_learner();
  auto pop = population(*env, o.learner, 0.0, 3);
  const auto before = pop[0].policy.weights;
  const auto log = train(*env, pop, o);
  EXPECT_TRUE(log.episodes.empty());
  EXPECT_EQ(pop[0].policy.weights, before);
}

TEST(Trainer, FrozenAgentsDoNotChange) {
  auto env = mini(EnvKind::Harvest);
  TrainOptions o;
  o.learner = small_learner();
  o.episodes = 2;
  auto pop = population(*env, o.learner, 0.0, 4);
  pop[2].learning = false;
  const auto frozen = pop[2].policy.weights;
  const auto other = pop[1].policy.weights;
  train(*env, pop, o);
  EXPECT_EQ(pop[2].policy.weights, frozen);
  EXPECT_NE(pop[1].policy.weights, other);
}

TEST(Trainer, UpdatesAreIndependentPerAgent) {
  auto env = mini(EnvKind::Harvest);
  const auto l = small_learner();
  Rng rng(5);
  auto pop = population(*env, l, 0.0, 6);
  std::vector<std::vector<Trajectory>> experience(1);
  for (int i = 0; i < env->num_agents(); ++i) {
    Trajectory t;
    for (int s = 0; s < 4; ++s) {
      TrajectoryStep step;
      step.features.assign(static_cast<std::size_t>(feature_size(env->num_agents())), 0.0);
      step.features[static_cast<std::size_t>(rng.below(step.features.size()))] = 1.0;
      step.action = static_cast<int>(rng.below(static_cast<std::uint64_t>(env->num_actions())));
      step.subjective_reward = rng.uniform();
      t.steps.push_back(step);
    }
    experience[0].push_back(t);
  }
  auto all = pop;
  apply_population_update(all, experience, l);
  auto only_zero = pop;
  for (std::size_t i = 1; i < only_zero.size(); ++i) only_zero[i].learning = false;
  apply_population_update(only_zero, experience, l);
  EXPECT_EQ(all[0].policy.weights, only_zero[0].policy.weights);
  EXPECT_NE(all[0].policy.weights, pop[0].policy.weights);
}

TEST(Trainer, MetricsUseExtrinsicRewardsOnly) {
  auto env = mini(EnvKind::Harvest);
  TrainOptions o;
  o.learner = small_learner();
  o.episodes = 2;
  std::vector<IAParams> ia(5, IAParams{5.0, 0.05, 0.975, 0.99});
  auto pop = make_population(*env, o.learner, ia, 9);
  const auto log = train(*env, pop, o);
  for (const auto& ep : log.episodes) {
    const auto returns = ep.record.returns();
    double total = 0.0;
    for (std::size_t i = 0; i < ep.agents.size(); ++i) {
      EXPECT_DOUBLE_EQ(ep.agents[i].extrinsic_return, returns[i]);
      total += returns[i];
    }
    EXPECT_DOUBLE_EQ(ep.metrics.utilitarian, total / ep.record.T);
  }
}

TEST(Trainer, SelfishAgentsHaveNoIntrinsicReward) {
  auto env = mini(EnvKind::Cleanup);
  TrainOptions o;
  o.learner = small_learner();
  o.episodes = 2;
  auto pop = population(*env, o.learner, 0.0, 2);
  for (const auto& ep : train(*env, pop, o).episodes) {
    for (const auto& a : ep.agents) {
      EXPECT_EQ(a.intrinsic_return, 0.0);
      EXPECT_DOUBLE_EQ(a.subjective_return, a.extrinsic_return);
    }
  }
}

TEST(Trainer, GroupRewardStaysOutOfExtrinsicReturns) {
  auto env = mini(EnvKind::Harvest, 200);
  TrainOptions o;
  o.learner = small_learner();
  o.episodes = 1;
  auto pop = population(*env, o.learner, 0.0, 2);
  for (auto& a : pop) a.group_reward = 1.0;
  const auto log = train(*env, pop, o);
  const auto& ep = log.episodes.front();
  int apples = 0;
  for (const auto& a : ep.agents) apples += a.apples;
  ASSERT_GT(apples, 0);
  for (const auto& a : ep.agents) {
    EXPECT_NEAR(a.subjective_return - a.extrinsic_return, apples, 1e-9);
  }
}

TEST(Trainer, MultipleWorkersNumberEpisodes) {
  auto env = mini(EnvKind::Harvest, 30);
  TrainOptions o;
  o.learner = small_learner(2);
  o.episodes = 2;
  auto pop = population(*env, o.learner, 0.0, 1);
  const auto log = train(*env, pop, o);
  ASSERT_EQ(log.episodes.size(), 4u);
  std::vector<int> numbers;
  for (const auto& ep : log.episodes) numbers.push_back(ep.episode);
  std::sort(numbers.begin(), numbers.end());
  EXPECT_EQ(numbers, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_NE(log.episodes[0].env_seed, log.episodes[1].env_seed);
}

TEST(Trainer, EvaluateDoesNotLearn) {
  auto env = mini(EnvKind::Harvest, 30);
  TrainOptions o;
  o.learner = small_learner();
  o.episodes = 2;
  const auto pop = population(*env, o.learner, 0.0, 1);
  const auto before = pop[0].policy.checksum();
  const auto log = evaluate(*env, pop, o);
  EXPECT_EQ(log.episodes.size(), 2u);
  EXPECT_EQ(pop[0].policy.checksum(), before);
  for (const auto& ep : log.episodes) EXPECT_EQ(ep.agents[0].param_checksum, before);
}

TEST(Trainer, RejectsMismatchedPopulations) {
  auto env = mini(EnvKind::Harvest, 30);
  TrainOptions o;
  o.learner = small_learner();
  o.episodes = 1;
  auto pop = population(*env, o.learner, 0.0, 1);
  pop.pop_back();
  EXPECT_THROW(train(*env, pop, o), ConfigError);
  auto wrong = population(*env, o.learner, 0.0, 1);
  Rng rng(1);
  wrong[0].policy = PolicyParams::initialize({ApproximatorKind::Linear, 3, 9}, rng);
  EXPECT_THROW(train(*env, wrong, o), ConfigError);
}

TEST(Trainer, RecordsRequestedEpisodes) {
  auto env = mini(EnvKind::Cleanup, 20);
  TrainOptions o;
  o.learner = small_learner();
  o.episodes = 5;
  o.record_every = 2;
  auto pop = population(*env, o.learner, 0.0, 1);
  const auto log = train(*env, pop, o);
  std::vector<int> recorded;
  for (const auto& ep : log.episodes) {
    if (ep.replay) {
      recorded.push_back(ep.episode);
      EXPECT_EQ(ep.replay->steps.size(), 20u);
    }
  }
  EXPECT_EQ(recorded, (std::vector<int>{0, 2, 4}));
}
