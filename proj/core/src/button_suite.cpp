#include "ssdlab/button_suite.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <unordered_map>

#include "ssdlab/button_games.hpp"
#include "ssdlab/config.hpp"
#include "ssdlab/errors.hpp"
#include "ssdlab/scripted_policies.hpp"
#include "ssdlab/trainer.hpp"

namespace ssdlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

const ButtonGameEnv& as_button_game(const Environment& env) {
  const auto* game = dynamic_cast<const ButtonGameEnv*>(&env);
  if (!game) {
    throw ConfigError("button analysis needs dictate, give or take, not " +
                      std::string(to_string(env.kind())));
  }
  return *game;
}

enum class Mode { Any, NoPress, Press, EarlyPress };

class Search {
 public:
  Search(int horizon, double gamma, Mode mode) : horizon_(horizon), gamma_(gamma), mode_(mode) {}

  double value(const ButtonGameEnv& env, int t, bool pressed, bool early) {
    if (t >= horizon_ || env.done()) return satisfied(pressed, early) ? 0.0 : kNegInf;
    const std::uint64_t key = checksum(env.state()) ^ (pressed ? 0x9e3779b97f4a7c15ULL : 0) ^
                              (early ? 0xc2b2ae3d27d4eb4fULL : 0);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const int owner = env.button_owner();
    const int owner_apples = env.apples_in_room(owner);
    double best = kNegInf;
    for (Action a : env.action_set()) {
      auto next = env.clone();
      std::array<Action, 2> actions{Action::Noop, Action::Noop};
      actions[static_cast<std::size_t>(owner)] = a;
      const auto result = next->step(actions);
      const bool press_now = result.info.button_presses[static_cast<std::size_t>(owner)] > 0;
      if (press_now && mode_ == Mode::NoPress) continue;
      const double r = result.extrinsic_rewards[static_cast<std::size_t>(owner)];
      const double rest = value(static_cast<const ButtonGameEnv&>(*next), t + 1,
                                pressed || press_now, early || (press_now && owner_apples > 0));
      if (rest == kNegInf) continue;
      best = std::max(best, r + gamma_ * rest);
    }
    memo_.emplace(key, best);
    return best;
  }

  std::size_t states() const { return memo_.size(); }

 private:
  bool satisfied(bool pressed, bool early) const {
    switch (mode_) {
      case Mode::Press: return pressed;
      case Mode::EarlyPress: return early;
      default: return true;
    }
  }

  int horizon_;
  double gamma_;
  Mode mode_;
  std::unordered_map<std::uint64_t, double> memo_;
};

}  // namespace

SelfishSearch selfish_button_search(const EnvironmentConfig& config, int horizon, double gamma) {
  if (horizon < 1) throw ConfigError("search horizon must be >= 1");
  auto env = make_environment(config);
  const auto& game = as_button_game(*env);
  env->reset(0);

  SelfishSearch out;
  auto run = [&](Mode mode) {
    Search s(horizon, gamma, mode);
    const double v = s.value(game, 0, false, false);
    out.states += s.states();
    return v;
  };
  out.best = run(Mode::Any);
  out.best_without_press = run(Mode::NoPress);
  out.best_with_press = run(Mode::Press);
  out.best_with_early_press = run(Mode::EarlyPress);
  return out;
}

namespace {

// Presses once, then harvests.
class PressThenHarvest : public ScriptedPolicy {
 public:
  Action act(const Environment& env, int agent, Rng& rng) override {
    if (!as_button_game(env).pressed()) return press_.act(env, agent, rng);
    return harvest_.act(env, agent, rng);
  }

 private:
  ButtonPresser press_{0.0};
  AppleSeeker harvest_{0, 2, 0.0};
};

}  // namespace

ScriptedButtonOutcome scripted_button_episode(const EnvironmentConfig& config, bool owner_presses,
                                              std::span<const IAParams> ia, std::uint64_t seed) {
  auto env = make_environment(config);
  const auto& game = as_button_game(*env);
  if (ia.size() != 2) throw ConfigError("button games need inequity settings for 2 agents");
  const int owner = game.button_owner();

  std::vector<std::unique_ptr<ScriptedPolicy>> policies(2);
  for (int i = 0; i < 2; ++i) {
    if (i == owner && owner_presses) {
      policies[static_cast<std::size_t>(i)] = std::make_unique<PressThenHarvest>();
    } else {
      policies[static_cast<std::size_t>(i)] = std::make_unique<AppleSeeker>(0, 2, 0.0);
    }
  }

  ScriptedButtonOutcome out;
  env->reset(seed);
  Rng rng(seed);
  auto traces = RewardTrace::zeros(2);
  std::vector<Action> actions(2);
  while (!env->done()) {
    for (int i = 0; i < 2; ++i) {
      actions[static_cast<std::size_t>(i)] = policies[static_cast<std::size_t>(i)]->act(*env, i, rng);
    }
    const auto result = env->step(actions);
    const auto& r = result.extrinsic_rewards;
    traces = update_traces(traces, r, ia);
    const auto u = subjective_reward(r, traces, ia);
    for (std::size_t i = 0; i < 2; ++i) {
      out.extrinsic[i] += r[i];
      out.subjective[i] += u.values[i];
    }
    if (result.info.button_presses[static_cast<std::size_t>(owner)] > 0) out.pressed = true;
    ++out.steps;
  }
  return out;
}

std::vector<ButtonCondition> run_button_suite(const EnvironmentConfig& config,
                                              const ButtonSuiteOptions& options) {
  if (!is_button_game(config.kind)) {
    throw ConfigError("the button suite runs on dictate, give or take, not " +
                      std::string(to_string(config.kind)));
  }
  const auto env = make_environment(config);
  const int owner = as_button_game(*env).button_owner();
  const int other = 1 - owner;

  const std::array<std::pair<std::string, IAParams>, 3> populations{{
      {"selfish", IAParams::selfish()},
      {"aia", options.aia},
      {"dia", options.dia},
  }};

  std::vector<ButtonCondition> rows;
  std::uint64_t stream = 0;
  for (const auto& [name, ia] : populations) {
    const std::vector<IAParams> both(2, ia);
    const auto seed = mix_seed(options.seed, stream++);
    auto population = make_population(*env, options.learner, both, seed);

    TrainOptions training;
    training.learner = options.learner;
    training.episodes = options.training_episodes;
    training.seed = seed;
    train(*env, population, training);

    TrainOptions eval = training;
    eval.learner.workers = 1;
    eval.episodes = options.evaluation_episodes;
    eval.seed = mix_seed(seed, 0xe7a1);
    const auto log = evaluate(*env, population, eval);

    ButtonCondition row;
    row.game = std::string(to_string(config.kind));
    row.population = name;
    row.episodes = static_cast<int>(log.episodes.size());
    int presses = 0;
    for (const auto& ep : log.episodes) {
      if (ep.agents[static_cast<std::size_t>(owner)].button_presses > 0) ++presses;
      row.owner_return += ep.agents[static_cast<std::size_t>(owner)].extrinsic_return;
      row.other_return += ep.agents[static_cast<std::size_t>(other)].extrinsic_return;
    }
    if (row.episodes > 0) {
      row.press_frequency = static_cast<double>(presses) / row.episodes;
      row.owner_return /= row.episodes;
      row.other_return /= row.episodes;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string button_rows(const std::vector<ButtonCondition>& rows) {
  std::string out;
  for (const auto& r : rows) {
    out += r.game + ',' + r.population + ',' + std::to_string(r.episodes) + ',' +
           format_double(r.press_frequency) + ',' + format_double(r.owner_return) + ',' +
           format_double(r.other_return) + '\n';
  }
  return out;
}

}  // namespace ssdlab
