#include "ssdlab/scripted_policies.hpp"

#include <algorithm>
#include <array>
#include <deque>

#include "ssdlab/cleanup.hpp"
#include "ssdlab/errors.hpp"
#include "ssdlab/harvest.hpp"

namespace ssdlab {

namespace {

constexpr std::array<Pos, 4> kSteps{{{-1, 0}, {0, 1}, {1, 0}, {0, -1}}};

std::optional<Pos> bfs(const GridState& state, int agent, const std::function<bool(Pos)>& goal,
                       bool avoid_agents) {
  const Pos start = state.agents[static_cast<std::size_t>(agent)].pos;
  if (goal(start)) return std::nullopt;
  std::vector<int> parent(state.cells.size(), -1);
  std::deque<Pos> frontier{start};
  parent[state.index(start)] = static_cast<int>(state.index(start));
  while (!frontier.empty()) {
    const Pos p = frontier.front();
    frontier.pop_front();
    for (Pos d : kSteps) {
      const Pos q = p + d;
      if (!state.walkable(q) || parent[state.index(q)] != -1) continue;
      if (avoid_agents && state.agent_at(q)) continue;
      // Buttons are only ever entered on purpose.
      if (state.at(q) == Cell::Button && !goal(q)) continue;
      parent[state.index(q)] = static_cast<int>(state.index(p));
      if (goal(q)) {
        Pos step = q;
        while (state.pos_of(static_cast<std::size_t>(parent[state.index(step)])) != start) {
          step = state.pos_of(static_cast<std::size_t>(parent[state.index(step)]));
        }
        return step;
      }
      frontier.push_back(q);
    }
  }
  return std::nullopt;
}

Action jitter(Rng& rng) {
  constexpr std::array<Action, 4> moves{Action::Forward, Action::Backward, Action::StepLeft,
                                        Action::StepRight};
  return moves[rng.below(moves.size())];
}

Action walk(const GridState& state, int agent, const std::function<bool(Pos)>& goal, double jitter_prob,
            Rng& rng) {
  const auto& body = state.agents[static_cast<std::size_t>(agent)];
  const bool wobble = jitter_prob > 0.0 && rng.bernoulli(jitter_prob);
  if (goal(body.pos)) return Action::Noop;
  auto step = first_step(state, agent, goal);
  if (wobble) return jitter(rng);
  if (!step) return Action::Noop;
  return move_toward(body.orientation, *step - body.pos);
}

}  // namespace

Action move_toward(Orientation facing, Pos dir) {
  if (dir == direction(facing)) return Action::Forward;
  if (dir == Pos{0, 0} - direction(facing)) return Action::Backward;
  if (dir == direction(rotate_left(facing))) return Action::StepLeft;
  if (dir == direction(rotate_right(facing))) return Action::StepRight;
  return Action::Noop;
}

std::optional<Pos> first_step(const GridState& state, int agent,
                              const std::function<bool(Pos)>& goal) {
  if (auto s = bfs(state, agent, goal, true)) return s;
  return bfs(state, agent, goal, false);
}

int clean_hits(const GridState& state, Pos p, Orientation o, int beam_length) {
  int hits = 0;
  Pos q = p;
  for (int i = 0; i < beam_length; ++i) {
    q = q + direction(o);
    if (!state.walkable(q)) break;
    if (state.at(q) == Cell::Waste) ++hits;
  }
  return hits;
}

Action AppleSeeker::act(const Environment& env, int agent, Rng& rng) {
  const auto& state = env.state();
  auto edible = [&](Pos p) {
    if (state.at(p) != Cell::Apple) return false;
    return min_neighbors_ <= 0 || apples_within(state, p, radius_) >= min_neighbors_;
  };
  return walk(state, agent, edible, jitter_, rng);
}

Action RiverCleaner::act(const Environment& env, int agent, Rng& rng) {
  const auto& state = env.state();
  const double fraction = waste_fraction(state);
  if (fraction > start_) cleaning_ = true;
  if (fraction <= stop_) cleaning_ = false;
  if (!cleaning_) return harvest_.act(env, agent, rng);

  const int beam = env.beam_length();
  auto best_hits = [&](Pos p) {
    int best = 0;
    for (int o = 0; o < 4; ++o) best = std::max(best, clean_hits(state, p, static_cast<Orientation>(o), beam));
    return best;
  };
  const auto& body = state.agents[static_cast<std::size_t>(agent)];
  if (best_hits(body.pos) > 0) {
    if (clean_hits(state, body.pos, body.orientation, beam) == best_hits(body.pos)) {
      return Action::FireClean;
    }
    // Turn toward the best direction; right unless a single left turn gets there.
    for (int o = 0; o < 4; ++o) {
      const auto facing = static_cast<Orientation>(o);
      if (clean_hits(state, body.pos, facing, beam) != best_hits(body.pos)) continue;
      return facing == rotate_left(body.orientation) ? Action::RotateLeft : Action::RotateRight;
    }
  }
  return walk(state, agent, [&](Pos p) { return best_hits(p) > 0; }, kScriptedJitter, rng);
}

Action ButtonPresser::act(const Environment& env, int agent, Rng& rng) {
  const auto& state = env.state();
  return walk(state, agent, [&](Pos p) { return state.at(p) == Cell::Button; }, jitter_, rng);
}

std::vector<double> run_scripted_episode(Environment& env,
                                         std::vector<std::unique_ptr<ScriptedPolicy>>& policies,
                                         std::uint64_t seed) {
  const int n = env.num_agents();
  if (static_cast<int>(policies.size()) != n) {
    throw ConfigError("need one scripted policy per agent");
  }
  env.reset(seed);
  for (auto& p : policies) p->reset();
  Rng rng(mix_seed(seed, 0x5c217));
  const auto allowed = env.action_set();
  std::vector<double> returns(static_cast<std::size_t>(n), 0.0);
  std::vector<Action> actions(static_cast<std::size_t>(n));
  while (!env.done()) {
    for (int i = 0; i < n; ++i) {
      Action a = policies[static_cast<std::size_t>(i)]->act(env, i, rng);
      if (std::find(allowed.begin(), allowed.end(), a) == allowed.end()) a = Action::Noop;
      actions[static_cast<std::size_t>(i)] = a;
    }
    const auto result = env.step(actions);
    for (int i = 0; i < n; ++i) returns[static_cast<std::size_t>(i)] += result.extrinsic_rewards[static_cast<std::size_t>(i)];
  }
  return returns;
}

}  // namespace ssdlab
