#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ssdlab/environment.hpp"

namespace ssdlab {

// Probability of replacing a scripted action with a random move; breaks
// standoffs between agents blocking each other.
inline constexpr double kScriptedJitter = 0.05;

// Hand-written behaviour for enforced cooperation and defection. Policies see
// the full state, keep private per-episode state, and may use the supplied rng.
class ScriptedPolicy {
 public:
  virtual ~ScriptedPolicy() = default;
  virtual Action act(const Environment& env, int agent, Rng& rng) = 0;
  virtual void reset() {}
};

// Harvests the nearest apple. Also the Cleanup defector (the environment
// denies it the cleaning beam).
class AppleSeeker : public ScriptedPolicy {
 public:
  // Only apples with at least min_neighbors apples within `radius` are targets.
  explicit AppleSeeker(int min_neighbors = 0, int radius = 2, double jitter = kScriptedJitter)
      : min_neighbors_(min_neighbors), radius_(radius), jitter_(jitter) {}
  Action act(const Environment& env, int agent, Rng& rng) override;

 private:
  int min_neighbors_;
  int radius_;
  double jitter_;
};

// Cleanup cooperator: walks to the river and cleans once the waste fraction
// exceeds start_fraction, keeps cleaning until it falls to stop_fraction, and
// harvests otherwise.
class RiverCleaner : public ScriptedPolicy {
 public:
  RiverCleaner(double start_fraction = 0.15, double stop_fraction = 0.0)
      : start_(start_fraction), stop_(stop_fraction) {}
  Action act(const Environment& env, int agent, Rng& rng) override;
  void reset() override { cleaning_ = false; }

 private:
  double start_;
  double stop_;
  bool cleaning_ = false;
  AppleSeeker harvest_;
};

// Walks onto the nearest button cell; Noop once there or if unreachable.
class ButtonPresser : public ScriptedPolicy {
 public:
  explicit ButtonPresser(double jitter = kScriptedJitter) : jitter_(jitter) {}
  Action act(const Environment& env, int agent, Rng& rng) override;

 private:
  double jitter_;
};

class IdlePolicy : public ScriptedPolicy {
 public:
  Action act(const Environment&, int, Rng&) override { return Action::Noop; }
};

// Relative move that steps toward `dir` (a unit vector) without rotating.
Action move_toward(Orientation facing, Pos dir);

// First step of a shortest path from the agent to any cell accepted by `goal`,
// avoiding walls, buttons that are not goals and, where possible, other
// agents. nullopt if none is reachable or the agent is already there.
std::optional<Pos> first_step(const GridState& state, int agent,
                              const std::function<bool(Pos)>& goal);

// Number of waste cells a cleaning beam from p facing o would clear.
int clean_hits(const GridState& state, Pos p, Orientation o, int beam_length);

// Runs one episode with scripted policies; returns per-agent extrinsic returns.
std::vector<double> run_scripted_episode(Environment& env,
                                         std::vector<std::unique_ptr<ScriptedPolicy>>& policies,
                                         std::uint64_t seed);

}  // namespace ssdlab
