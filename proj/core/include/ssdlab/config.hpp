#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssdlab/actor_critic.hpp"
#include "ssdlab/environment.hpp"
#include "ssdlab/inequity.hpp"

namespace ssdlab {

// Settings that can differ per agent, from an [agent i] section.
struct AgentOverride {
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> lambda;
  std::optional<double> gamma;
  std::optional<double> group_reward;
  std::optional<bool> learning;
};

struct ExperimentConfig {
  EnvironmentConfig env;
  LearnerConfig learner;
  // Defaults for every agent; [agent i] sections override.
  IAParams ia = IAParams::selfish();
  double group_reward = 0.0;
  std::map<int, AgentOverride> agents;

  int episodes = 100;  // per worker
  std::uint64_t seed = 0;
  int intrinsic_delay = 0;
  int record_every = 0;
  std::string output = "results";

  void validate() const;

  // Resolved per-agent settings for an environment with n players.
  std::vector<IAParams> agent_ia(int n) const;
  std::vector<double> agent_group_reward(int n) const;
  std::vector<bool> agent_learning(int n) const;

  // Every key in a fixed order, numbers in shortest round-trip form.
  std::string canonical() const;
  // FNV-1a of canonical().
  std::uint64_t hash() const;
};

// Flat "key = value" lines; '#' starts a comment; "[agent 2]" opens a
// per-agent section that lasts until the next section header.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Key names accepted at top level, in canonical order.
std::vector<std::string_view> config_keys();

std::string format_double(double v);
std::string hex64(std::uint64_t v);

}  // namespace ssdlab
