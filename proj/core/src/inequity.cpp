#include "ssdlab/inequity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ssdlab/errors.hpp"

namespace ssdlab {
namespace {

void check_sizes(std::size_t rewards, std::size_t params) {
  if (rewards < 2) throw DomainError("inequity aversion needs at least 2 players");
  if (params != rewards) {
    throw ConfigError("expected " + std::to_string(rewards) + " IAParams, got " +
                      std::to_string(params));
  }
}

// Shared by the stateless utility and the trace-based subjective reward.
std::vector<double> penalised(std::span<const double> base, std::span<const double> compared,
                              std::span<const IAParams> params) {
  const std::size_t n = compared.size();
  const double scale = 1.0 / static_cast<double>(n - 1);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double behind = 0.0;
    double ahead = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      behind += std::max(compared[j] - compared[i], 0.0);
      ahead += std::max(compared[i] - compared[j], 0.0);
    }
    out[i] = base[i] - params[i].alpha * scale * behind - params[i].beta * scale * ahead;
  }
  return out;
}

}  // namespace

void IAParams::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be >= 0");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be >= 0");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("lambda must be in [0,1]");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("gamma must be in (0,1]");
}

std::vector<double> fs_utility(std::span<const double> rewards, std::span<const IAParams> params) {
  check_sizes(rewards.size(), params.size());
  return penalised(rewards, rewards, params);
}

RewardTrace update_traces(const RewardTrace& trace, std::span<const double> rewards,
                          std::span<const IAParams> params) {
  if (trace.values.size() != rewards.size() || params.size() != rewards.size()) {
    throw ConfigError("trace, reward and parameter vectors must have equal length");
  }
  RewardTrace next;
  next.values.resize(rewards.size());
  for (std::size_t j = 0; j < rewards.size(); ++j) {
    next.values[j] = params[j].gamma * params[j].lambda * trace.values[j] + rewards[j];
  }
  return next;
}

SubjectiveRewards subjective_reward(std::span<const double> rewards, const RewardTrace& trace,
                                    std::span<const IAParams> params) {
  check_sizes(rewards.size(), params.size());
  if (trace.values.size() != rewards.size()) {
    throw ConfigError("trace length must match the number of players");
  }
  return {penalised(rewards, trace.values, params)};
}

IntrinsicDelayLine::IntrinsicDelayLine(std::size_t agents, int delay)
    : agents_(agents), delay_(delay) {
  if (delay < 0) throw ConfigError("intrinsic_delay must be >= 0");
}

std::vector<double> IntrinsicDelayLine::push(std::span<const double> intrinsic) {
  if (delay_ == 0) return {intrinsic.begin(), intrinsic.end()};
  queue_.emplace_back(intrinsic.begin(), intrinsic.end());
  if (static_cast<int>(queue_.size()) <= delay_) return std::vector<double>(agents_, 0.0);
  auto due = std::move(queue_.front());
  queue_.pop_front();
  return due;
}

}  // namespace ssdlab
