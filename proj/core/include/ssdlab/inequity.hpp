#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

namespace ssdlab {

// Per-agent inequity-aversion settings. alpha weighs disadvantageous
// inequity (envy), beta advantageous inequity (guilt). lambda and gamma set
// the decay of the smoothed reward traces.
struct IAParams {
  double alpha = 5.0;
  double beta = 0.05;
  double lambda = 0.975;
  double gamma = 0.99;

  void validate() const;

  static IAParams selfish(double lambda = 0.975, double gamma = 0.99) {
    return {0.0, 0.0, lambda, gamma};
  }
};

struct RewardTrace {
  std::vector<double> values;

  static RewardTrace zeros(std::size_t n) { return {std::vector<double>(n, 0.0)}; }
};

struct SubjectiveRewards {
  std::vector<double> values;
};

// Fehr-Schmidt utility of each player for one reward vector:
//   U_i = r_i - alpha_i/(N-1) sum_j max(r_j - r_i, 0) - beta_i/(N-1) sum_j max(r_i - r_j, 0)
std::vector<double> fs_utility(std::span<const double> rewards, std::span<const IAParams> params);

// e_j <- gamma_j * lambda_j * e_j + r_j
RewardTrace update_traces(const RewardTrace& trace, std::span<const double> rewards,
                          std::span<const IAParams> params);

// Extrinsic reward plus inequity penalties computed on the (already updated) traces.
SubjectiveRewards subjective_reward(std::span<const double> rewards, const RewardTrace& trace,
                                    std::span<const IAParams> params);

// Delays the intrinsic part (u - r) of each agent's reward by a fixed number
// of steps. push() returns the intrinsic rewards due now; anything still
// queued when the episode ends is dropped.
class IntrinsicDelayLine {
 public:
  IntrinsicDelayLine(std::size_t agents, int delay);

  std::vector<double> push(std::span<const double> intrinsic);
  void clear() { queue_.clear(); }
  int delay() const { return delay_; }

 private:
  std::size_t agents_;
  int delay_;
  std::deque<std::vector<double>> queue_;
};

}  // namespace ssdlab
