#pragma once

#include <span>
#include <vector>

#include "ssdlab/approximator.hpp"
#include "ssdlab/grid.hpp"
#include "ssdlab/rng.hpp"

namespace ssdlab {

struct LearnerConfig {
  int k = 20;  // backup length
  double gamma = 0.99;
  double learning_rate = 0.01;
  double entropy_coeff = 0.01;
  double value_loss_coeff = 0.5;
  int workers = 4;
  // Rescale the per-update gradient to at most this L2 norm; 0 disables.
  double max_grad_norm = 0.0;
  ApproximatorKind approximator = ApproximatorKind::Linear;
  int hidden = 32;
  int table_size = 4096;
  double reward_feature_scale = 0.1;

  void validate() const;
};

struct TrajectoryStep {
  std::vector<double> features;
  int action = 0;
  double subjective_reward = 0.0;
  double extrinsic_reward = 0.0;
};

// Up to k consecutive steps of one agent plus the value of the state after
// them (zero when the episode ended).
struct Trajectory {
  std::vector<TrajectoryStep> steps;
  double bootstrap_value = 0.0;
  bool terminal = false;
};

std::vector<double> policy_probabilities(const PolicyParams& params,
                                         std::span<const double> features);

// Samples from softmax(logits) with one uniform draw.
int act(const PolicyParams& params, std::span<const double> features, Rng& rng);
int act(const PolicyParams& params, const Observation& obs, double reward_scale, Rng& rng);

// Discounted subjective return from each step to the end of the trajectory,
// bootstrapped with bootstrap_value unless terminal.
std::vector<double> n_step_returns(const Trajectory& traj, double gamma);

// sum_{i<k} gamma^i u_{t+i} + gamma^k V(s_{t+k}) - V(s_t), per step.
std::vector<double> advantage(const Trajectory& traj, const PolicyParams& params,
                              const LearnerConfig& config);

struct LossBreakdown {
  double policy = 0.0;
  double value = 0.0;
  double entropy = 0.0;

  double total() const { return policy + value + entropy; }
};

struct Gradient {
  std::vector<double> values;
  LossBreakdown loss;
};

// Actor-critic loss with returns and advantages held fixed:
//   sum_t  -A_t log pi(a_t|s_t) + c_v/2 (R_t - V(s_t))^2 - c_e H(pi(.|s_t))
double surrogate_loss(const PolicyParams& params, const Trajectory& traj,
                      const LearnerConfig& config, std::span<const double> returns,
                      std::span<const double> advantages);

// Analytic gradient of the surrogate loss at the current returns/advantages.
// Throws NumericalError naming the first step that produced a non-finite value.
Gradient compute_gradient(const PolicyParams& params, const Trajectory& traj,
                          const LearnerConfig& config);

// Plain SGD: params -= learning_rate * grad (after optional norm clipping).
void apply_gradient(PolicyParams& params, std::span<const double> grad,
                    const LearnerConfig& config);

PolicyParams gradient_step(const PolicyParams& params, const Trajectory& traj,
                           const LearnerConfig& config);

}  // namespace ssdlab
