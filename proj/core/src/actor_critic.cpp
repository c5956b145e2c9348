#include "ssdlab/actor_critic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ssdlab/errors.hpp"

namespace ssdlab {
namespace {

std::vector<double> log_softmax(std::span<const double> logits) {
  const double m = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (double v : logits) z += std::exp(v - m);
  const double log_z = m + std::log(z);
  std::vector<double> out(logits.size());
  for (std::size_t k = 0; k < logits.size(); ++k) out[k] = logits[k] - log_z;
  return out;
}

bool finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

void LearnerConfig::validate() const {
  if (k < 1) throw ConfigError("learner.k must be >= 1");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("learner.gamma must be in (0,1]");
  if (!(learning_rate > 0.0)) throw ConfigError("learner.learning_rate must be > 0");
  if (!(entropy_coeff >= 0.0)) throw ConfigError("learner.entropy_coeff must be >= 0");
  if (!(value_loss_coeff >= 0.0)) throw ConfigError("learner.value_loss_coeff must be >= 0");
  if (workers < 1) throw ConfigError("learner.workers must be >= 1");
  if (!(max_grad_norm >= 0.0)) throw ConfigError("learner.max_grad_norm must be >= 0");
  if (hidden < 1) throw ConfigError("learner.hidden must be >= 1");
  if (table_size < 1) throw ConfigError("learner.table_size must be >= 1");
}

std::vector<double> policy_probabilities(const PolicyParams& params,
                                         std::span<const double> features) {
  auto logp = log_softmax(forward(params, features).logits);
  for (auto& v : logp) v = std::exp(v);
  return logp;
}

int act(const PolicyParams& params, std::span<const double> features, Rng& rng) {
  const auto probs = policy_probabilities(params, features);
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += probs[k];
    if (u < acc) return static_cast<int>(k);
  }
  // Rounding left the cumulative sum just below 1: take the last likely action.
  for (std::size_t k = probs.size(); k-- > 0;) {
    if (probs[k] > 0.0) return static_cast<int>(k);
  }
  return 0;
}

int act(const PolicyParams& params, const Observation& obs, double reward_scale, Rng& rng) {
  return act(params, encode_observation(obs, reward_scale), rng);
}

std::vector<double> n_step_returns(const Trajectory& traj, double gamma) {
  std::vector<double> out(traj.steps.size());
  double running = traj.terminal ? 0.0 : traj.bootstrap_value;
  for (std::size_t t = traj.steps.size(); t-- > 0;) {
    running = traj.steps[t].subjective_reward + gamma * running;
    out[t] = running;
  }
  return out;
}

std::vector<double> advantage(const Trajectory& traj, const PolicyParams& params,
                              const LearnerConfig& config) {
  if (traj.steps.empty()) throw DomainError("advantage of an empty trajectory");
  auto out = n_step_returns(traj, config.gamma);
  for (std::size_t t = 0; t < out.size(); ++t) {
    out[t] -= forward(params, traj.steps[t].features).value;
  }
  return out;
}

double surrogate_loss(const PolicyParams& params, const Trajectory& traj,
                      const LearnerConfig& config, std::span<const double> returns,
                      std::span<const double> advantages) {
  double loss = 0.0;
  for (std::size_t t = 0; t < traj.steps.size(); ++t) {
    const auto& step = traj.steps[t];
    const auto act = forward(params, step.features);
    const auto logp = log_softmax(act.logits);
    double entropy = 0.0;
    for (double lp : logp) entropy -= std::exp(lp) * lp;
    const double err = returns[t] - act.value;
    loss += -advantages[t] * logp[static_cast<std::size_t>(step.action)] +
            0.5 * config.value_loss_coeff * err * err - config.entropy_coeff * entropy;
  }
  return loss;
}

Gradient compute_gradient(const PolicyParams& params, const Trajectory& traj,
                          const LearnerConfig& config) {
  if (traj.steps.empty()) throw DomainError("gradient of an empty trajectory");
  if (static_cast<int>(traj.steps.size()) > config.k) {
    throw ConfigError("trajectory longer than k = " + std::to_string(config.k));
  }
  const auto returns = n_step_returns(traj, config.gamma);
  Gradient g;
  g.values.assign(params.weights.size(), 0.0);
  const auto a = static_cast<std::size_t>(params.shape.num_actions);
  std::vector<double> dlogits(a);

  for (std::size_t t = 0; t < traj.steps.size(); ++t) {
    const auto& step = traj.steps[t];
    if (step.action < 0 || static_cast<std::size_t>(step.action) >= a) {
      throw ConfigError("trajectory action out of range at step " + std::to_string(t));
    }
    const auto act = forward(params, step.features);
    const auto logp = log_softmax(act.logits);
    double entropy = 0.0;
    for (double lp : logp) entropy -= std::exp(lp) * lp;
    const double adv = returns[t] - act.value;

    for (std::size_t k = 0; k < a; ++k) {
      const double pk = std::exp(logp[k]);
      const double chosen = k == static_cast<std::size_t>(step.action) ? 1.0 : 0.0;
      dlogits[k] = -adv * (chosen - pk) + config.entropy_coeff * pk * (logp[k] + entropy);
    }
    const double dvalue = config.value_loss_coeff * (act.value - returns[t]);
    if (!finite(dlogits) || !std::isfinite(dvalue) || !finite(step.features)) {
      throw NumericalError("non-finite gradient at trajectory step " + std::to_string(t), t);
    }
    backward(params, step.features, act, dlogits, dvalue, g.values);

    g.loss.policy += -adv * logp[static_cast<std::size_t>(step.action)];
    g.loss.value += 0.5 * config.value_loss_coeff * adv * adv;
    g.loss.entropy += -config.entropy_coeff * entropy;
  }
  if (!finite(g.values)) {
    throw NumericalError("non-finite gradient accumulated over the trajectory",
                         traj.steps.size() - 1);
  }
  return g;
}

void apply_gradient(PolicyParams& params, std::span<const double> grad,
                    const LearnerConfig& config) {
  double scale = config.learning_rate;
  if (config.max_grad_norm > 0.0) {
    const double norm = std::sqrt(std::inner_product(grad.begin(), grad.end(), grad.begin(), 0.0));
    if (norm > config.max_grad_norm) scale *= config.max_grad_norm / norm;
  }
  for (std::size_t i = 0; i < grad.size(); ++i) params.weights[i] -= scale * grad[i];
}

PolicyParams gradient_step(const PolicyParams& params, const Trajectory& traj,
                           const LearnerConfig& config) {
  const auto g = compute_gradient(params, traj, config);
  PolicyParams next = params;
  apply_gradient(next, g.values, config);
  return next;
}

}  // namespace ssdlab
