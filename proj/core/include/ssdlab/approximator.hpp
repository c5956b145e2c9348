#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ssdlab/grid.hpp"
#include "ssdlab/rng.hpp"

namespace ssdlab {

enum class ApproximatorKind : std::uint8_t { Tabular, Linear, Mlp };

std::string_view to_string(ApproximatorKind kind);
std::optional<ApproximatorKind> parse_approximator(std::string_view name);

struct ModelShape {
  ApproximatorKind kind = ApproximatorKind::Linear;
  int input_dim = 0;
  int num_actions = 0;
  int hidden = 32;        // Mlp only
  int table_size = 4096;  // Tabular only

  std::size_t parameter_count() const;
  void validate() const;

  friend bool operator==(const ModelShape&, const ModelShape&) = default;
};

// Flat parameter vector for an actor-critic head pair.
//
//   Tabular: one row of (logits..., value) per hashed input.
//   Linear:  logits = Wp x + bp,  value = wv.x + bv.
//   Mlp:     h = tanh(W1 x + b1), logits = Wp h + bp, value = wv.h + bv.
struct PolicyParams {
  ModelShape shape;
  std::vector<double> weights;

  static PolicyParams initialize(const ModelShape& shape, Rng& rng);
  std::uint64_t checksum() const;
};

struct Activations {
  std::vector<double> logits;
  double value = 0.0;
  std::vector<double> hidden;  // Mlp only
  std::size_t row = 0;         // Tabular only
};

Activations forward(const PolicyParams& params, std::span<const double> input);

// Adds d(loss)/d(weights) into grad, given the loss gradient at the outputs.
void backward(const PolicyParams& params, std::span<const double> input, const Activations& act,
              std::span<const double> dlogits, double dvalue, std::span<double> grad);

// Tabular row lookup: FNV-1a of the input bytes modulo table size.
std::size_t table_row(std::span<const double> input, int table_size);

// Indices of the policy-head parameters (the logits layer), used to separate
// actor from critic when inspecting updates.
std::vector<std::size_t> policy_head_indices(const ModelShape& shape);

// Observation -> feature vector: window bytes scaled to [0,1], then every
// player's smoothed reward times reward_scale.
std::vector<double> encode_observation(const Observation& obs, double reward_scale);
inline int feature_size(int num_agents) { return static_cast<int>(kWindowSize) + num_agents; }

}  // namespace ssdlab
