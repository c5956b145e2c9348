#include "ssdlab/approximator.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "ssdlab/errors.hpp"

namespace ssdlab {
namespace {

struct Layout {
  std::size_t w1 = 0, b1 = 0, wp = 0, bp = 0, wv = 0, bv = 0, total = 0;
};

Layout layout(const ModelShape& s) {
  const auto d = static_cast<std::size_t>(s.input_dim);
  const auto a = static_cast<std::size_t>(s.num_actions);
  const auto h = static_cast<std::size_t>(s.hidden);
  Layout l;
  switch (s.kind) {
    case ApproximatorKind::Tabular:
      l.total = static_cast<std::size_t>(s.table_size) * (a + 1);
      break;
    case ApproximatorKind::Linear:
      l.wp = 0;
      l.bp = l.wp + a * d;
      l.wv = l.bp + a;
      l.bv = l.wv + d;
      l.total = l.bv + 1;
      break;
    case ApproximatorKind::Mlp:
      l.w1 = 0;
      l.b1 = l.w1 + h * d;
      l.wp = l.b1 + h;
      l.bp = l.wp + a * h;
      l.wv = l.bp + a;
      l.bv = l.wv + h;
      l.total = l.bv + 1;
      break;
  }
  return l;
}

// logits = W x + b, value = w.x + c over an input that is mostly zeros.
void dense_heads(const double* w, const double* b, const double* wv, double bv,
                 std::span<const double> x, std::size_t a, Activations& out) {
  const std::size_t d = x.size();
  out.logits.assign(b, b + a);
  out.value = bv;
  for (std::size_t j = 0; j < d; ++j) {
    const double xj = x[j];
    if (xj == 0.0) continue;
    for (std::size_t k = 0; k < a; ++k) out.logits[k] += w[k * d + j] * xj;
    out.value += wv[j] * xj;
  }
}

}  // namespace

std::string_view to_string(ApproximatorKind kind) {
  switch (kind) {
    case ApproximatorKind::Tabular: return "tabular";
    case ApproximatorKind::Linear: return "linear";
    case ApproximatorKind::Mlp: return "mlp";
  }
  return "unknown";
}

std::optional<ApproximatorKind> parse_approximator(std::string_view name) {
  for (auto k : {ApproximatorKind::Tabular, ApproximatorKind::Linear, ApproximatorKind::Mlp}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::size_t ModelShape::parameter_count() const { return layout(*this).total; }

void ModelShape::validate() const {
  if (input_dim <= 0) throw ConfigError("model input_dim must be positive");
  if (num_actions <= 0) throw ConfigError("model num_actions must be positive");
  if (kind == ApproximatorKind::Mlp && hidden <= 0) throw ConfigError("hidden must be positive");
  if (kind == ApproximatorKind::Tabular && table_size <= 0) {
    throw ConfigError("table_size must be positive");
  }
}

PolicyParams PolicyParams::initialize(const ModelShape& shape, Rng& rng) {
  shape.validate();
  PolicyParams p{shape, std::vector<double>(shape.parameter_count(), 0.0)};
  const Layout l = layout(shape);
  auto fill = [&](std::size_t from, std::size_t to, double scale) {
    for (std::size_t i = from; i < to; ++i) p.weights[i] = scale * (2.0 * rng.uniform() - 1.0);
  };
  switch (shape.kind) {
    case ApproximatorKind::Tabular: break;
    case ApproximatorKind::Linear: fill(l.wp, l.bp, 1e-3); break;
    case ApproximatorKind::Mlp: {
      const double glorot = std::sqrt(6.0 / (shape.input_dim + shape.hidden));
      fill(l.w1, l.b1, glorot);
      fill(l.wp, l.bp, 1e-2);
      break;
    }
  }
  return p;
}

std::uint64_t PolicyParams::checksum() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double w : weights) {
    std::uint64_t bits;
    std::memcpy(&bits, &w, sizeof bits);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::size_t table_row(std::span<const double> input, int table_size) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : input) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  return static_cast<std::size_t>(h % static_cast<std::uint64_t>(table_size));
}

Activations forward(const PolicyParams& params, std::span<const double> x) {
  const auto& s = params.shape;
  if (static_cast<int>(x.size()) != s.input_dim) {
    throw ConfigError("input has " + std::to_string(x.size()) + " features, model expects " +
                      std::to_string(s.input_dim));
  }
  const Layout l = layout(s);
  const auto a = static_cast<std::size_t>(s.num_actions);
  const double* w = params.weights.data();
  Activations out;
  switch (s.kind) {
    case ApproximatorKind::Tabular: {
      out.row = table_row(x, s.table_size);
      const double* row = w + out.row * (a + 1);
      out.logits.assign(row, row + a);
      out.value = row[a];
      break;
    }
    case ApproximatorKind::Linear:
      dense_heads(w + l.wp, w + l.bp, w + l.wv, w[l.bv], x, a, out);
      break;
    case ApproximatorKind::Mlp: {
      const auto d = x.size();
      const auto h = static_cast<std::size_t>(s.hidden);
      out.hidden.assign(w + l.b1, w + l.b1 + h);
      for (std::size_t j = 0; j < d; ++j) {
        const double xj = x[j];
        if (xj == 0.0) continue;
        for (std::size_t u = 0; u < h; ++u) out.hidden[u] += w[l.w1 + u * d + j] * xj;
      }
      for (auto& v : out.hidden) v = std::tanh(v);
      dense_heads(w + l.wp, w + l.bp, w + l.wv, w[l.bv], out.hidden, a, out);
      break;
    }
  }
  return out;
}

void backward(const PolicyParams& params, std::span<const double> x, const Activations& act,
              std::span<const double> dlogits, double dvalue, std::span<double> grad) {
  const auto& s = params.shape;
  const Layout l = layout(s);
  const auto a = static_cast<std::size_t>(s.num_actions);
  const double* w = params.weights.data();

  // Gradient of the two linear heads over `in`, writing d(loss)/d(in) if requested.
  auto heads = [&](std::span<const double> in, std::vector<double>* din) {
    const auto d = in.size();
    for (std::size_t k = 0; k < a; ++k) grad[l.bp + k] += dlogits[k];
    grad[l.bv] += dvalue;
    for (std::size_t j = 0; j < d; ++j) {
      const double xj = in[j];
      if (xj != 0.0) {
        for (std::size_t k = 0; k < a; ++k) grad[l.wp + k * d + j] += dlogits[k] * xj;
        grad[l.wv + j] += dvalue * xj;
      }
      if (din) {
        double acc = w[l.wv + j] * dvalue;
        for (std::size_t k = 0; k < a; ++k) acc += w[l.wp + k * d + j] * dlogits[k];
        (*din)[j] = acc;
      }
    }
  };

  switch (s.kind) {
    case ApproximatorKind::Tabular: {
      const std::size_t base = act.row * (a + 1);
      for (std::size_t k = 0; k < a; ++k) grad[base + k] += dlogits[k];
      grad[base + a] += dvalue;
      break;
    }
    case ApproximatorKind::Linear: heads(x, nullptr); break;
    case ApproximatorKind::Mlp: {
      const auto h = static_cast<std::size_t>(s.hidden);
      const auto d = x.size();
      std::vector<double> dh(h, 0.0);
      heads(act.hidden, &dh);
      for (std::size_t u = 0; u < h; ++u) {
        const double dz = dh[u] * (1.0 - act.hidden[u] * act.hidden[u]);
        if (dz == 0.0) continue;
        grad[l.b1 + u] += dz;
        double* row = grad.data() + l.w1 + u * d;
        for (std::size_t j = 0; j < d; ++j) {
          if (x[j] != 0.0) row[j] += dz * x[j];
        }
      }
      break;
    }
  }
}

std::vector<std::size_t> policy_head_indices(const ModelShape& shape) {
  const Layout l = layout(shape);
  const auto a = static_cast<std::size_t>(shape.num_actions);
  std::vector<std::size_t> idx;
  if (shape.kind == ApproximatorKind::Tabular) {
    for (std::size_t r = 0; r < static_cast<std::size_t>(shape.table_size); ++r) {
      for (std::size_t k = 0; k < a; ++k) idx.push_back(r * (a + 1) + k);
    }
    return idx;
  }
  for (std::size_t i = l.wp; i < l.wv; ++i) idx.push_back(i);
  return idx;
}

std::vector<double> encode_observation(const Observation& obs, double reward_scale) {
  std::vector<double> x;
  x.reserve(kWindowSize + obs.smoothed_rewards.size());
  for (auto v : obs.window) x.push_back(static_cast<double>(v) / 255.0);
  for (auto e : obs.smoothed_rewards) x.push_back(e * reward_scale);
  return x;
}

}  // namespace ssdlab
