#include "ssdlab/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "ssdlab/errors.hpp"

namespace ssdlab {

std::string format_double(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

struct Field {
  std::string_view key;
  std::size_t line;
  std::size_t column;
};

[[noreturn]] void bad_value(const Field& f, std::string_view value, std::string_view expected) {
  throw ParseError("invalid value '" + std::string(value) + "' for " + std::string(f.key) +
                       " (expected " + std::string(expected) + ")",
                   f.line, f.column);
}

double to_double(const Field& f, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) bad_value(f, v, "a number");
  return out;
}

int to_int(const Field& f, std::string_view v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) bad_value(f, v, "an integer");
  return out;
}

std::uint64_t to_u64(const Field& f, std::string_view v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) bad_value(f, v, "an unsigned integer");
  return out;
}

bool to_bool(const Field& f, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_value(f, v, "true or false");
}

using Setter = std::function<void(ExperimentConfig&, const Field&, std::string_view)>;
using Getter = std::function<std::string(const ExperimentConfig&)>;

struct KeySpec {
  std::string_view key;
  Setter set;
  Getter get;
};

template <typename T>
KeySpec number_key(std::string_view key, T ExperimentConfig::*member) {
  return {key,
          [member](ExperimentConfig& c, const Field& f, std::string_view v) {
            if constexpr (std::is_same_v<T, double>) {
              c.*member = to_double(f, v);
            } else if constexpr (std::is_same_v<T, std::uint64_t>) {
              c.*member = to_u64(f, v);
            } else {
              c.*member = to_int(f, v);
            }
          },
          [member](const ExperimentConfig& c) {
            if constexpr (std::is_same_v<T, double>) {
              return format_double(c.*member);
            } else {
              return std::to_string(c.*member);
            }
          }};
}

// Nested members: a pointer to the sub-struct and to the field inside it.
template <typename S, typename T>
KeySpec nested_key(std::string_view key, S ExperimentConfig::*outer, T S::*inner) {
  return {key,
          [outer, inner](ExperimentConfig& c, const Field& f, std::string_view v) {
            if constexpr (std::is_same_v<T, double>) {
              (c.*outer).*inner = to_double(f, v);
            } else {
              (c.*outer).*inner = to_int(f, v);
            }
          },
          [outer, inner](const ExperimentConfig& c) {
            if constexpr (std::is_same_v<T, double>) {
              return format_double((c.*outer).*inner);
            } else {
              return std::to_string((c.*outer).*inner);
            }
          }};
}

template <typename S, typename T>
KeySpec env_key(std::string_view key, S EnvironmentConfig::*outer, T S::*inner) {
  return {key,
          [outer, inner](ExperimentConfig& c, const Field& f, std::string_view v) {
            if constexpr (std::is_same_v<T, double>) {
              (c.env.*outer).*inner = to_double(f, v);
            } else {
              (c.env.*outer).*inner = to_int(f, v);
            }
          },
          [outer, inner](const ExperimentConfig& c) {
            if constexpr (std::is_same_v<T, double>) {
              return format_double((c.env.*outer).*inner);
            } else {
              return std::to_string((c.env.*outer).*inner);
            }
          }};
}

const std::vector<KeySpec>& key_specs() {
  static const std::vector<KeySpec> specs = [] {
    std::vector<KeySpec> s;
    s.push_back({"env",
                 [](ExperimentConfig& c, const Field& f, std::string_view v) {
                   auto kind = parse_env_kind(v);
                   if (!kind) bad_value(f, v, "cleanup, harvest, dictate, give or take");
                   c.env.kind = *kind;
                 },
                 [](const ExperimentConfig& c) { return std::string(to_string(c.env.kind)); }});
    s.push_back({"map",
                 [](ExperimentConfig& c, const Field&, std::string_view v) { c.env.map = v; },
                 [](const ExperimentConfig& c) { return c.env.map; }});
    s.push_back({"agents",
                 [](ExperimentConfig& c, const Field& f, std::string_view v) {
                   c.env.num_agents = to_int(f, v);
                 },
                 [](const ExperimentConfig& c) { return std::to_string(c.env.num_agents); }});
    s.push_back(number_key("episodes", &ExperimentConfig::episodes));
    s.push_back(number_key("seed", &ExperimentConfig::seed));
    s.push_back(number_key("intrinsic_delay", &ExperimentConfig::intrinsic_delay));
    s.push_back(number_key("record_every", &ExperimentConfig::record_every));
    s.push_back({"output",
                 [](ExperimentConfig& c, const Field&, std::string_view v) { c.output = v; },
                 [](const ExperimentConfig& c) { return c.output; }});

    s.push_back(nested_key("alpha", &ExperimentConfig::ia, &IAParams::alpha));
    s.push_back(nested_key("beta", &ExperimentConfig::ia, &IAParams::beta));
    s.push_back(nested_key("lambda", &ExperimentConfig::ia, &IAParams::lambda));
    // One discount for both the learner and the reward traces.
    s.push_back({"gamma",
                 [](ExperimentConfig& c, const Field& f, std::string_view v) {
                   c.ia.gamma = to_double(f, v);
                   c.learner.gamma = c.ia.gamma;
                 },
                 [](const ExperimentConfig& c) { return format_double(c.ia.gamma); }});
    s.push_back(number_key("group_reward", &ExperimentConfig::group_reward));

    s.push_back(nested_key("learner.k", &ExperimentConfig::learner, &LearnerConfig::k));
    s.push_back(nested_key("learner.learning_rate", &ExperimentConfig::learner,
                           &LearnerConfig::learning_rate));
    s.push_back(nested_key("learner.entropy_coeff", &ExperimentConfig::learner,
                           &LearnerConfig::entropy_coeff));
    s.push_back(nested_key("learner.value_loss_coeff", &ExperimentConfig::learner,
                           &LearnerConfig::value_loss_coeff));
    s.push_back(nested_key("learner.workers", &ExperimentConfig::learner, &LearnerConfig::workers));
    s.push_back(nested_key("learner.max_grad_norm", &ExperimentConfig::learner,
                           &LearnerConfig::max_grad_norm));
    s.push_back({"learner.approximator",
                 [](ExperimentConfig& c, const Field& f, std::string_view v) {
                   auto kind = parse_approximator(v);
                   if (!kind) bad_value(f, v, "tabular, linear or mlp");
                   c.learner.approximator = *kind;
                 },
                 [](const ExperimentConfig& c) {
                   return std::string(to_string(c.learner.approximator));
                 }});
    s.push_back(nested_key("learner.hidden", &ExperimentConfig::learner, &LearnerConfig::hidden));
    s.push_back(
        nested_key("learner.table_size", &ExperimentConfig::learner, &LearnerConfig::table_size));
    s.push_back(nested_key("learner.reward_feature_scale", &ExperimentConfig::learner,
                           &LearnerConfig::reward_feature_scale));

    s.push_back(env_key("cleanup.waste_spawn_prob", &EnvironmentConfig::cleanup,
                        &CleanupConfig::waste_spawn_prob));
    s.push_back(env_key("cleanup.waste_saturation_fraction", &EnvironmentConfig::cleanup,
                        &CleanupConfig::waste_saturation_fraction));
    s.push_back(env_key("cleanup.apple_spawn_coeff", &EnvironmentConfig::cleanup,
                        &CleanupConfig::apple_spawn_coeff));
    s.push_back(env_key("cleanup.episode_length", &EnvironmentConfig::cleanup,
                        &CleanupConfig::episode_length));
    s.push_back(
        env_key("cleanup.fine_cost", &EnvironmentConfig::cleanup, &CleanupConfig::fine_cost));
    s.push_back(env_key("cleanup.fine_penalty", &EnvironmentConfig::cleanup,
                        &CleanupConfig::fine_penalty));

    s.push_back({"harvest.spawn_probs",
                 [](ExperimentConfig& c, const Field& f, std::string_view v) {
                   std::array<double, 4> probs{};
                   std::size_t idx = 0;
                   while (true) {
                     const auto comma = v.find(',');
                     if (idx >= probs.size()) bad_value(f, v, "4 comma-separated numbers");
                     probs[idx++] = to_double(f, trim(v.substr(0, comma)));
                     if (comma == std::string_view::npos) break;
                     v.remove_prefix(comma + 1);
                   }
                   if (idx != probs.size()) bad_value(f, v, "4 comma-separated numbers");
                   c.env.harvest.spawn_probs = probs;
                 },
                 [](const ExperimentConfig& c) {
                   std::string out;
                   for (double p : c.env.harvest.spawn_probs) {
                     if (!out.empty()) out += ",";
                     out += format_double(p);
                   }
                   return out;
                 }});
    s.push_back(env_key("harvest.neighborhood_radius", &EnvironmentConfig::harvest,
                        &HarvestConfig::neighborhood_radius));
    s.push_back(env_key("harvest.episode_length", &EnvironmentConfig::harvest,
                        &HarvestConfig::episode_length));
    s.push_back(
        env_key("harvest.fine_cost", &EnvironmentConfig::harvest, &HarvestConfig::fine_cost));
    s.push_back(env_key("harvest.fine_penalty", &EnvironmentConfig::harvest,
                        &HarvestConfig::fine_penalty));
    s.push_back(env_key("harvest.restricted_min_neighbors", &EnvironmentConfig::harvest,
                        &HarvestConfig::restricted_min_neighbors));

    s.push_back(
        env_key("button.max_steps", &EnvironmentConfig::button, &ButtonGameConfig::max_steps));
    s.push_back(
        env_key("button.fine_cost", &EnvironmentConfig::button, &ButtonGameConfig::fine_cost));
    s.push_back(env_key("button.fine_penalty", &EnvironmentConfig::button,
                        &ButtonGameConfig::fine_penalty));

    s.push_back({"grid.beam_length",
                 [](ExperimentConfig& c, const Field& f, std::string_view v) {
                   c.env.beam_length = to_int(f, v);
                 },
                 [](const ExperimentConfig& c) { return std::to_string(c.env.beam_length); }});
    s.push_back(env_key("grid.view_row", &EnvironmentConfig::view, &ViewConfig::agent_row));
    s.push_back(env_key("grid.view_col", &EnvironmentConfig::view, &ViewConfig::agent_col));
    return s;
  }();
  return specs;
}

const KeySpec* find_key(std::string_view key) {
  for (const auto& spec : key_specs()) {
    if (spec.key == key) return &spec;
  }
  return nullptr;
}

void set_agent_key(AgentOverride& o, const Field& f, std::string_view v) {
  if (f.key == "alpha") o.alpha = to_double(f, v);
  else if (f.key == "beta") o.beta = to_double(f, v);
  else if (f.key == "lambda") o.lambda = to_double(f, v);
  else if (f.key == "gamma") o.gamma = to_double(f, v);
  else if (f.key == "group_reward") o.group_reward = to_double(f, v);
  else if (f.key == "learning") o.learning = to_bool(f, v);
  else throw ParseError("unknown agent key '" + std::string(f.key) + "'", f.line, f.column);
}

}  // namespace

std::vector<std::string_view> config_keys() {
  std::vector<std::string_view> keys;
  for (const auto& spec : key_specs()) keys.push_back(spec.key);
  return keys;
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::optional<int> section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const std::size_t indent = static_cast<std::size_t>(line.data() - raw.data()) + 1;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no, indent);
      const auto inner = trim(line.substr(1, line.size() - 2));
      if (!inner.starts_with("agent")) {
        throw ParseError("unknown section '" + std::string(inner) + "'", line_no, indent);
      }
      const auto index_text = trim(inner.substr(5));
      const Field f{"agent index", line_no, indent};
      const int index = to_int(f, index_text);
      if (index < 0) bad_value(f, index_text, "a non-negative agent index");
      section = index;
      config.agents[index];
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no, indent);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("missing key before '='", line_no, indent);
    const std::size_t value_col = static_cast<std::size_t>(value.data() - raw.data()) + 1;
    const Field f{key, line_no, value.empty() ? indent + eq + 1 : value_col};

    if (section) {
      set_agent_key(config.agents[*section], f, value);
      continue;
    }
    const auto* spec = find_key(key);
    if (!spec) throw ParseError("unknown key '" + std::string(key) + "'", line_no, indent);
    spec->set(config, f, value);
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ConfigError(field + ": " + why);
  };
  if (episodes < 0) fail("episodes", "must be >= 0");
  if (intrinsic_delay < 0) fail("intrinsic_delay", "must be >= 0");
  if (record_every < 0) fail("record_every", "must be >= 0");
  if (env.num_agents < 0) fail("agents", "must be >= 0");
  if (!std::isfinite(group_reward)) fail("group_reward", "must be finite");
  try {
    ia.validate();
  } catch (const ConfigError& e) {
    fail("alpha/beta/lambda/gamma", e.what());
  }
  try {
    learner.validate();
  } catch (const ConfigError& e) {
    fail("learner", e.what());
  }
  try {
    env.cleanup.validate();
  } catch (const ConfigError& e) {
    fail("cleanup", e.what());
  }
  try {
    env.harvest.validate();
  } catch (const ConfigError& e) {
    fail("harvest", e.what());
  }
  try {
    env.button.validate();
  } catch (const ConfigError& e) {
    fail("button", e.what());
  }
  if (env.beam_length < 1) fail("grid.beam_length", "must be >= 1");
}

std::vector<IAParams> ExperimentConfig::agent_ia(int n) const {
  std::vector<IAParams> out(static_cast<std::size_t>(n), ia);
  for (const auto& [index, o] : agents) {
    if (index >= n) {
      throw ConfigError("[agent " + std::to_string(index) + "]: environment has only " +
                        std::to_string(n) + " agents");
    }
    auto& p = out[static_cast<std::size_t>(index)];
    if (o.alpha) p.alpha = *o.alpha;
    if (o.beta) p.beta = *o.beta;
    if (o.lambda) p.lambda = *o.lambda;
    if (o.gamma) p.gamma = *o.gamma;
    try {
      p.validate();
    } catch (const ConfigError& e) {
      throw ConfigError("[agent " + std::to_string(index) + "]: " + e.what());
    }
  }
  return out;
}

std::vector<double> ExperimentConfig::agent_group_reward(int n) const {
  std::vector<double> out(static_cast<std::size_t>(n), group_reward);
  for (const auto& [index, o] : agents) {
    if (index < n && o.group_reward) out[static_cast<std::size_t>(index)] = *o.group_reward;
  }
  return out;
}

std::vector<bool> ExperimentConfig::agent_learning(int n) const {
  std::vector<bool> out(static_cast<std::size_t>(n), true);
  for (const auto& [index, o] : agents) {
    if (index < n && o.learning) out[static_cast<std::size_t>(index)] = *o.learning;
  }
  return out;
}

std::string ExperimentConfig::canonical() const {
  std::string out;
  for (const auto& spec : key_specs()) {
    out += std::string(spec.key) + " = " + spec.get(*this) + "\n";
  }
  for (const auto& [index, o] : agents) {
    out += "[agent " + std::to_string(index) + "]\n";
    if (o.alpha) out += "alpha = " + format_double(*o.alpha) + "\n";
    if (o.beta) out += "beta = " + format_double(*o.beta) + "\n";
    if (o.lambda) out += "lambda = " + format_double(*o.lambda) + "\n";
    if (o.gamma) out += "gamma = " + format_double(*o.gamma) + "\n";
    if (o.group_reward) out += "group_reward = " + format_double(*o.group_reward) + "\n";
    if (o.learning) out += std::string("learning = ") + (*o.learning ? "true" : "false") + "\n";
  }
  return out;
}

std::uint64_t ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ssdlab
