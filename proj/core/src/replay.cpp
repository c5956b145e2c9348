#include "ssdlab/replay.hpp"

#include <fstream>
#include <sstream>

#include "ssdlab/binary_io.hpp"
#include "ssdlab/errors.hpp"

namespace ssdlab {

namespace {
constexpr std::string_view kMagic = "SSDREPLY";
}

ReplayLog make_replay(const ExperimentConfig& config, const EpisodeLog& episode) {
  if (!episode.replay) throw UsageError("episode " + std::to_string(episode.episode) + " was not recorded");
  ReplayLog log;
  log.config_hash = config.hash();
  log.config_text = config.canonical();
  log.num_agents = static_cast<int>(episode.agents.size());
  log.episode = *episode.replay;
  log.terminal = episode.metrics;
  return log;
}

std::string serialize_replay(const ReplayLog& log) {
  binary::Writer w;
  w.bytes(std::string(kMagic));
  w.u32(log.version);
  w.u64(log.config_hash);
  w.u64(log.episode.env_seed);
  w.str(log.config_text);
  w.u32(static_cast<std::uint32_t>(log.num_agents));
  w.u32(static_cast<std::uint32_t>(log.episode.steps.size()));
  w.u64(log.episode.initial_checksum);
  for (const auto& step : log.episode.steps) {
    for (int i = 0; i < log.num_agents; ++i) {
      const auto a = static_cast<std::size_t>(i);
      w.u8(static_cast<std::uint8_t>(step.actions[a]));
      w.f64(step.rewards[a]);
      for (auto c : step.counters[a]) w.u16(c);
    }
    w.u64(step.checksum);
  }
  w.f64(log.terminal.utilitarian);
  w.f64(log.terminal.equality);
  w.f64(log.terminal.sustainability);
  w.u8(log.terminal.contribution ? 1 : 0);
  w.f64(log.terminal.contribution.value_or(0.0));
  w.u32(static_cast<std::uint32_t>(log.terminal.apples));
  w.u32(static_cast<std::uint32_t>(log.terminal.fines));
  w.u8(log.terminal.negative_total ? 1 : 0);
  return w.take();
}

ReplayLog parse_replay(const std::string& bytes) {
  binary::Reader r(bytes);
  if (bytes.size() < kMagic.size() || r.bytes(kMagic.size()) != kMagic) {
    throw ParseError("not a replay log", 0);
  }
  ReplayLog log;
  log.version = r.u32();
  if (log.version != kReplayVersion) {
    throw ParseError("unsupported replay version " + std::to_string(log.version) +
                         " (this build reads version " + std::to_string(kReplayVersion) + ")",
                     0);
  }
  log.config_hash = r.u64();
  log.episode.env_seed = r.u64();
  log.config_text = r.str();
  log.num_agents = static_cast<int>(r.u32());
  const auto steps = r.u32();
  log.episode.initial_checksum = r.u64();
  const auto n = static_cast<std::size_t>(log.num_agents);
  log.episode.steps.resize(steps);
  for (auto& step : log.episode.steps) {
    step.actions.resize(n);
    step.rewards.resize(n);
    step.counters.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      const auto action = r.u8();
      if (action >= kActionKinds) throw ParseError("invalid action code in replay log", 0);
      step.actions[a] = static_cast<Action>(action);
      step.rewards[a] = r.f64();
      for (auto& c : step.counters[a]) c = r.u16();
    }
    step.checksum = r.u64();
  }
  log.terminal.utilitarian = r.f64();
  log.terminal.equality = r.f64();
  log.terminal.sustainability = r.f64();
  const bool has_contribution = r.u8() != 0;
  const double contribution = r.f64();
  if (has_contribution) log.terminal.contribution = contribution;
  log.terminal.apples = static_cast<int>(r.u32());
  log.terminal.fines = static_cast<int>(r.u32());
  log.terminal.negative_total = r.u8() != 0;
  if (!r.at_end()) throw ParseError("trailing bytes after replay log", 0);
  return log;
}

void save_replay(const std::filesystem::path& path, const ReplayLog& log) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write replay log: " + path.string());
  const auto bytes = serialize_replay(log);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ConfigError("failed writing replay log: " + path.string());
}

ReplayLog load_replay(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open replay log: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_replay(ss.str());
}

ReplayReport verify_replay(const ReplayLog& log) {
  ReplayReport report;
  const auto config = parse_config(log.config_text);
  if (config.hash() != log.config_hash) {
    report.message = "config hash mismatch: log has " + hex64(log.config_hash) +
                     ", embedded config hashes to " + hex64(config.hash());
    return report;
  }
  auto env = make_environment(config.env);
  if (env->num_agents() != log.num_agents) {
    report.message = "log has " + std::to_string(log.num_agents) + " agents, environment has " +
                     std::to_string(env->num_agents());
    return report;
  }
  env->reset(log.episode.env_seed);
  if (checksum(env->state()) != log.episode.initial_checksum) {
    report.divergence_step = 0;
    report.message = "initial state differs";
    return report;
  }

  const auto n = static_cast<std::size_t>(log.num_agents);
  auto record = EpisodeRecord::empty(log.num_agents, env->kind() == EnvKind::Cleanup);
  for (std::size_t t = 0; t < log.episode.steps.size(); ++t) {
    const auto& step = log.episode.steps[t];
    auto diverge = [&](const std::string& what) {
      report.divergence_step = t;
      report.message = "step " + std::to_string(t) + ": " + what;
      return report;
    };
    if (env->done()) return diverge("episode already finished in re-simulation");
    StepResult result;
    try {
      result = env->step(step.actions);
    } catch (const std::exception& e) {
      return diverge(std::string("engine rejected the recorded actions: ") + e.what());
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto& info = result.info;
      const std::array<std::uint16_t, kCounters> counters{
          static_cast<std::uint16_t>(info.apples_eaten[i]),
          static_cast<std::uint16_t>(info.waste_cleaned[i]),
          static_cast<std::uint16_t>(info.fines_landed[i]),
          static_cast<std::uint16_t>(info.fines_received[i]),
          static_cast<std::uint16_t>(info.button_presses[i])};
      if (result.extrinsic_rewards[i] != step.rewards[i]) {
        return diverge("reward of agent " + std::to_string(i) + " differs");
      }
      if (counters != step.counters[i]) {
        return diverge("event counts of agent " + std::to_string(i) + " differ");
      }
      record.waste_cleaned[i] += info.waste_cleaned[i];
      record.apples_eaten[i] += info.apples_eaten[i];
      record.fines_landed[i] += info.fines_landed[i];
    }
    if (checksum(env->state()) != step.checksum) return diverge("state checksum differs");
    record.append(result.extrinsic_rewards);
  }
  if (!env->done()) {
    report.message = "log ends before the episode does";
    return report;
  }
  const auto m = compute_metrics(record);
  if (m.utilitarian != log.terminal.utilitarian || m.equality != log.terminal.equality ||
      m.sustainability != log.terminal.sustainability ||
      m.contribution != log.terminal.contribution || m.apples != log.terminal.apples ||
      m.fines != log.terminal.fines || m.negative_total != log.terminal.negative_total) {
    report.message = "terminal metrics differ";
    return report;
  }
  report.ok = true;
  report.message = "verified " + std::to_string(log.episode.steps.size()) + " steps";
  return report;
}

}  // namespace ssdlab
