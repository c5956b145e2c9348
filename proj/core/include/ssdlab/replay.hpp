#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "ssdlab/config.hpp"
#include "ssdlab/metrics.hpp"
#include "ssdlab/trainer.hpp"

namespace ssdlab {

inline constexpr std::uint32_t kReplayVersion = 1;

// One recorded episode plus what is needed to re-simulate it: the canonical
// config text and the environment seed. Observations are not stored.
struct ReplayLog {
  std::uint32_t version = kReplayVersion;
  std::uint64_t config_hash = 0;
  std::string config_text;
  int num_agents = 0;
  RecordedEpisode episode;
  MetricsRow terminal;
};

ReplayLog make_replay(const ExperimentConfig& config, const EpisodeLog& episode);

// Little-endian binary: "SSDREPLY", u32 version, u64 config hash, u64 env
// seed, u32-length config text, u32 agents, u32 steps, u64 initial checksum,
// then per step and agent u8 action, f64 reward, 5 x u16 counters, and a u64
// state checksum per step; finally the terminal metrics.
std::string serialize_replay(const ReplayLog& log);
// Throws ParseError on a bad magic, truncated data or an unsupported version.
ReplayLog parse_replay(const std::string& bytes);

void save_replay(const std::filesystem::path& path, const ReplayLog& log);
ReplayLog load_replay(const std::filesystem::path& path);

struct ReplayReport {
  bool ok = false;
  // Index of the first step whose outcome differs (0-based); absent on
  // success or when the log is rejected before stepping.
  std::optional<std::size_t> divergence_step;
  std::string message;
};

ReplayReport verify_replay(const ReplayLog& log);

}  // namespace ssdlab
