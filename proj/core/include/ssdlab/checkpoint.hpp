#pragma once

#include <filesystem>
#include <string>

#include "ssdlab/approximator.hpp"

namespace ssdlab {

inline constexpr std::uint32_t kCheckpointVersion = 1;

// Binary layout, little-endian: "SSDP", u32 version, u8 kind, i32 input_dim,
// i32 num_actions, i32 hidden, i32 table_size, u64 weight count, f64 weights.
std::string serialize_params(const PolicyParams& params);
PolicyParams deserialize_params(const std::string& bytes);

void save_checkpoint(const std::filesystem::path& path, const PolicyParams& params);
PolicyParams load_checkpoint(const std::filesystem::path& path);

}  // namespace ssdlab
