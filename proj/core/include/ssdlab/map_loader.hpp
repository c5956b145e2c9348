#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssdlab/grid.hpp"

namespace ssdlab {

// ASCII map format. First line "WxH N" (width, height, player count), then H
// rows of exactly W characters:
//
//   #  wall                    .  empty floor
//   P  agent spawn point       B  button
//   A  apple on an orchard cell a  empty orchard cell (apples may grow)
//   ~  river                   W  river cell holding waste
//
// Agents are placed on spawn points in row-major order, ids 0..N-1, facing north.
// Lines starting with ';' after the header are comments and do not count as rows.
GridState load_map(std::string_view text, std::uint64_t seed = 0);

// Same, but overrides the player count from the header.
GridState load_map(std::string_view text, int num_agents, std::uint64_t seed);

GridState load_map_file(const std::string& path, std::uint64_t seed = 0);
std::string read_map_text(const std::string& path);

// Spawn points in row-major order (including those holding agents).
std::vector<Pos> spawn_points(const GridState& state);

// Maps shipped with the library, by name.
std::optional<std::string_view> bundled_map(std::string_view name);
std::vector<std::string_view> bundled_map_names();

// Default map name per environment id ("cleanup", "harvest", "dictate", ...).
std::string_view default_map_for(std::string_view env_id);

}  // namespace ssdlab
