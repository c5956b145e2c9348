#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ssdlab/rng.hpp"

namespace ssdlab {

enum class Cell : std::uint8_t { Empty, Apple, Waste, River, Wall, SpawnPoint, Button };

enum class Orientation : std::uint8_t { North, East, South, West };

enum class Action : std::uint8_t {
  Noop,
  Forward,
  Backward,
  StepLeft,
  StepRight,
  RotateLeft,
  RotateRight,
  FireFine,
  FireClean,
};

inline constexpr std::size_t kActionKinds = 9;

std::string_view to_string(Action action);

struct Pos {
  int row = 0;
  int col = 0;

  friend constexpr bool operator==(Pos, Pos) = default;
  friend constexpr auto operator<=>(Pos, Pos) = default;
};

constexpr Pos operator+(Pos a, Pos b) { return {a.row + b.row, a.col + b.col}; }
constexpr Pos operator-(Pos a, Pos b) { return {a.row - b.row, a.col - b.col}; }
constexpr Pos operator*(int k, Pos p) { return {k * p.row, k * p.col}; }

constexpr Pos direction(Orientation o) {
  switch (o) {
    case Orientation::North: return {-1, 0};
    case Orientation::East: return {0, 1};
    case Orientation::South: return {1, 0};
    case Orientation::West: return {0, -1};
  }
  return {0, 0};
}

constexpr Orientation rotate_right(Orientation o) {
  return static_cast<Orientation>((static_cast<int>(o) + 1) % 4);
}
constexpr Orientation rotate_left(Orientation o) {
  return static_cast<Orientation>((static_cast<int>(o) + 3) % 4);
}

struct AgentBody {
  int id = 0;
  Pos pos;
  Orientation orientation = Orientation::North;
  // Agent ignores movement while step < frozen_until. Unused by the bundled games.
  std::int64_t frozen_until = 0;
};

// Full simulation state. A plain value: copy it to branch a simulation.
struct GridState {
  int width = 0;
  int height = 0;
  std::vector<Cell> cells;
  // Cells where apples may (re)grow. Persists while the cell is empty.
  std::vector<std::uint8_t> apple_capable;
  std::vector<AgentBody> agents;
  std::int64_t step = 0;
  Rng rng;

  bool in_bounds(Pos p) const { return p.row >= 0 && p.col >= 0 && p.row < height && p.col < width; }
  std::size_t index(Pos p) const { return static_cast<std::size_t>(p.row) * width + p.col; }
  Pos pos_of(std::size_t idx) const {
    return {static_cast<int>(idx / width), static_cast<int>(idx % width)};
  }
  Cell at(Pos p) const { return cells[index(p)]; }
  Cell& at(Pos p) { return cells[index(p)]; }
  bool walkable(Pos p) const { return in_bounds(p) && at(p) != Cell::Wall; }
  bool is_apple_capable(Pos p) const { return apple_capable[index(p)] != 0; }
  std::optional<int> agent_at(Pos p) const;
  std::size_t count(Cell c) const;
};

// FNV-1a over cells, agents and step counter; identical on every platform.
std::uint64_t checksum(const GridState& state);

// Simultaneous movement and rotation. Two agents claiming one cell: a uniform
// random winner moves, the rest stay. Swaps, moves into walls and moves into
// cells whose occupant stays put are blocked. Non-movement actions are no-ops here.
void resolve_moves_in_place(GridState& state, std::span<const Action> actions);
GridState resolve_moves(GridState state, std::span<const Action> actions);

enum class BeamKind : std::uint8_t { Fine, Clean };

struct BeamResult {
  std::vector<Pos> cells;   // visited cells, in order
  std::vector<int> hit_agents;
  std::vector<Pos> hit_waste;

  bool empty() const { return hit_agents.empty() && hit_waste.empty(); }
};

inline constexpr int kDefaultBeamLength = 5;

// Traces a width-1 beam from the cell in front of the agent. Walls stop it; a
// fine beam also stops at the first agent it meets.
BeamResult project_beam(const GridState& state, int agent, BeamKind kind,
                        int beam_length = kDefaultBeamLength);

inline constexpr int kViewSize = 15;
inline constexpr int kViewChannels = 3;
inline constexpr std::size_t kWindowSize = kViewSize * kViewSize * kViewChannels;

struct ViewConfig {
  // Window cell holding the observing agent, in the rotated frame.
  int agent_row = kViewSize / 2;
  int agent_col = kViewSize / 2;
};

// Palette. Channel 0 marks agents, channel 1 edible or pressable things,
// channel 2 terrain. Cells outside the map render as walls.
namespace palette {
inline constexpr std::uint8_t kOtherAgent = 255;
inline constexpr std::uint8_t kSelf = 128;
inline constexpr std::uint8_t kApple = 255;
inline constexpr std::uint8_t kButton = 128;
inline constexpr std::uint8_t kWall = 255;
inline constexpr std::uint8_t kWaste = 170;
inline constexpr std::uint8_t kRiver = 85;
}  // namespace palette

struct Observation {
  // Row-major [row][col][channel], agent facing up.
  std::array<std::uint8_t, kWindowSize> window{};
  std::vector<double> smoothed_rewards;

  std::uint8_t at(int row, int col, int channel) const {
    return window[(static_cast<std::size_t>(row) * kViewSize + col) * kViewChannels + channel];
  }
};

Observation observe(const GridState& state, int agent, std::span<const double> traces,
                    const ViewConfig& view = {});

}  // namespace ssdlab
