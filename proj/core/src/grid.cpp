#include "ssdlab/grid.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "ssdlab/errors.hpp"

namespace ssdlab {

std::string_view to_string(Action action) {
  switch (action) {
    case Action::Noop: return "noop";
    case Action::Forward: return "forward";
    case Action::Backward: return "backward";
    case Action::StepLeft: return "step_left";
    case Action::StepRight: return "step_right";
    case Action::RotateLeft: return "rotate_left";
    case Action::RotateRight: return "rotate_right";
    case Action::FireFine: return "fire_fine";
    case Action::FireClean: return "fire_clean";
  }
  return "unknown";
}

std::optional<int> GridState::agent_at(Pos p) const {
  for (const auto& a : agents) {
    if (a.pos == p) return a.id;
  }
  return std::nullopt;
}

std::size_t GridState::count(Cell c) const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), c));
}

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_byte(std::uint64_t& h, std::uint8_t b) {
  h ^= b;
  h *= kFnvPrime;
}

void fnv_u64(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) fnv_byte(h, static_cast<std::uint8_t>(v >> (8 * i)));
}

std::optional<Pos> move_target(const AgentBody& body, Action action) {
  const Orientation o = body.orientation;
  switch (action) {
    case Action::Forward: return body.pos + direction(o);
    case Action::Backward: return body.pos - direction(o);
    case Action::StepLeft: return body.pos + direction(rotate_left(o));
    case Action::StepRight: return body.pos + direction(rotate_right(o));
    default: return std::nullopt;
  }
}

}  // namespace

std::uint64_t checksum(const GridState& state) {
  std::uint64_t h = kFnvOffset;
  fnv_u64(h, static_cast<std::uint64_t>(state.width));
  fnv_u64(h, static_cast<std::uint64_t>(state.height));
  for (Cell c : state.cells) fnv_byte(h, static_cast<std::uint8_t>(c));
  for (const auto& a : state.agents) {
    fnv_u64(h, static_cast<std::uint64_t>(a.id));
    fnv_u64(h, static_cast<std::uint64_t>(a.pos.row));
    fnv_u64(h, static_cast<std::uint64_t>(a.pos.col));
    fnv_byte(h, static_cast<std::uint8_t>(a.orientation));
    fnv_u64(h, static_cast<std::uint64_t>(a.frozen_until));
  }
  fnv_u64(h, static_cast<std::uint64_t>(state.step));
  return h;
}

void resolve_moves_in_place(GridState& state, std::span<const Action> actions) {
  const std::size_t n = state.agents.size();
  if (actions.size() != n) {
    throw ConfigError("expected " + std::to_string(n) + " actions, got " +
                      std::to_string(actions.size()));
  }

  std::vector<Pos> target(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& body = state.agents[i];
    target[i] = body.pos;
    if (state.step < body.frozen_until) continue;
    switch (actions[i]) {
      case Action::RotateLeft: body.orientation = rotate_left(body.orientation); break;
      case Action::RotateRight: body.orientation = rotate_right(body.orientation); break;
      default: {
        if (auto t = move_target(body, actions[i]); t && state.walkable(*t)) target[i] = *t;
      }
    }
  }

  // Contested cells: ordered map keeps the rng draw order deterministic.
  std::map<Pos, std::vector<std::size_t>> claims;
  for (std::size_t i = 0; i < n; ++i) {
    if (target[i] != state.agents[i].pos) claims[target[i]].push_back(i);
  }
  for (auto& [cell, claimants] : claims) {
    if (claimants.size() < 2) continue;
    const auto winner = claimants[state.rng.below(claimants.size())];
    for (auto i : claimants) {
      if (i != winner) target[i] = state.agents[i].pos;
    }
  }

  // Block swaps and moves into cells whose occupant ends up staying.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (target[i] == state.agents[i].pos) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || state.agents[j].pos != target[i]) continue;
        const bool stays = target[j] == state.agents[j].pos;
        const bool swaps = target[j] == state.agents[i].pos;
        if (stays || swaps) {
          target[i] = state.agents[i].pos;
          if (swaps) target[j] = state.agents[j].pos;
          changed = true;
        }
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) state.agents[i].pos = target[i];
}

GridState resolve_moves(GridState state, std::span<const Action> actions) {
  resolve_moves_in_place(state, actions);
  return state;
}

BeamResult project_beam(const GridState& state, int agent, BeamKind kind, int beam_length) {
  BeamResult result;
  const auto& body = state.agents.at(static_cast<std::size_t>(agent));
  const Pos step = direction(body.orientation);
  Pos p = body.pos;
  for (int i = 0; i < beam_length; ++i) {
    p = p + step;
    if (!state.walkable(p)) break;
    result.cells.push_back(p);
    if (kind == BeamKind::Fine) {
      if (auto hit = state.agent_at(p); hit && *hit != agent) {
        result.hit_agents.push_back(*hit);
        break;
      }
    } else if (state.at(p) == Cell::Waste) {
      result.hit_waste.push_back(p);
    }
  }
  return result;
}

Observation observe(const GridState& state, int agent, std::span<const double> traces,
                    const ViewConfig& view) {
  Observation obs;
  obs.smoothed_rewards.assign(traces.begin(), traces.end());

  const auto& body = state.agents.at(static_cast<std::size_t>(agent));
  const Pos forward = direction(body.orientation);
  const Pos right = direction(rotate_right(body.orientation));

  auto paint = [&](int r, int c, int channel, std::uint8_t value) {
    obs.window[(static_cast<std::size_t>(r) * kViewSize + c) * kViewChannels + channel] = value;
  };

  for (int r = 0; r < kViewSize; ++r) {
    for (int c = 0; c < kViewSize; ++c) {
      const Pos world = body.pos + (view.agent_row - r) * forward + (c - view.agent_col) * right;
      if (!state.in_bounds(world)) {
        paint(r, c, 2, palette::kWall);
        continue;
      }
      switch (state.at(world)) {
        case Cell::Apple: paint(r, c, 1, palette::kApple); break;
        case Cell::Button: paint(r, c, 1, palette::kButton); break;
        case Cell::Wall: paint(r, c, 2, palette::kWall); break;
        case Cell::Waste: paint(r, c, 2, palette::kWaste); break;
        case Cell::River: paint(r, c, 2, palette::kRiver); break;
        case Cell::Empty:
        case Cell::SpawnPoint: break;
      }
      if (auto occupant = state.agent_at(world)) {
        paint(r, c, 0, *occupant == agent ? palette::kSelf : palette::kOtherAgent);
      }
    }
  }
  return obs;
}

}  // namespace ssdlab
