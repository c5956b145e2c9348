#include "ssdlab/button_games.hpp"

#include <array>
#include <deque>

#include "ssdlab/errors.hpp"

namespace ssdlab {
namespace {

constexpr std::array<Action, 8> kButtonActions{
    Action::Noop,      Action::Forward,    Action::Backward,    Action::StepLeft,
    Action::StepRight, Action::RotateLeft, Action::RotateRight, Action::FireFine,
};

void flood(const GridState& state, Pos start, int room, std::vector<int>& rooms) {
  std::deque<Pos> frontier{start};
  rooms[state.index(start)] = room;
  while (!frontier.empty()) {
    const Pos p = frontier.front();
    frontier.pop_front();
    for (auto o : {Orientation::North, Orientation::East, Orientation::South, Orientation::West}) {
      const Pos q = p + direction(o);
      if (!state.walkable(q) || rooms[state.index(q)] != -1) continue;
      rooms[state.index(q)] = room;
      frontier.push_back(q);
    }
  }
}

}  // namespace

ButtonGameEnv::ButtonGameEnv(EnvKind kind, GridState initial, ButtonGameConfig config,
                             int beam_length, ViewConfig view)
    : Environment(std::move(initial), beam_length, view), kind_(kind), config_(config) {
  if (!is_button_game(kind_)) throw ConfigError("not a button game");
  config_.validate();
  if (initial_.agents.size() != 2) throw ConfigError("button games need exactly 2 agents");

  room_.assign(initial_.cells.size(), -1);
  flood(initial_, initial_.agents[kLeft].pos, kLeft, room_);
  if (room_[initial_.index(initial_.agents[kRight].pos)] != -1) {
    throw ConfigError("button game rooms must not be mutually reachable");
  }
  flood(initial_, initial_.agents[kRight].pos, kRight, room_);

  int buttons = 0;
  int button_room = -1;
  for (std::size_t i = 0; i < initial_.cells.size(); ++i) {
    if (initial_.cells[i] == Cell::Button) {
      ++buttons;
      button_room = room_[i];
    }
    if (initial_.cells[i] == Cell::Apple && room_[i] >= 0) {
      ++endowment_[static_cast<std::size_t>(room_[i])];
    }
  }
  const int expected_room = kind_ == EnvKind::Take ? kRight : kLeft;
  if (buttons != 1 || button_room != expected_room) {
    throw ConfigError(std::string(to_string(kind_)) + " needs exactly one button, in the " +
                      (expected_room == kLeft ? "left" : "right") + " room");
  }
}

std::unique_ptr<Environment> ButtonGameEnv::clone() const {
  return std::make_unique<ButtonGameEnv>(*this);
}

std::span<const Action> ButtonGameEnv::action_set() const { return kButtonActions; }

int ButtonGameEnv::apples_in_room(int room) const {
  int n = 0;
  for (std::size_t i = 0; i < state_.cells.size(); ++i) {
    if (state_.cells[i] == Cell::Apple && room_[i] == room) ++n;
  }
  return n;
}

int ButtonGameEnv::button_owner() const { return kind_ == EnvKind::Take ? kRight : kLeft; }

void ButtonGameEnv::on_reset() { pressed_ = false; }

int ButtonGameEnv::press() {
  auto place_right = [&](int amount) {
    int placed = 0;
    for (std::size_t i = 0; i < state_.cells.size() && placed < amount; ++i) {
      if (room_[i] != kRight || !state_.apple_capable[i] || state_.cells[i] != Cell::Empty) continue;
      if (state_.agent_at(state_.pos_of(i))) continue;
      state_.cells[i] = Cell::Apple;
      ++placed;
    }
    return placed;
  };
  auto clear_left = [&] {
    int removed = 0;
    for (std::size_t i = 0; i < state_.cells.size(); ++i) {
      if (room_[i] == kLeft && state_.cells[i] == Cell::Apple) {
        state_.cells[i] = Cell::Empty;
        ++removed;
      }
    }
    return removed;
  };

  switch (kind_) {
    case EnvKind::Dictate: return place_right(clear_left());
    case EnvKind::Give: return place_right(endowment_[kRight]);
    case EnvKind::Take: return clear_left();
    default: return 0;
  }
}

void ButtonGameEnv::on_step(std::span<const Action> actions, std::vector<double>& rewards,
                            StepInfo& info) {
  fire_fines(actions, config_.fine_cost, config_.fine_penalty, rewards, info);

  for (std::size_t i = 0; i < state_.agents.size(); ++i) {
    const Pos p = state_.agents[i].pos;
    if (p == previous_positions_[i] || state_.at(p) != Cell::Button) continue;
    ++info.button_presses[i];
    const int moved = pressed_ ? 0 : press();
    pressed_ = true;
    info.events.push_back({EventType::ButtonPressed, state_.step, static_cast<int>(i), -1, moved});
  }

  eat_apples(rewards, info, {});
}

bool ButtonGameEnv::finished() const {
  return state_.count(Cell::Apple) == 0 || state_.step >= config_.max_steps;
}

}  // namespace ssdlab
