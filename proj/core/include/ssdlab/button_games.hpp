#pragma once

#include <vector>

#include "ssdlab/environment.hpp"

namespace ssdlab {

// Two-room games where the only interaction is a button. Agent 0 owns the
// left room, agent 1 the right. Walking onto a button presses it; each button
// fires at most once per episode.
//
//   Dictate: left button moves every uneaten left apple into the right room.
//   Give:    left button adds the right room's starting endowment to the right room.
//   Take:    right button destroys every uneaten apple in the left room.
class ButtonGameEnv final : public Environment {
 public:
  ButtonGameEnv(EnvKind kind, GridState initial, ButtonGameConfig config,
                int beam_length = kDefaultBeamLength, ViewConfig view = {});

  EnvKind kind() const override { return kind_; }
  std::unique_ptr<Environment> clone() const override;
  std::span<const Action> action_set() const override;

  static constexpr int kLeft = 0;
  static constexpr int kRight = 1;

  // Room index of a cell, or -1 for walls and unreachable cells.
  int room_of(Pos p) const { return room_[initial_.index(p)]; }
  int apples_in_room(int room) const;
  int initial_endowment(int room) const { return endowment_[static_cast<std::size_t>(room)]; }
  bool pressed() const { return pressed_; }
  // Agent whose room holds the button.
  int button_owner() const;

 private:
  void on_reset() override;
  void on_step(std::span<const Action> actions, std::vector<double>& rewards,
               StepInfo& info) override;
  bool finished() const override;

  int press();

  EnvKind kind_;
  ButtonGameConfig config_;
  std::vector<int> room_;
  std::array<int, 2> endowment_{};
  bool pressed_ = false;
};

}  // namespace ssdlab
