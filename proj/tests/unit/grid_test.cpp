#include <gtest/gtest.h>

#include <vector>

#include "ssdlab/grid.hpp"
#include "ssdlab/map_loader.hpp"

using namespace ssdlab;

namespace {

GridState open_room(int agents) {
  return load_map(
      "7x5 4\n"
      "#######\n"
      "#P...P#\n"
      "#.....#\n"
      "#P...P#\n"
      "#######\n",
      agents, 0);
}

std::vector<Action> actions(std::initializer_list<Action> list) { return list; }

}  // namespace

TEST(Rotation, FourTurnsReturnHome) {
  for (auto o : {Orientation::North, Orientation::East, Orientation::South, Orientation::West}) {
    EXPECT_EQ(rotate_right(rotate_right(rotate_right(rotate_right(o)))), o);
    EXPECT_EQ(rotate_left(rotate_right(o)), o);
  }
  EXPECT_EQ(rotate_right(Orientation::North), Orientation::East);
  EXPECT_EQ(rotate_left(Orientation::North), Orientation::West);
}

TEST(Movement, RelativeToOrientation) {
  auto s = open_room(1);
  s.agents[0].pos = {2, 3};
  s.agents[0].orientation = Orientation::East;
  s = resolve_moves(s, actions({Action::Forward}));
  EXPECT_EQ(s.agents[0].pos, (Pos{2, 4}));
  s = resolve_moves(s, actions({Action::StepLeft}));
  EXPECT_EQ(s.agents[0].pos, (Pos{1, 4}));
  s = resolve_moves(s, actions({Action::Backward}));
  EXPECT_EQ(s.agents[0].pos, (Pos{1, 3}));
  s = resolve_moves(s, actions({Action::RotateRight}));
  EXPECT_EQ(s.agents[0].orientation, Orientation::South);
  EXPECT_EQ(s.agents[0].pos, (Pos{1, 3}));
}

TEST(Movement, WallsBlock) {
  auto s = open_room(1);
  const Pos start = s.agents[0].pos;  // (1,1) facing north, wall ahead
  s = resolve_moves(s, actions({Action::Forward}));
  EXPECT_EQ(s.agents[0].pos, start);
}

TEST(Movement, SwapsAreBlocked) {
  auto s = open_room(2);
  s.agents[0].pos = {2, 2};
  s.agents[0].orientation = Orientation::East;
  s.agents[1].pos = {2, 3};
  s.agents[1].orientation = Orientation::West;
  s = resolve_moves(s, actions({Action::Forward, Action::Forward}));
  EXPECT_EQ(s.agents[0].pos, (Pos{2, 2}));
  EXPECT_EQ(s.agents[1].pos, (Pos{2, 3}));
}

TEST(Movement, ChainIntoStationaryAgentIsBlocked) {
  auto s = open_room(3);
  for (auto& a : s.agents) a.orientation = Orientation::East;
  s.agents[0].pos = {2, 1};
  s.agents[1].pos = {2, 2};
  s.agents[2].pos = {2, 3};
  s = resolve_moves(s, actions({Action::Forward, Action::Forward, Action::Noop}));
  EXPECT_EQ(s.agents[0].pos, (Pos{2, 1}));
  EXPECT_EQ(s.agents[1].pos, (Pos{2, 2}));
}

TEST(Movement, FollowingIntoVacatedCellSucceeds) {
  auto s = open_room(2);
  for (auto& a : s.agents) a.orientation = Orientation::East;
  s.agents[0].pos = {2, 1};
  s.agents[1].pos = {2, 2};
  s = resolve_moves(s, actions({Action::Forward, Action::Forward}));
  EXPECT_EQ(s.agents[0].pos, (Pos{2, 2}));
  EXPECT_EQ(s.agents[1].pos, (Pos{2, 3}));
}

TEST(Movement, ContestedCellWonHalfTheTime) {
  auto base = open_room(2);
  base.agents[0].pos = {2, 2};
  base.agents[0].orientation = Orientation::East;
  base.agents[1].pos = {2, 4};
  base.agents[1].orientation = Orientation::West;
  int first = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    auto s = base;
    s.rng = Rng(static_cast<std::uint64_t>(t));
    s = resolve_moves(s, actions({Action::Forward, Action::Forward}));
    const bool a = s.agents[0].pos == Pos{2, 3};
    const bool b = s.agents[1].pos == Pos{2, 3};
    ASSERT_NE(a, b);
    first += a ? 1 : 0;
  }
  EXPECT_NEAR(static_cast<double>(first) / trials, 0.5, 0.02);
}

TEST(Movement, DeterministicGivenSeedAndActions) {
  auto a = open_room(4);
  auto b = open_room(4);
  Rng picker(9);
  for (int t = 0; t < 200; ++t) {
    std::vector<Action> acts(4);
    for (auto& x : acts) x = static_cast<Action>(picker.below(7));
    resolve_moves_in_place(a, acts);
    resolve_moves_in_place(b, acts);
    ASSERT_EQ(checksum(a), checksum(b));
  }
}

TEST(Movement, NeverTwoAgentsPerCell) {
  auto s = open_room(4);
  Rng picker(11);
  for (int t = 0; t < 2000; ++t) {
    std::vector<Action> acts(4);
    for (auto& x : acts) x = static_cast<Action>(picker.below(7));
    resolve_moves_in_place(s, acts);
    for (std::size_t i = 0; i < 4; ++i) {
      ASSERT_TRUE(s.walkable(s.agents[i].pos));
      for (std::size_t j = i + 1; j < 4; ++j) ASSERT_NE(s.agents[i].pos, s.agents[j].pos);
    }
  }
}

TEST(Movement, FrozenAgentsIgnoreActions) {
  auto s = open_room(1);
  s.agents[0].pos = {2, 2};
  s.agents[0].frozen_until = 5;
  s = resolve_moves(s, actions({Action::Forward}));
  EXPECT_EQ(s.agents[0].pos, (Pos{2, 2}));
}

TEST(Beam, StopsAtWallsAndLength) {
  auto s = open_room(1);
  s.agents[0].pos = {2, 1};
  s.agents[0].orientation = Orientation::East;
  auto beam = project_beam(s, 0, BeamKind::Fine, 3);
  ASSERT_EQ(beam.cells.size(), 3u);
  EXPECT_EQ(beam.cells.front(), (Pos{2, 2}));
  beam = project_beam(s, 0, BeamKind::Fine, 10);
  EXPECT_EQ(beam.cells.size(), 4u);  // columns 2..5, then the wall
  EXPECT_TRUE(beam.empty());
}

TEST(Beam, FineStopsAtFirstAgent) {
  auto s = open_room(3);
  s.agents[0].pos = {2, 1};
  s.agents[0].orientation = Orientation::East;
  s.agents[1].pos = {2, 3};
  s.agents[2].pos = {2, 4};
  const auto beam = project_beam(s, 0, BeamKind::Fine, 5);
  ASSERT_EQ(beam.hit_agents.size(), 1u);
  EXPECT_EQ(beam.hit_agents[0], 1);
  EXPECT_EQ(beam.cells.back(), (Pos{2, 3}));
}

TEST(Beam, CleanPassesThroughAgentsAndCollectsWaste) {
  auto s = open_room(2);
  s.agents[0].pos = {2, 1};
  s.agents[0].orientation = Orientation::East;
  s.agents[1].pos = {2, 2};
  s.at({2, 3}) = Cell::Waste;
  s.at({2, 5}) = Cell::Waste;
  const auto beam = project_beam(s, 0, BeamKind::Clean, 5);
  EXPECT_TRUE(beam.hit_agents.empty());
  ASSERT_EQ(beam.hit_waste.size(), 2u);
  EXPECT_EQ(beam.hit_waste[0], (Pos{2, 3}));
}

TEST(Observe, WindowShapeAndSelfAtCentre) {
  auto s = open_room(2);
  const std::vector<double> traces{1.5, -2.0};
  const auto obs = observe(s, 0, traces);
  EXPECT_EQ(obs.window.size(), 15u * 15u * 3u);
  EXPECT_EQ(obs.at(7, 7, 0), palette::kSelf);
  EXPECT_EQ(obs.smoothed_rewards, traces);
}

TEST(Observe, OutOfBoundsRendersAsWall) {
  auto s = open_room(1);
  const auto obs = observe(s, 0, std::vector<double>{0.0});
  // Agent at (1,1) facing north: window row 0 is 7 rows north, off the map.
  for (int c = 0; c < kViewSize; ++c) EXPECT_EQ(obs.at(0, c, 2), palette::kWall);
}

TEST(Observe, RotatesWithAgent) {
  auto s = open_room(1);
  s.agents[0].pos = {2, 3};
  s.at({2, 4}) = Cell::Apple;  // east of the agent
  s.agents[0].orientation = Orientation::North;
  EXPECT_EQ(observe(s, 0, std::vector<double>{0.0}).at(7, 8, 1), palette::kApple);
  s.agents[0].orientation = Orientation::East;
  EXPECT_EQ(observe(s, 0, std::vector<double>{0.0}).at(6, 7, 1), palette::kApple);
  s.agents[0].orientation = Orientation::South;
  EXPECT_EQ(observe(s, 0, std::vector<double>{0.0}).at(7, 6, 1), palette::kApple);
}

TEST(Observe, CellsOutsideWindowDoNotMatter) {
  const std::string row_wall(40, '#');
  std::string text = "40x5 1\n" + row_wall + "\n#P" + std::string(37, '.') + "#\n";
  text += "#" + std::string(38, '.') + "#\n#" + std::string(38, '.') + "#\n" + row_wall + "\n";
  auto s = load_map(text);
  const auto before = observe(s, 0, std::vector<double>{0.0});
  s.at({2, 30}) = Cell::Apple;
  const auto after = observe(s, 0, std::vector<double>{0.0});
  EXPECT_EQ(before.window, after.window);
}

TEST(Checksum, SensitiveToState) {
  auto s = open_room(2);
  const auto base = checksum(s);
  auto t = s;
  t.agents[1].orientation = Orientation::West;
  EXPECT_NE(checksum(t), base);
  t = s;
  t.step = 1;
  EXPECT_NE(checksum(t), base);
  t = s;
  t.at({2, 2}) = Cell::Apple;
  EXPECT_NE(checksum(t), base);
}
