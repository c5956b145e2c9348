#include "ssdlab/map_loader.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "ssdlab/errors.hpp"

namespace ssdlab {
namespace {

struct Header {
  int width = 0;
  int height = 0;
  int players = 0;
};

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && out > 0;
}

Header parse_header(std::string_view line) {
  const auto x = line.find('x');
  const auto space = line.find(' ');
  Header h;
  if (x == std::string_view::npos || space == std::string_view::npos || space < x ||
      !parse_int(line.substr(0, x), h.width) ||
      !parse_int(line.substr(x + 1, space - x - 1), h.height) ||
      !parse_int(line.substr(space + 1), h.players)) {
    throw ParseError("malformed header, expected \"WxH N\"", 1, 1);
  }
  return h;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  // Trailing newline produces an empty final entry.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

GridState parse(std::string_view text, std::optional<int> override_agents, std::uint64_t seed) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError("empty map", 1, 1);
  const Header header = parse_header(lines[0]);
  const int players = override_agents.value_or(header.players);
  if (players <= 0) throw ConfigError("player count must be positive");

  GridState state;
  state.width = header.width;
  state.height = header.height;
  state.cells.assign(static_cast<std::size_t>(header.width) * header.height, Cell::Empty);
  state.apple_capable.assign(state.cells.size(), 0);
  state.rng = Rng(seed);

  std::vector<Pos> spawns;
  int row = 0;
  std::size_t line_no = 1;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    line_no = li + 1;
    const auto line = lines[li];
    if (!line.empty() && line.front() == ';') continue;
    if (row >= header.height) throw ParseError("more rows than declared height", line_no, 1);
    if (static_cast<int>(line.size()) != header.width) {
      throw ParseError("ragged row: expected " + std::to_string(header.width) +
                           " characters, found " + std::to_string(line.size()),
                       line_no, std::min(line.size(), static_cast<std::size_t>(header.width)) + 1);
    }
    for (int col = 0; col < header.width; ++col) {
      const Pos p{row, col};
      Cell& cell = state.at(p);
      switch (line[static_cast<std::size_t>(col)]) {
        case '#': cell = Cell::Wall; break;
        case '.': cell = Cell::Empty; break;
        case 'P':
          cell = Cell::SpawnPoint;
          spawns.push_back(p);
          break;
        case 'A':
          cell = Cell::Apple;
          state.apple_capable[state.index(p)] = 1;
          break;
        case 'a':
          cell = Cell::Empty;
          state.apple_capable[state.index(p)] = 1;
          break;
        case '~': cell = Cell::River; break;
        case 'W': cell = Cell::Waste; break;
        case 'B': cell = Cell::Button; break;
        default:
          throw ParseError(std::string("unknown map character '") + line[col] + "'", line_no,
                           static_cast<std::size_t>(col) + 1);
      }
    }
    ++row;
  }
  if (row != header.height) {
    throw ParseError("expected " + std::to_string(header.height) + " rows, found " +
                         std::to_string(row),
                     line_no + 1, 1);
  }
  if (static_cast<int>(spawns.size()) < players) {
    throw ParseError("insufficient spawn points: map has " + std::to_string(spawns.size()) +
                         ", need " + std::to_string(players),
                     1, 1);
  }
  for (int i = 0; i < players; ++i) {
    state.agents.push_back(AgentBody{i, spawns[static_cast<std::size_t>(i)], Orientation::North, 0});
  }
  return state;
}

}  // namespace

GridState load_map(std::string_view text, std::uint64_t seed) {
  return parse(text, std::nullopt, seed);
}

GridState load_map(std::string_view text, int num_agents, std::uint64_t seed) {
  return parse(text, num_agents, seed);
}

std::string read_map_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open map file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

GridState load_map_file(const std::string& path, std::uint64_t seed) {
  return load_map(read_map_text(path), seed);
}

std::vector<Pos> spawn_points(const GridState& state) {
  std::vector<Pos> out;
  for (std::size_t i = 0; i < state.cells.size(); ++i) {
    if (state.cells[i] == Cell::SpawnPoint) out.push_back(state.pos_of(i));
  }
  return out;
}

}  // namespace ssdlab
