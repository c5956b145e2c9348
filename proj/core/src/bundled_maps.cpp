#include <array>
#include <string_view>
#include <utility>

#include "ssdlab/map_loader.hpp"

namespace ssdlab {
namespace {

// River on the west, orchard on the east, spawn corridor between.
constexpr std::string_view kCleanup = R"(20x12 5
####################
#~~~~....P....aaaaa#
#~~~~.........aaaaa#
#~~~~....P....aaaaa#
#~~~~.........aaaaa#
#~~~~....P....aaaaa#
#~~~~.........aaaaa#
#~~~~....P....aaaaa#
#~~~~.........aaaaa#
#~~~~....P....aaaaa#
#~~~~.........aaaaa#
####################
)";

constexpr std::string_view kCleanupMini = R"(12x9 5
############
#~~~.P..aaa#
#~~~....aaa#
#~~~.P..aaa#
#~~~....aaa#
#~~~.P..aaa#
#~~~....aaa#
#~~~.P.Paaa#
############
)";

// Six dense patches joined by thin single-apple links.
constexpr std::string_view kHarvest = R"(25x11 5
#########################
#.AAA......AAA......AAA.#
#AAAAA....AAAAA....AAAAA#
#.AAA..A...AAA..A...AAA.#
#......AA....P....AA....#
#...P.......P.......P...#
#......AA....P....AA....#
#.AAA..A...AAA..A...AAA.#
#AAAAA....AAAAA....AAAAA#
#.AAA......AAA......AAA.#
#########################
)";

constexpr std::string_view kHarvestMini = R"(15x9 5
###############
#.AAA.....AAA.#
#AAAAA...AAAAA#
#.AAA..P..AAA.#
#....P.P.P....#
#.AAA..P..AAA.#
#AAAAA...AAAAA#
#.AAA.....AAA.#
###############
)";

// Two sealed rooms. Agent 0 lives on the left, agent 1 on the right. Each
// button sits in a dead-end niche off every apple route.
constexpr std::string_view kDictate = R"(11x6 2
###########
#AAA.#aaaa#
#P.AA#P.aa#
#..A.#aa..#
#B#########
###########
)";

constexpr std::string_view kGive = R"(11x6 2
###########
#AAA.#AAaa#
#P.AA#P.Aa#
#..A.#....#
#B#########
###########
)";

constexpr std::string_view kTake = R"(11x6 2
###########
#AAA.#AA..#
#P.AA#P.A.#
#..A.#....#
######B####
###########
)";

constexpr std::array<std::pair<std::string_view, std::string_view>, 7> kMaps{{
    {"cleanup", kCleanup},
    {"cleanup_mini", kCleanupMini},
    {"harvest", kHarvest},
    {"harvest_mini", kHarvestMini},
    {"dictate", kDictate},
    {"give", kGive},
    {"take", kTake},
}};

}  // namespace

std::optional<std::string_view> bundled_map(std::string_view name) {
  for (const auto& [key, text] : kMaps) {
    if (key == name) return text;
  }
  return std::nullopt;
}

std::vector<std::string_view> bundled_map_names() {
  std::vector<std::string_view> names;
  for (const auto& entry : kMaps) names.push_back(entry.first);
  return names;
}

std::string_view default_map_for(std::string_view env_id) {
  for (const auto& entry : kMaps) {
    if (entry.first == env_id) return entry.first;
  }
  return {};
}

}  // namespace ssdlab
