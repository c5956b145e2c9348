#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

namespace ssdlab {

// Payoffs for one player, cooperation first: reward for mutual cooperation,
// sucker, temptation and punishment.
struct PayoffMatrix {
  double reward = 0.0;       // (c, c)
  double sucker = 0.0;       // (c, d)
  double temptation = 0.0;   // (d, c)
  double punishment = 0.0;   // (d, d)

  static PayoffMatrix chicken() { return {3.0, 1.0, 4.0, 0.0}; }
  static PayoffMatrix stag_hunt() { return {4.0, 0.0, 3.0, 1.0}; }
  static PayoffMatrix prisoners_dilemma() { return {3.0, 0.0, 4.0, 1.0}; }
};

// Reads four whitespace-separated numbers in the order reward, sucker,
// temptation, punishment. '#' starts a comment.
PayoffMatrix read_payoff_file(const std::filesystem::path& path);
PayoffMatrix parse_payoffs(std::string_view text);

enum class Profile { CC, CD, DC, DD };
std::string_view to_string(Profile p);

// Pure-strategy Nash equilibria of the symmetric game, in CC, CD, DC, DD order.
std::vector<Profile> pure_nash(const PayoffMatrix& m);

// Index l = 0..N-1 counts the *other* cooperators:
//   cooperator[l] is a cooperator's payoff with l other cooperators,
//   defector[l]   is a defector's payoff with l cooperators.
struct SchellingDiagram {
  int num_players = 0;
  std::vector<double> cooperator;
  std::vector<double> defector;
  // Present for empirical diagrams.
  std::vector<double> cooperator_stderr;
  std::vector<double> defector_stderr;

  bool has_errors() const { return !cooperator_stderr.empty(); }
  void validate() const;
};

SchellingDiagram matrix_schelling(const PayoffMatrix& m);

enum class Verdict { False, True, Inconclusive };
std::string_view to_string(Verdict v);

struct SsdVerdict {
  Verdict is_ssd = Verdict::False;
  Verdict mutual_cooperation_beats_defection = Verdict::False;  // all-C cooperator > all-D defector
  Verdict cooperation_beats_exploited = Verdict::False;         // all-C cooperator > lone cooperator
  Verdict fear = Verdict::False;
  Verdict greed = Verdict::False;
};

struct ClassifyOptions {
  // Fraction of l values checked at each end for fear and greed; at least one.
  double threshold_fraction = 1.0 / 3.0;
};

// Strict comparisons. With standard errors present, a comparison whose error
// bars overlap is Inconclusive, and the flags combine with three-valued logic.
SsdVerdict classify_ssd(const SchellingDiagram& diagram, const ClassifyOptions& options = {});

}  // namespace ssdlab
