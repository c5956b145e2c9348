#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace ssdlab {

// One episode of extrinsic outcomes, the input to every social metric.
struct EpisodeRecord {
  int T = 0;
  // rewards[i][t] is agent i's extrinsic reward at timestep t+1.
  std::vector<std::vector<double>> rewards;
  std::vector<int> waste_cleaned;
  std::vector<int> apples_eaten;
  std::vector<int> fines_landed;
  bool is_cleanup = false;

  static EpisodeRecord empty(int agents, bool is_cleanup);
  void append(const std::vector<double>& step_rewards);
  std::vector<double> returns() const;
  int num_agents() const { return static_cast<int>(rewards.size()); }
};

// Sum of all agents' returns divided by T (collective return per step).
double utilitarian(const EpisodeRecord& rec);

// 1 - Gini coefficient of the returns. A zero total counts as perfect equality.
double equality(const EpisodeRecord& rec);
// Negative totals make the Gini ratio meaningless; equality() still evaluates
// the formula and callers report this flag next to it.
bool negative_total_return(const EpisodeRecord& rec);

// Mean over agents of the mean (1-based) timestep of their positive rewards.
// Agents with no positive reward are skipped; if nobody has one, returns T.
double sustainability(const EpisodeRecord& rec);

// Total waste cells cleaned. Cleanup only.
double contribution(const EpisodeRecord& rec);

struct MetricsRow {
  double utilitarian = 0.0;
  double equality = 1.0;
  double sustainability = 0.0;
  std::optional<double> contribution;
  int apples = 0;
  int fines = 0;
  bool negative_total = false;
};

MetricsRow compute_metrics(const EpisodeRecord& rec);

}  // namespace ssdlab
