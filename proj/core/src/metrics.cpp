#include "ssdlab/metrics.hpp"

#include <cmath>
#include <numeric>

#include "ssdlab/errors.hpp"

namespace ssdlab {

EpisodeRecord EpisodeRecord::empty(int agents, bool is_cleanup) {
  EpisodeRecord r;
  const auto n = static_cast<std::size_t>(agents);
  r.rewards.assign(n, {});
  r.waste_cleaned.assign(n, 0);
  r.apples_eaten.assign(n, 0);
  r.fines_landed.assign(n, 0);
  r.is_cleanup = is_cleanup;
  return r;
}

void EpisodeRecord::append(const std::vector<double>& step_rewards) {
  for (std::size_t i = 0; i < rewards.size(); ++i) rewards[i].push_back(step_rewards[i]);
  ++T;
}

std::vector<double> EpisodeRecord::returns() const {
  std::vector<double> out;
  out.reserve(rewards.size());
  for (const auto& seq : rewards) out.push_back(std::accumulate(seq.begin(), seq.end(), 0.0));
  return out;
}

double utilitarian(const EpisodeRecord& rec) {
  if (rec.T <= 0) throw DomainError("utilitarian metric needs T > 0");
  const auto r = rec.returns();
  return std::accumulate(r.begin(), r.end(), 0.0) / rec.T;
}

double equality(const EpisodeRecord& rec) {
  const auto r = rec.returns();
  const double total = std::accumulate(r.begin(), r.end(), 0.0);
  if (total == 0.0) return 1.0;
  double diff = 0.0;
  for (double a : r) {
    for (double b : r) diff += std::abs(a - b);
  }
  return 1.0 - diff / (2.0 * static_cast<double>(r.size()) * total);
}

bool negative_total_return(const EpisodeRecord& rec) {
  const auto r = rec.returns();
  return std::accumulate(r.begin(), r.end(), 0.0) < 0.0;
}

double sustainability(const EpisodeRecord& rec) {
  double sum = 0.0;
  int counted = 0;
  for (const auto& seq : rec.rewards) {
    double times = 0.0;
    int events = 0;
    for (std::size_t t = 0; t < seq.size(); ++t) {
      if (seq[t] > 0.0) {
        times += static_cast<double>(t + 1);
        ++events;
      }
    }
    if (events > 0) {
      sum += times / events;
      ++counted;
    }
  }
  return counted == 0 ? static_cast<double>(rec.T) : sum / counted;
}

double contribution(const EpisodeRecord& rec) {
  if (!rec.is_cleanup) throw DomainError("contribution is only defined for Cleanup episodes");
  return std::accumulate(rec.waste_cleaned.begin(), rec.waste_cleaned.end(), 0.0);
}

MetricsRow compute_metrics(const EpisodeRecord& rec) {
  MetricsRow row;
  row.utilitarian = utilitarian(rec);
  row.equality = equality(rec);
  row.sustainability = sustainability(rec);
  if (rec.is_cleanup) row.contribution = contribution(rec);
  row.apples = std::accumulate(rec.apples_eaten.begin(), rec.apples_eaten.end(), 0);
  row.fines = std::accumulate(rec.fines_landed.begin(), rec.fines_landed.end(), 0);
  row.negative_total = negative_total_return(rec);
  return row;
}

}  // namespace ssdlab
