#include "ssdlab/theory.hpp"

#include <cmath>

#include "ssdlab/errors.hpp"

namespace ssdlab {

void ShortTermPayoffs::validate() const {
  if (!(std::isfinite(c) && std::isfinite(d) && d > c)) {
    throw DomainError("short-term payoffs need d > c");
  }
  if (!(std::isfinite(n) && n > 0.0)) throw DomainError("population size must be positive");
}

namespace {

void locate_crossing(TransformedPayoffs& t, double n) {
  const double slope_gap = t.defector.slope - t.cooperator.slope;
  if (slope_gap == 0.0) return;
  const double x = (t.cooperator.intercept - t.defector.intercept) / slope_gap;
  t.crossing = x;
  t.interior = x > 0.0 && x < n;
}

}  // namespace

TransformedPayoffs aia_transform(const ShortTermPayoffs& p, double alpha) {
  p.validate();
  if (!(std::isfinite(alpha) && alpha >= 0.0)) throw DomainError("alpha must be >= 0");
  TransformedPayoffs t;
  t.cooperator = {p.c, 0.0};
  t.defector = {p.d, -alpha * (p.d - p.c) / p.n};
  locate_crossing(t, p.n);
  return t;
}

TransformedPayoffs dia_transform(const ShortTermPayoffs& p, double beta_c, double beta_d) {
  p.validate();
  if (!(std::isfinite(beta_c) && std::isfinite(beta_d) && beta_c > 0.0 && beta_d > beta_c)) {
    throw DomainError("dia_transform needs beta_d > beta_c > 0");
  }
  const double gap = p.d - p.c;
  TransformedPayoffs t;
  t.cooperator = {p.c - beta_c * gap, beta_c * gap / p.n};
  t.defector = {p.d - beta_d * gap, beta_d * gap / p.n};
  locate_crossing(t, p.n);
  return t;
}

std::vector<TheoryRow> tabulate(const ShortTermPayoffs& p, const TransformedPayoffs& t) {
  std::vector<TheoryRow> rows;
  const int last = static_cast<int>(std::floor(p.n));
  for (int i = 0; i <= last; ++i) {
    const double x = i;
    rows.push_back({x, t.cooperator(x), t.defector(x), p.average(x)});
  }
  return rows;
}

}  // namespace ssdlab
