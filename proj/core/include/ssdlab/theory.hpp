#pragma once

#include <optional>
#include <vector>

namespace ssdlab {

// Short-term payoffs of a large population with x defectors: cooperators get
// c, defectors d > c, and the population average falls linearly from d.
struct ShortTermPayoffs {
  double c = 0.0;
  double d = 1.0;
  double n = 1.0;

  void validate() const;
  double average(double x) const { return d - (d - c) / n * x; }
};

// value(x) = intercept + slope * x
struct Line {
  double intercept = 0.0;
  double slope = 0.0;

  double operator()(double x) const { return intercept + slope * x; }
};

struct TransformedPayoffs {
  Line cooperator;
  Line defector;
  // Defector count where the two lines meet, if they are not parallel.
  std::optional<double> crossing;
  // crossing lies strictly inside (0, n).
  bool interior = false;
};

// Guilt only hits defectors: cooperator line unchanged, defector line tilts down.
TransformedPayoffs aia_transform(const ShortTermPayoffs& p, double alpha);

// Envy hits both roles, defectors harder (beta_d > beta_c).
TransformedPayoffs dia_transform(const ShortTermPayoffs& p, double beta_c, double beta_d);

struct TheoryRow {
  double x;
  double cooperator;
  double defector;
  double average;
};

// Samples both lines at x = 0, 1, ..., floor(n).
std::vector<TheoryRow> tabulate(const ShortTermPayoffs& p, const TransformedPayoffs& t);

}  // namespace ssdlab
