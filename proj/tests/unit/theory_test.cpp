#include <gtest/gtest.h>

#include <cmath>

#include "ssdlab/errors.hpp"
#include "ssdlab/rng.hpp"
#include "ssdlab/theory.hpp"

using namespace ssdlab;

TEST(Theory, AverageFallsFromDToC) {
  const ShortTermPayoffs p{1.0, 3.0, 10.0};
  EXPECT_DOUBLE_EQ(p.average(0.0), 3.0);
  EXPECT_DOUBLE_EQ(p.average(10.0), 1.0);
}

TEST(Theory, GuiltCrossingAtNOverWeight) {
  const ShortTermPayoffs p{1.0, 2.0, 10.0};
  const auto t = aia_transform(p, 5.0);
  ASSERT_TRUE(t.crossing.has_value());
  EXPECT_NEAR(*t.crossing, 2.0, 1e-12);
  EXPECT_TRUE(t.interior);
  EXPECT_DOUBLE_EQ(t.cooperator(7.0), 1.0);
  EXPECT_NEAR(t.defector(*t.crossing), t.cooperator(*t.crossing), 1e-12);
}

TEST(Theory, WeakGuiltLeavesDefectionDominant) {
  const auto t = aia_transform({1.0, 2.0, 10.0}, 0.5);
  EXPECT_NEAR(*t.crossing, 20.0, 1e-12);
  EXPECT_FALSE(t.interior);
  EXPECT_FALSE(aia_transform({1.0, 2.0, 10.0}, 0.0).crossing.has_value());
}

TEST(Theory, EnvyCrossing) {
  const ShortTermPayoffs p{0.0, 1.0, 8.0};
  const auto t = dia_transform(p, 1.0, 3.0);
  EXPECT_NEAR(*t.crossing, 8.0 * (1.0 - 1.0 / 2.0), 1e-12);
  EXPECT_TRUE(t.interior);
  // Small gap between the envy weights pushes the crossing below zero.
  const auto weak = dia_transform(p, 1.0, 1.5);
  EXPECT_LT(*weak.crossing, 0.0);
  EXPECT_FALSE(weak.interior);
}

TEST(Theory, RandomDrawsMatchDirectEvaluation) {
  Rng rng(77);
  for (int i = 0; i < 100; ++i) {
    const double c = rng.uniform() * 4.0 - 2.0;
    const double d = c + 0.1 + rng.uniform() * 3.0;
    const double n = 2.0 + rng.uniform() * 100.0;
    const ShortTermPayoffs p{c, d, n};
    const double alpha = 0.1 + rng.uniform() * 10.0;
    const auto a = aia_transform(p, alpha);
    const double x = rng.uniform() * n;
    EXPECT_NEAR(a.defector(x), d - alpha * (d - p.average(x)), 1e-9);
    EXPECT_NEAR(*a.crossing, n / alpha, 1e-9 * std::max(1.0, n / alpha));

    const double bc = 0.1 + rng.uniform() * 3.0;
    const double bd = bc + 0.1 + rng.uniform() * 3.0;
    const auto e = dia_transform(p, bc, bd);
    EXPECT_NEAR(e.cooperator(x), c - bc * (p.average(x) - c), 1e-9);
    EXPECT_NEAR(e.defector(x), d - bd * (p.average(x) - c), 1e-9);
    const double expected = n * (1.0 - 1.0 / (bd - bc));
    EXPECT_NEAR(*e.crossing, expected, 1e-9 * std::max(1.0, std::abs(expected)));
  }
}

TEST(Theory, Preconditions) {
  EXPECT_THROW(aia_transform({2.0, 1.0, 10.0}, 1.0), DomainError);
  EXPECT_THROW(aia_transform({1.0, 2.0, 0.0}, 1.0), DomainError);
  EXPECT_THROW(aia_transform({1.0, 2.0, 10.0}, -1.0), DomainError);
  EXPECT_THROW(dia_transform({1.0, 2.0, 10.0}, 2.0, 1.0), DomainError);
  EXPECT_THROW(dia_transform({1.0, 2.0, 10.0}, 0.0, 1.0), DomainError);
}

TEST(Theory, TabulateCoversIntegerCounts) {
  const ShortTermPayoffs p{1.0, 2.0, 4.5};
  const auto rows = tabulate(p, aia_transform(p, 2.0));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows.back().x, 4.0);
  EXPECT_DOUBLE_EQ(rows[0].defector, 2.0);
  EXPECT_DOUBLE_EQ(rows[0].average, 2.0);
}
