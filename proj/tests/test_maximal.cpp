#include <gtest/gtest.h>

#include <cmath>

#include "campanato/error.hpp"
#include "campanato/maximal.hpp"
#include "campanato/random.hpp"
#include "oracles.hpp"

using namespace campanato;

namespace {

GridFunction random_function(const DyadicGrid& grid, std::uint64_t seed) {
  SplitMix64 g(seed);
  std::vector<double> v(grid.cell_count());
  for (double& x : v) x = g.uniform(-1.0, 1.0);
  return GridFunction(grid, std::move(v));
}

GridFunction random_set(const DyadicGrid& grid, std::uint64_t seed) {
  SplitMix64 g(seed);
  std::vector<double> v(grid.cell_count());
  for (double& x : v) x = static_cast<double>(g.next() >> 63);
  return GridFunction(grid, std::move(v));
}

}  // namespace

TEST(Maximal, WorkedExample) {
  const GridFunction f(DyadicGrid(1, 2), std::vector<double>{1, 3, 5, 7});
  const GridFunction m = maximal(f);
  EXPECT_EQ(m[0], 4.0);
  EXPECT_EQ(m[3], 7.0);
}

TEST(Maximal, MatchesBruteForce) {
  for (int n = 1; n <= 2; ++n) {
    const DyadicGrid g(n, n == 1 ? 5 : 3);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const GridFunction f = random_function(g, seed);
      const GridFunction m = maximal(f);
      const auto expected = oracle::maximal(f);
      for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(m[i], expected[i], 1e-14);
    }
  }
}

TEST(Maximal, ConstantsAndIndicators) {
  const DyadicGrid g(2, 3);
  EXPECT_EQ(maximal(GridFunction(g, 2.5)), GridFunction(g, 2.5));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const GridFunction chi = random_set(g, seed);
    const GridFunction m = maximal(chi);
    for (std::size_t i = 0; i < m.size(); ++i) {
      EXPECT_GE(m[i], chi[i]);
      EXPECT_LE(m[i], 1.0);
    }
  }
}

TEST(Maximal, PointwiseProperties) {
  const DyadicGrid g(1, 6);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const GridFunction f = random_function(g, seed);
    const GridFunction h = random_function(g, seed + 1000);
    const GridFunction mf = maximal(f), mh = maximal(h), msum = maximal(add(f, h));
    const GridFunction md = maximal(f, MaximalMode::dyadic);
    const GridFunction m4 = maximal(scale(f, 4.0)), m3 = maximal(scale(f, 0.3));
    // |g| ≤ |f| with g = f times a factor in [0, 1]
    std::vector<double> dominated(f.size());
    SplitMix64 r(seed);
    for (std::size_t i = 0; i < f.size(); ++i) dominated[i] = f[i] * r.uniform();
    const GridFunction mdom = maximal(GridFunction(g, dominated));
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_GE(mf[i], std::fabs(f[i]));
      EXPECT_EQ(m4[i], 4.0 * mf[i]);
      EXPECT_NEAR(m3[i], 0.3 * mf[i], 1e-15);
      EXPECT_LE(md[i], mf[i]);
      EXPECT_LE(mdom[i], mf[i]);
      EXPECT_LE(msum[i], mf[i] + mh[i] + 1e-12);
    }
  }
}

TEST(Maximal, IndicatorLowerBound) {
  const DyadicGrid g(1, 3);
  const Cube q(g, {0, 0}, 4);
  EXPECT_EQ(maximal_of_indicator_lower(q.cells(), q), 1.0);
  const std::vector<std::size_t> left{0, 1};
  EXPECT_GE(maximal_of_indicator_lower(left, q), 0.5);
  const Cube pair(g, {4, 0}, 2);
  const std::vector<std::size_t> single{5};
  EXPECT_EQ(maximal_of_indicator_lower(single, pair), 0.5);
  const std::vector<std::size_t> too_small{0};
  EXPECT_THROW(maximal_of_indicator_lower(too_small, q), Error);
  const std::vector<std::size_t> outside{0, 1, 6};
  EXPECT_THROW(maximal_of_indicator_lower(outside, q), Error);
}

TEST(Maximal, WeakBoundRatio) {
  const DyadicGrid g(1, 4);
  const GridFunction f = random_function(g, 3);
  EXPECT_EQ(weak_bound_ratio(SpaceSpec::lp(1), f, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(weak_bound_ratio(SpaceSpec::lp(2), GridFunction(g, 1.0), 0.5), 0.5);
  EXPECT_THROW(weak_bound_ratio(SpaceSpec::lp(1), GridFunction(g), 0.5), Error);

  // L¹, f = χ_Q, λ = 1/2: brute-force level set
  const Cube q(g, {4, 0}, 4);
  const GridFunction chi = indicator(g, q);
  const auto m = oracle::maximal(chi);
  double level = 0;
  for (double v : m) level += v > 0.5 ? g.cell_volume() : 0.0;
  EXPECT_DOUBLE_EQ(weak_bound_ratio(SpaceSpec::lp(1), chi, 0.5), 0.5 * level / q.measure());
}

TEST(Maximal, WeakTypeOneOneBoundedOnRandomFunctions) {
  // Rising sun lemma: |{Mf > λ}| ≤ 2‖f‖₁/λ for intervals.
  const DyadicGrid g(1, 6);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const GridFunction f = random_function(g, seed);
    for (double lambda : {0.05, 0.2, 0.5}) EXPECT_LE(weak_bound_ratio(SpaceSpec::lp(1), f, lambda), 2.0);
  }
}

TEST(Maximal, VectorValuedRatio) {
  const DyadicGrid g(1, 2);
  const std::vector<GridFunction> one{GridFunction(g, 2.0)};
  const auto c = vector_valued_ratio(SpaceSpec::lp(2), one, 2.0);
  EXPECT_DOUBLE_EQ(c.displayed, 1.0);
  EXPECT_DOUBLE_EQ(c.rooted, 1.0);

  const GridFunction chi(g, std::vector<double>{1, 0, 0, 0});
  const std::vector<GridFunction> fam{chi};
  const auto m = oracle::maximal(chi);
  double top = 0;
  for (double v : m) top += v * v * 0.25;
  EXPECT_DOUBLE_EQ(vector_valued_ratio(SpaceSpec::lp(1), fam, 2.0).displayed, top / 0.25);

  const GridFunction f(DyadicGrid(1, 3), std::vector<double>{1, -2, 0, 3, 0.5, 0, 0, 1});
  const std::vector<GridFunction> single{f}, twice{f, f};
  const auto a = vector_valued_ratio(SpaceSpec::lp(2), single, 2.0);
  const auto b = vector_valued_ratio(SpaceSpec::lp(2), twice, 2.0);
  EXPECT_NEAR(a.displayed, b.displayed, 1e-14);
  EXPECT_NEAR(a.rooted, b.rooted, 1e-14);
  const std::vector<GridFunction> zeros{GridFunction(g)};
  EXPECT_THROW(vector_valued_ratio(SpaceSpec::lp(2), zeros, 2.0), Error);
}

TEST(Maximal, DilationCommutation) {
  const DyadicGrid g(1, 2);
  const GridFunction chi(g, std::vector<double>{1, 0, 0, 0});
  EXPECT_EQ(dilation_commutation_check(chi, 1, MaximalMode::dyadic), 0.0);
  const GridFunction f(g, std::vector<double>{1, 2, 3, 4});
  EXPECT_EQ(dilation_commutation_check(f, 0, MaximalMode::full), 0.0);
  for (int n = 1; n <= 2; ++n) {
    const DyadicGrid big(n, n == 1 ? 6 : 4);
    EXPECT_EQ(dilation_commutation_check(GridFunction(big, 1.5), 0, MaximalMode::full), 0.0);
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
      for (int j = 1; j <= 3; ++j) {
        std::vector<double> v(big.cell_count(), 0.0);
        const GridFunction r = random_function(big, seed);
        const std::int64_t support = big.cells_per_side() >> j;
        for (std::size_t i = 0; i < v.size(); ++i) {
          const CellIndex c = big.cell_coords(i);
          if (c[0] < support && c[1] < (n == 2 ? support : 1)) v[i] = r[i];
        }
        EXPECT_EQ(dilation_commutation_check(GridFunction(big, v), j, MaximalMode::dyadic), 0.0);
      }
  }
}
