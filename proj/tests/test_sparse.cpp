#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "campanato/error.hpp"
#include "campanato/random.hpp"
#include "campanato/sparse.hpp"
#include "oracles.hpp"

using namespace campanato;

namespace {

GridFunction random_function(const DyadicGrid& grid, std::uint64_t seed) {
  SplitMix64 g(seed);
  std::vector<double> v(grid.cell_count());
  for (double& x : v) x = g.uniform(-1.0, 1.0);
  return GridFunction(grid, std::move(v));
}

// Independent invariant check on raw cell sets.
bool family_ok(const SparseFamily& s) {
  const DyadicGrid g = s.root.grid();
  std::set<std::size_t> used;
  for (const SparseEntry& e : s.entries) {
    const auto cells = e.cube.cells();
    const std::set<std::size_t> q(cells.begin(), cells.end());
    const std::int64_t side = e.cube.side_cells();
    if ((side & (side - 1)) != 0) return false;
    for (int d = 0; d < g.dimension(); ++d) {
      if ((e.cube.corner()[d] - s.root.corner()[d]) % side != 0) return false;
      if (e.cube.corner()[d] < s.root.corner()[d]) return false;
      if (e.cube.corner()[d] + side > s.root.corner()[d] + s.root.side_cells()) return false;
    }
    for (std::size_t c : e.e) {
      if (!q.contains(c)) return false;
      if (!used.insert(c).second) return false;
    }
    if (cells.size() > 2 * e.e.size()) return false;
  }
  return true;
}

}  // namespace

TEST(Sparse, ConstantFunctionIsOneEntry) {
  const DyadicGrid g(1, 4);
  const SparseFamily s = cz_sparse(GridFunction(g, 3.0), Cube::whole(g));
  ASSERT_EQ(s.entries.size(), 1u);
  EXPECT_EQ(s.entries[0].e.size(), g.cell_count());
  EXPECT_TRUE(sparse_majorant(s, GridFunction(g, 3.0)).is_zero());
  EXPECT_EQ(domination_constant(GridFunction(g, 3.0), Cube::whole(g)), 0.0);
}

TEST(Sparse, WorkedExample) {
  const GridFunction f(DyadicGrid(1, 2), std::vector<double>{0, 0, 0, 8});
  const Cube q0 = Cube::whole(f.grid());
  const SparseFamily s = cz_sparse(f, q0, 2.0);
  ASSERT_EQ(s.entries.size(), 1u);
  EXPECT_EQ(s.entries[0].cube, q0);
  EXPECT_EQ(s.entries[0].oscillation, 3.0);
  EXPECT_EQ(sparse_majorant(s, f), GridFunction(f.grid(), 3.0));
  EXPECT_EQ(domination_constant(f, q0, 2.0), 2.0);
}

TEST(Sparse, StoppingChildrenAppear) {
  const GridFunction f(DyadicGrid(1, 3), std::vector<double>{0, 0, 0, 0, 0, 0, 0, 64});
  const SparseFamily s = cz_sparse(f, Cube::whole(f.grid()), 2.0);
  EXPECT_GT(s.entries.size(), 1u);
  EXPECT_TRUE(sparse_violations(s).empty());
  EXPECT_TRUE(family_ok(s));
  EXPECT_TRUE(std::isfinite(domination_constant(f, s)));
}

TEST(Sparse, InvariantsOnRandomFunctions) {
  for (int n = 1; n <= 2; ++n) {
    const DyadicGrid g(n, n == 1 ? 6 : 3);
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
      const GridFunction f = random_function(g, seed);
      for (double alpha : {2.0, 3.0, 4.0}) {
        const SparseFamily s = cz_sparse(f, Cube::whole(g), alpha);
        EXPECT_TRUE(sparse_violations(s).empty());
        EXPECT_TRUE(family_ok(s));
        std::size_t total = 0;
        for (const auto& e : s.entries) total += e.e.size();
        EXPECT_LE(total, g.cell_count());
        const GridFunction m = sparse_majorant(s, f);
        for (double v : m.values()) EXPECT_GE(v, 0.0);
        EXPECT_TRUE(std::isfinite(domination_constant(f, s)));
      }
    }
  }
}

TEST(Sparse, SubcubeRoot) {
  const DyadicGrid g(1, 5);
  const GridFunction f = random_function(g, 77);
  const Cube root(g, {8, 0}, 8);
  const SparseFamily s = cz_sparse(f, root);
  EXPECT_TRUE(sparse_violations(s).empty());
  for (const auto& e : s.entries) EXPECT_TRUE(root.contains(e.cube));
  EXPECT_THROW(cz_sparse(f, Cube(g, {0, 0}, 3)), Error);
  EXPECT_THROW(cz_sparse(f, root, 1.5), Error);
}

TEST(Sparse, ViolationsAreDetected) {
  const DyadicGrid g(1, 2);
  const Cube root = Cube::whole(g);
  SparseFamily bad{root, {{root, {0}, 1.0}}};
  EXPECT_FALSE(sparse_violations(bad).empty());
  SparseFamily overlap{root, {{root, {0, 1, 2}, 1.0}, {Cube(g, {2, 0}, 2), {2, 3}, 1.0}}};
  EXPECT_FALSE(sparse_violations(overlap).empty());
  SparseFamily misaligned{root, {{root, {0, 1, 2, 3}, 1.0}, {Cube(g, {1, 0}, 2), {}, 1.0}}};
  EXPECT_FALSE(sparse_violations(misaligned).empty());
}

TEST(Sparse, AffineInvariance) {
  const DyadicGrid g(1, 6);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const GridFunction f = random_function(g, seed);
    const SparseFamily base = cz_sparse(f, Cube::whole(g));
    for (auto [a, b] : {std::pair{3.0, 0.0}, {0.125, 5.0}, {1.0, -100.0}, {7.5, 0.3}}) {
      const SparseFamily other = cz_sparse(shift(scale(f, a), b), Cube::whole(g));
      ASSERT_EQ(other.entries.size(), base.entries.size());
      for (std::size_t k = 0; k < base.entries.size(); ++k) {
        EXPECT_EQ(other.entries[k].cube, base.entries[k].cube);
        EXPECT_EQ(other.entries[k].e, base.entries[k].e);
      }
    }
  }
}

TEST(Sparse, DominationOnLogProfileIsStableUnderRefinement) {
  std::vector<double> constants;
  for (int level : {4, 6, 8}) {
    const DyadicGrid g(1, level);
    std::vector<double> v(g.cell_count());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::log(g.cell_center(i)[0]);
    constants.push_back(domination_constant(GridFunction(g, v), Cube::whole(g)));
  }
  for (double c : constants) {
    EXPECT_TRUE(std::isfinite(c));
    EXPECT_LE(c, 4.0);
  }
}
