#include "campanato/maximal.hpp"

#include <algorithm>
#include <cmath>

#include "campanato/error.hpp"
#include "campanato/parallel.hpp"

namespace campanato {

namespace {

std::vector<Cube> cube_family(const DyadicGrid& grid, MaximalMode mode) {
  return mode == MaximalMode::full ? enumerate_cubes(grid) : dyadic_descendants(Cube::whole(grid));
}

GridFunction power(const GridFunction& f, double eta) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::pow(std::fabs(f[i]), eta);
  return GridFunction(f.grid(), std::move(out));
}

}  // namespace

GridFunction maximal(const GridFunction& f, MaximalMode mode) {
  const DyadicGrid& grid = f.grid();
  const GridFunction a = abs(f);
  const std::vector<Cube> cubes = cube_family(grid, mode);
  std::vector<double> averages(cubes.size());
  parallel_for(cubes.size(), [&](std::size_t k) { averages[k] = average(a, cubes[k]); });

  std::vector<double> out(grid.cell_count(), 0.0);
  for (std::size_t k = 0; k < cubes.size(); ++k) {
    const double v = averages[k];
    if (v == 0.0) continue;
    for (std::size_t idx : cubes[k].cells()) out[idx] = std::max(out[idx], v);
  }
  return GridFunction(grid, std::move(out));
}

double maximal_of_indicator_lower(std::span<const std::size_t> e, const Cube& q) {
  const DyadicGrid grid = q.grid();
  std::vector<double> chi(grid.cell_count(), 0.0);
  for (std::size_t idx : e) {
    if (idx >= chi.size() || !q.contains_cell(grid.cell_coords(idx)))
      throw Error(ErrorKind::contract_violation, "E must be a subset of Q");
    chi[idx] = 1.0;
  }
  const auto e_cells = static_cast<std::size_t>(std::count(chi.begin(), chi.end(), 1.0));
  if (q.cell_count() > 2 * e_cells) throw Error(ErrorKind::contract_violation, "need |Q| <= 2|E|");

  const GridFunction m = maximal(GridFunction(grid, std::move(chi)));
  double lowest = kInfinity;
  for (std::size_t idx : q.cells()) lowest = std::min(lowest, m[idx]);
  const double density = static_cast<double>(e_cells) / static_cast<double>(q.cell_count());
  if (lowest < density)
    throw Error(ErrorKind::numeric_failure, "maximal function of χ_E fell below |E|/|Q| on Q");
  return lowest;
}

double weak_bound_ratio(const SpaceSpec& x, const GridFunction& f, double lambda, MaximalMode mode) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::contract_violation, "lambda must be positive");
  if (f.is_zero()) throw Error(ErrorKind::undefined_ratio, "weak-type ratio of the zero function");
  const GridFunction m = maximal(f, mode);
  std::vector<double> level(m.size(), 0.0);
  bool empty = true;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] > lambda) {
      level[i] = 1.0;
      empty = false;
    }
  if (empty) return 0.0;
  return lambda * quasi_norm(x, GridFunction(f.grid(), std::move(level))) / quasi_norm(x, f);
}

VectorValuedRatio vector_valued_ratio(const SpaceSpec& x, std::span<const GridFunction> fs, double eta,
                                      MaximalMode mode) {
  if (fs.empty()) throw Error(ErrorKind::contract_violation, "empty family");
  if (!(eta > 1.0)) throw Error(ErrorKind::contract_violation, "eta must exceed 1");
  const DyadicGrid& grid = fs.front().grid();
  GridFunction top(grid), bottom(grid);
  for (const GridFunction& f : fs) {
    if (!(f.grid() == grid)) throw Error(ErrorKind::incompatible_space, "family members live on different grids");
    top = add(top, power(maximal(f, mode), eta));
    bottom = add(bottom, power(f, eta));
  }
  if (bottom.is_zero()) throw Error(ErrorKind::undefined_ratio, "all-zero family");
  const double inv = 1.0 / eta;
  return {quasi_norm(x, top) / quasi_norm(x, bottom),
          quasi_norm(x, power(top, inv)) / quasi_norm(x, power(bottom, inv))};
}

double dilation_commutation_check(const GridFunction& f, int j, MaximalMode mode) {
  const DyadicGrid& grid = f.grid();
  const GridFunction lhs = maximal(dilate(f, j), mode);

  const GridFunction mf = maximal(f, mode);
  const std::int64_t support = grid.cells_per_side() >> j;
  std::vector<double> restricted(mf.size(), 0.0);
  for (std::size_t i = 0; i < mf.size(); ++i) {
    const CellIndex c = grid.cell_coords(i);
    bool inside = true;
    for (int d = 0; d < grid.dimension(); ++d) inside = inside && c[d] < support;
    if (inside) restricted[i] = mf[i];
  }
  const GridFunction rhs = dilate(GridFunction(grid, std::move(restricted)), j);

  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) worst = std::max(worst, std::fabs(lhs[i] - rhs[i]));
  return worst;
}

}  // namespace campanato
