#include "campanato/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "campanato/error.hpp"
#include "campanato/summation.hpp"

namespace campanato {

DyadicGrid::DyadicGrid(int dimension, int level) : dimension_(dimension), level_(level) {
  if (dimension < 1 || dimension > kMaxDimension)
    throw Error(ErrorKind::invalid_grid, "dimension must be 1 or 2, got " + std::to_string(dimension));
  if (level < 0 || dimension * level > kMaxCellsLog2)
    throw Error(ErrorKind::invalid_grid, "level " + std::to_string(level) + " out of range");
}

double DyadicGrid::cell_side() const noexcept { return std::ldexp(1.0, -level_); }

double DyadicGrid::cell_volume() const noexcept { return std::ldexp(1.0, -level_ * dimension_); }

std::size_t DyadicGrid::linear_index(const CellIndex& cell) const noexcept {
  if (dimension_ == 1) return static_cast<std::size_t>(cell[0]);
  return static_cast<std::size_t>(cell[0] * cells_per_side() + cell[1]);
}

CellIndex DyadicGrid::cell_coords(std::size_t index) const noexcept {
  if (dimension_ == 1) return {static_cast<std::int64_t>(index), 0};
  const auto n = static_cast<std::size_t>(cells_per_side());
  return {static_cast<std::int64_t>(index / n), static_cast<std::int64_t>(index % n)};
}

Point DyadicGrid::cell_center(std::size_t index) const noexcept {
  const CellIndex c = cell_coords(index);
  const double h = cell_side();
  Point p{0.0, 0.0};
  for (int d = 0; d < dimension_; ++d) p[d] = (static_cast<double>(c[d]) + 0.5) * h;
  return p;
}

Cube::Cube(const DyadicGrid& grid, CellIndex corner, std::int64_t side_cells)
    : dimension_(grid.dimension()), level_(grid.level()), corner_(corner), side_(side_cells) {
  if (side_cells < 1) throw Error(ErrorKind::invalid_cube, "side_cells must be positive");
  const std::int64_t n = grid.cells_per_side();
  for (int d = 0; d < kMaxDimension; ++d) {
    if (d >= dimension_) {
      if (corner_[d] != 0) throw Error(ErrorKind::invalid_cube, "unused coordinate must be zero");
      continue;
    }
    if (corner_[d] < 0 || corner_[d] + side_cells > n)
      throw Error(ErrorKind::invalid_cube, "cube leaves the base cube");
  }
}

Cube Cube::whole(const DyadicGrid& grid) { return Cube(grid, {0, 0}, grid.cells_per_side()); }

double Cube::side_length() const noexcept { return std::ldexp(static_cast<double>(side_), -level_); }

double Cube::measure() const noexcept {
  return std::ldexp(static_cast<double>(cell_count()), -level_ * dimension_);
}

std::size_t Cube::cell_count() const noexcept {
  return dimension_ == 1 ? static_cast<std::size_t>(side_) : static_cast<std::size_t>(side_ * side_);
}

Point Cube::center() const noexcept {
  Point p{0.0, 0.0};
  for (int d = 0; d < dimension_; ++d)
    p[d] = std::ldexp(static_cast<double>(corner_[d]) + 0.5 * static_cast<double>(side_), -level_);
  return p;
}

bool Cube::contains_cell(const CellIndex& cell) const noexcept {
  for (int d = 0; d < dimension_; ++d)
    if (cell[d] < corner_[d] || cell[d] >= corner_[d] + side_) return false;
  return true;
}

bool Cube::contains(const Cube& other) const noexcept {
  if (other.dimension_ != dimension_ || other.level_ != level_) return false;
  for (int d = 0; d < dimension_; ++d)
    if (other.corner_[d] < corner_[d] || other.corner_[d] + other.side_ > corner_[d] + side_) return false;
  return true;
}

std::size_t Cube::overlap_cells(const Cube& other) const noexcept {
  std::size_t count = 1;
  for (int d = 0; d < dimension_; ++d) {
    const std::int64_t lo = std::max(corner_[d], other.corner_[d]);
    const std::int64_t hi = std::min(corner_[d] + side_, other.corner_[d] + other.side_);
    if (hi <= lo) return 0;
    count *= static_cast<std::size_t>(hi - lo);
  }
  return count;
}

std::vector<std::size_t> Cube::cells() const {
  std::vector<std::size_t> out;
  out.reserve(cell_count());
  if (dimension_ == 1) {
    for (std::int64_t i = 0; i < side_; ++i) out.push_back(static_cast<std::size_t>(corner_[0] + i));
    return out;
  }
  const std::int64_t n = std::int64_t{1} << level_;
  for (std::int64_t i = 0; i < side_; ++i)
    for (std::int64_t j = 0; j < side_; ++j)
      out.push_back(static_cast<std::size_t>((corner_[0] + i) * n + corner_[1] + j));
  return out;
}

GridFunction::GridFunction(const DyadicGrid& grid) : grid_(grid), values_(grid.cell_count(), 0.0) {}

GridFunction::GridFunction(const DyadicGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.cell_count())
    throw Error(ErrorKind::invalid_grid, "expected " + std::to_string(grid_.cell_count()) + " values, got " +
                                             std::to_string(values_.size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw Error(ErrorKind::numeric_overflow, "grid function values must be finite");
}

GridFunction::GridFunction(const DyadicGrid& grid, double constant)
    : GridFunction(grid, std::vector<double>(grid.cell_count(), constant)) {}

double GridFunction::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

bool GridFunction::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

namespace {

template <class Op>
GridFunction map(const GridFunction& f, Op op) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = op(f[i]);
  return GridFunction(f.grid(), std::move(out));
}

void require_same_grid(const DyadicGrid& a, const DyadicGrid& b) {
  if (!(a == b)) throw Error(ErrorKind::incompatible_space, "grid functions live on different grids");
}

void require_cube_in(const DyadicGrid& grid, const Cube& q) {
  if (q.dimension() != grid.dimension() || q.level() != grid.level())
    throw Error(ErrorKind::invalid_cube, "cube belongs to a different grid");
}

}  // namespace

GridFunction abs(const GridFunction& f) {
  return map(f, [](double v) { return std::fabs(v); });
}

GridFunction scale(const GridFunction& f, double c) {
  return map(f, [c](double v) { return c * v; });
}

GridFunction shift(const GridFunction& f, double c) {
  return map(f, [c](double v) { return v + c; });
}

GridFunction add(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f.grid(), g.grid());
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] + g[i];
  return GridFunction(f.grid(), std::move(out));
}

std::vector<double> cube_values(const GridFunction& f, const Cube& q) {
  require_cube_in(f.grid(), q);
  std::vector<double> out;
  out.reserve(q.cell_count());
  for (std::size_t idx : q.cells()) out.push_back(f[idx]);
  return out;
}

double cube_sum(const GridFunction& f, const Cube& q) {
  require_cube_in(f.grid(), q);
  if (q.dimension() == 1)
    return pairwise_sum(f.values().subspan(static_cast<std::size_t>(q.corner()[0]),
                                           static_cast<std::size_t>(q.side_cells())));
  const auto vals = cube_values(f, q);
  return pairwise_sum(vals);
}

GridFunction indicator(const DyadicGrid& grid, const Cube& q) {
  require_cube_in(grid, q);
  std::vector<double> out(grid.cell_count(), 0.0);
  for (std::size_t idx : q.cells()) out[idx] = 1.0;
  return GridFunction(grid, std::move(out));
}

double average(const GridFunction& f, const Cube& q) {
  return cube_sum(f, q) / static_cast<double>(q.cell_count());
}

GridFunction oscillation(const GridFunction& f, const Cube& q) {
  const double mean = average(f, q);
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t idx : q.cells()) out[idx] = f[idx] - mean;
  return GridFunction(f.grid(), std::move(out));
}

std::size_t cube_count(const DyadicGrid& grid) noexcept {
  const auto n = static_cast<std::size_t>(grid.cells_per_side());
  std::size_t total = 0;
  for (std::size_t s = 1; s <= n; ++s) {
    std::size_t positions = n - s + 1;
    total += grid.dimension() == 1 ? positions : positions * positions;
  }
  return total;
}

std::vector<Cube> enumerate_cubes(const DyadicGrid& grid) {
  std::vector<Cube> out;
  out.reserve(cube_count(grid));
  const std::int64_t n = grid.cells_per_side();
  for (std::int64_t s = 1; s <= n; ++s) {
    for (std::int64_t a = 0; a + s <= n; ++a) {
      if (grid.dimension() == 1) {
        out.emplace_back(grid, CellIndex{a, 0}, s);
        continue;
      }
      for (std::int64_t b = 0; b + s <= n; ++b) out.emplace_back(grid, CellIndex{a, b}, s);
    }
  }
  return out;
}

std::vector<Cube> dyadic_descendants(const Cube& q) {
  if (!q.power_of_two_side())
    throw Error(ErrorKind::unsupported_cube, "dyadic descendants need a power-of-two side");
  const DyadicGrid grid = q.grid();
  std::vector<Cube> out{q};
  for (std::size_t head = 0; head < out.size(); ++head) {
    const Cube parent = out[head];
    const std::int64_t half = parent.side_cells() / 2;
    if (half == 0) continue;
    const CellIndex c = parent.corner();
    if (grid.dimension() == 1) {
      out.emplace_back(grid, CellIndex{c[0], 0}, half);
      out.emplace_back(grid, CellIndex{c[0] + half, 0}, half);
    } else {
      for (std::int64_t i = 0; i < 2; ++i)
        for (std::int64_t j = 0; j < 2; ++j)
          out.emplace_back(grid, CellIndex{c[0] + i * half, c[1] + j * half}, half);
    }
  }
  return out;
}

GridFunction dilate(const GridFunction& f, int j) {
  const DyadicGrid& grid = f.grid();
  if (j < 0 || j > grid.level())
    throw Error(ErrorKind::unsupported_dilation, "dilation exponent must lie in [0, level]");
  if (j == 0) return f;
  const std::int64_t support = grid.cells_per_side() >> j;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0.0) continue;
    const CellIndex c = grid.cell_coords(i);
    for (int d = 0; d < grid.dimension(); ++d)
      if (c[d] >= support)
        throw Error(ErrorKind::unsupported_dilation, "function is not supported in [0, 2^-j)^n");
  }
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    CellIndex c = grid.cell_coords(i);
    for (int d = 0; d < grid.dimension(); ++d) c[d] >>= j;
    out[i] = f.at(c);
  }
  return GridFunction(grid, std::move(out));
}

int log2_exact(std::int64_t power_of_two) noexcept {
  return std::countr_zero(static_cast<std::uint64_t>(power_of_two));
}

GridFunction rescale_to_unit(const GridFunction& f, const Cube& q) {
  require_cube_in(f.grid(), q);
  if (!q.power_of_two_side())
    throw Error(ErrorKind::unsupported_cube, "rescaling needs a power-of-two side");
  const DyadicGrid target(f.grid().dimension(), log2_exact(q.side_cells()));
  return GridFunction(target, cube_values(f, q));
}

GridFunction coarsen(const GridFunction& f, int level) {
  const DyadicGrid& grid = f.grid();
  if (level < 0 || level > grid.level())
    throw Error(ErrorKind::incompatible_space, "cannot coarsen to a finer level");
  if (level == grid.level()) return f;
  const DyadicGrid target(grid.dimension(), level);
  const std::int64_t block = std::int64_t{1} << (grid.level() - level);
  std::vector<double> out(target.cell_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    CellIndex c = target.cell_coords(i);
    for (int d = 0; d < grid.dimension(); ++d) c[d] *= block;
    out[i] = average(f, Cube(grid, c, block));
  }
  return GridFunction(target, std::move(out));
}

}  // namespace campanato
