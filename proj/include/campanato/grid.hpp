#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace campanato {

// Integer cell coordinates. Only the first dimension() entries are used; the
// remaining entry is kept at zero so that equality and ordering stay simple.
using CellIndex = std::array<std::int64_t, 2>;
using Point = std::array<double, 2>;

inline constexpr int kMaxDimension = 2;
inline constexpr int kMaxCellsLog2 = 26;

/// Uniform dyadic grid on the base cube [0,1)^n with cell side 2^-level.
///
/// Cells are numbered in row-major order: for n = 2 the linear index of cell
/// (c0, c1) is c0 * N + c1 with N = 2^level, so the last coordinate varies
/// fastest. Level 0 (a single cell) is permitted; it arises when a one-cell
/// cube is rescaled onto the unit cube.
class DyadicGrid {
 public:
  DyadicGrid(int dimension, int level);

  int dimension() const noexcept { return dimension_; }
  int level() const noexcept { return level_; }
  std::int64_t cells_per_side() const noexcept { return std::int64_t{1} << level_; }
  std::size_t cell_count() const noexcept {
    return std::size_t{1} << (static_cast<unsigned>(dimension_ * level_));
  }
  double cell_side() const noexcept;
  double cell_volume() const noexcept;

  std::size_t linear_index(const CellIndex& cell) const noexcept;
  CellIndex cell_coords(std::size_t index) const noexcept;
  Point cell_center(std::size_t index) const noexcept;

  friend bool operator==(const DyadicGrid&, const DyadicGrid&) = default;

 private:
  int dimension_;
  int level_;
};

/// Grid-aligned axis-parallel cube: `side_cells` cells per side starting at
/// `corner`. The cube remembers the (dimension, level) of its grid, which is
/// all that is needed to recover side length, measure and center.
class Cube {
 public:
  Cube(const DyadicGrid& grid, CellIndex corner, std::int64_t side_cells);

  static Cube whole(const DyadicGrid& grid);

  DyadicGrid grid() const { return DyadicGrid(dimension_, level_); }
  int dimension() const noexcept { return dimension_; }
  int level() const noexcept { return level_; }
  const CellIndex& corner() const noexcept { return corner_; }
  std::int64_t side_cells() const noexcept { return side_; }

  double side_length() const noexcept;
  double measure() const noexcept;
  std::size_t cell_count() const noexcept;
  Point center() const noexcept;

  bool power_of_two_side() const noexcept { return (side_ & (side_ - 1)) == 0; }
  bool contains_cell(const CellIndex& cell) const noexcept;
  bool contains(const Cube& other) const noexcept;
  // Number of cells shared with `other` (same grid assumed).
  std::size_t overlap_cells(const Cube& other) const noexcept;

  // Linear indices of the covered cells in ascending (row-major) order.
  std::vector<std::size_t> cells() const;

  friend bool operator==(const Cube&, const Cube&) = default;
  friend auto operator<=>(const Cube&, const Cube&) = default;

 private:
  int dimension_;
  int level_;
  CellIndex corner_;
  std::int64_t side_;
};

/// Real-valued piecewise-constant function on a dyadic grid. Values are
/// finite by construction.
class GridFunction {
 public:
  explicit GridFunction(const DyadicGrid& grid);  // zero function
  GridFunction(const DyadicGrid& grid, std::vector<double> values);
  GridFunction(const DyadicGrid& grid, double constant);

  const DyadicGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double at(const CellIndex& cell) const noexcept { return values_[grid_.linear_index(cell)]; }

  double max_abs() const noexcept;
  bool is_zero() const noexcept;

  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  DyadicGrid grid_;
  std::vector<double> values_;
};

// Cellwise helpers used throughout the library.
GridFunction abs(const GridFunction& f);
GridFunction scale(const GridFunction& f, double c);
GridFunction shift(const GridFunction& f, double c);
GridFunction add(const GridFunction& f, const GridFunction& g);

std::vector<double> cube_values(const GridFunction& f, const Cube& q);
double cube_sum(const GridFunction& f, const Cube& q);

GridFunction indicator(const DyadicGrid& grid, const Cube& q);

/// (1/|Q|) ∫_Q f as the pairwise-summed mean of the covered cell values.
double average(const GridFunction& f, const Cube& q);

/// (f - f_Q) χ_Q.
GridFunction oscillation(const GridFunction& f, const Cube& q);

/// Every grid-aligned cube inside the base cube exactly once, ordered by
/// side length and then by corner in row-major order.
std::vector<Cube> enumerate_cubes(const DyadicGrid& grid);
std::size_t cube_count(const DyadicGrid& grid) noexcept;

/// Q together with every cube obtained from it by repeated bisection, in
/// breadth-first order. Requires a power-of-two side.
std::vector<Cube> dyadic_descendants(const Cube& q);

/// δ^t f with t = 2^-j, i.e. g(x) = f(2^-j x). Requires f to vanish outside
/// [0, 2^-j)^n.
GridFunction dilate(const GridFunction& f, int j);

/// x ↦ f(corner(Q) + ℓ(Q) x) on the unit cube, on a grid with as many cells
/// per side as Q has. Requires a power-of-two side.
GridFunction rescale_to_unit(const GridFunction& f, const Cube& q);

/// Block averages of f on the coarser grid of the given level.
GridFunction coarsen(const GridFunction& f, int level);

int log2_exact(std::int64_t power_of_two) noexcept;

}  // namespace campanato
