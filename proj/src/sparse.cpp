#include "campanato/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "campanato/error.hpp"
#include "campanato/spaces.hpp"
#include "campanato/summation.hpp"

namespace campanato {

namespace {

// Relative slack on the stopping comparison. Without it, f ↦ af + b could
// flip a comparison that sits exactly on the threshold through rounding in
// f - f_Q.
constexpr double kTieTolerance = 1e-10;

double mean_abs_deviation(const GridFunction& f, const Cube& p, double center) {
  std::vector<double> dev;
  dev.reserve(p.cell_count());
  for (std::size_t idx : p.cells()) dev.push_back(std::fabs(f[idx] - center));
  return pairwise_sum(dev) / static_cast<double>(dev.size());
}

std::vector<Cube> children(const Cube& q) {
  const std::int64_t half = q.side_cells() / 2;
  const DyadicGrid grid = q.grid();
  const CellIndex c = q.corner();
  std::vector<Cube> out;
  if (q.dimension() == 1) {
    out.emplace_back(grid, CellIndex{c[0], 0}, half);
    out.emplace_back(grid, CellIndex{c[0] + half, 0}, half);
  } else {
    for (std::int64_t i = 0; i < 2; ++i)
      for (std::int64_t j = 0; j < 2; ++j) out.emplace_back(grid, CellIndex{c[0] + i * half, c[1] + j * half}, half);
  }
  return out;
}

void decompose(const GridFunction& f, const Cube& q, double alpha, std::vector<SparseEntry>& out) {
  const double mean = average(f, q);
  const double osc = mean_abs_deviation(f, q, mean);
  if (osc == 0.0) {
    out.push_back({q, q.cells(), 0.0});
    return;
  }
  const double threshold = alpha * osc * (1.0 + kTieTolerance);

  std::vector<Cube> stopping;
  std::vector<Cube> pending;
  if (q.side_cells() > 1) pending = children(q);
  while (!pending.empty()) {
    const Cube p = pending.back();
    pending.pop_back();
    if (mean_abs_deviation(f, p, mean) > threshold) {
      stopping.push_back(p);
    } else if (p.side_cells() > 1) {
      for (const Cube& c : children(p)) pending.push_back(c);
    }
  }
  std::sort(stopping.begin(), stopping.end());

  std::vector<std::size_t> e;
  for (std::size_t idx : q.cells()) {
    const CellIndex c = q.grid().cell_coords(idx);
    const bool covered = std::any_of(stopping.begin(), stopping.end(), [&](const Cube& p) { return p.contains_cell(c); });
    if (!covered) e.push_back(idx);
  }
  out.push_back({q, std::move(e), osc});
  for (const Cube& p : stopping) decompose(f, p, alpha, out);
}

bool dyadic_in(const Cube& q, const Cube& root) {
  if (!root.contains(q) || !q.power_of_two_side()) return false;
  if (root.side_cells() % q.side_cells() != 0) return false;
  for (int d = 0; d < q.dimension(); ++d)
    if ((q.corner()[d] - root.corner()[d]) % q.side_cells() != 0) return false;
  return true;
}

}  // namespace

SparseFamily cz_sparse(const GridFunction& f, const Cube& q0, double alpha) {
  if (!(q0.grid() == f.grid())) throw Error(ErrorKind::incompatible_space, "root cube is on a different grid");
  if (!q0.power_of_two_side()) throw Error(ErrorKind::unsupported_cube, "sparse root needs a power-of-two side");
  if (!(alpha >= 2.0) || !std::isfinite(alpha)) throw Error(ErrorKind::invalid_spec, "stopping threshold must be >= 2");
  SparseFamily s{q0, {}};
  decompose(f, q0, alpha, s.entries);
  return s;
}

std::vector<std::string> sparse_violations(const SparseFamily& s) {
  std::vector<std::string> out;
  const DyadicGrid grid = s.root.grid();
  std::vector<int> owner(grid.cell_count(), -1);
  for (std::size_t k = 0; k < s.entries.size(); ++k) {
    const SparseEntry& entry = s.entries[k];
    const std::string tag = "entry " + std::to_string(k);
    if (!(entry.cube.grid() == grid)) {
      out.push_back(tag + ": cube on a different grid");
      continue;
    }
    if (!dyadic_in(entry.cube, s.root)) out.push_back(tag + ": cube is not a dyadic subcube of the root");
    for (std::size_t idx : entry.e) {
      if (idx >= owner.size() || !entry.cube.contains_cell(grid.cell_coords(idx))) {
        out.push_back(tag + ": E_Q leaves Q");
        break;
      }
      if (owner[idx] >= 0) {
        out.push_back(tag + ": E_Q meets E of entry " + std::to_string(owner[idx]));
        break;
      }
      owner[idx] = static_cast<int>(k);
    }
    if (entry.cube.cell_count() > 2 * entry.e.size()) out.push_back(tag + ": |Q| > 2|E_Q|");
  }
  return out;
}

GridFunction sparse_majorant(const SparseFamily& s, const GridFunction& f) {
  if (!(s.root.grid() == f.grid())) throw Error(ErrorKind::incompatible_space, "sparse family built on a different grid");
  std::vector<double> out(f.size(), 0.0);
  for (const SparseEntry& entry : s.entries) {
    const double osc = mean_abs_deviation(f, entry.cube, average(f, entry.cube));
    if (osc == 0.0) continue;
    for (std::size_t idx : entry.cube.cells()) out[idx] += osc;
  }
  return GridFunction(f.grid(), std::move(out));
}

double domination_constant(const GridFunction& f, const SparseFamily& s) {
  const GridFunction major = sparse_majorant(s, f);
  const double mean = average(f, s.root);
  double worst = 0.0;
  for (std::size_t idx : s.root.cells()) {
    const double dev = std::fabs(f[idx] - mean);
    if (dev == 0.0) continue;
    if (major[idx] == 0.0) return kInfinity;
    worst = std::max(worst, dev / major[idx]);
  }
  return worst;
}

double domination_constant(const GridFunction& f, const Cube& q0, double alpha) {
  return domination_constant(f, cz_sparse(f, q0, alpha));
}

}  // namespace campanato
