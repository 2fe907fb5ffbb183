#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "campanato/grid.hpp"
#include "campanato/phi.hpp"
#include "campanato/spaces.hpp"
#include "campanato/young.hpp"

namespace campanato {

/// Where a checker found its worst case. Only the fields relevant to the
/// condition are filled in.
struct Witness {
  std::optional<Cube> cube;
  std::vector<Point> points;
  std::optional<double> radius;
  std::optional<double> level;         // sample point r, search value k, or second radius
  std::vector<std::size_t> subset;     // cells of E for A(p,1)
};

struct ConditionReport {
  std::string condition;
  double constant = 0.0;
  Witness witness;
  std::size_t budget = 0;   // random draws per cube, where applicable
  std::size_t samples = 0;  // evaluations that entered the maximum
  std::optional<double> threshold;
  bool certified = true;    // false when an uncertified associate norm was used
  bool diverging = false;   // worst constant grows across every later sample decade
  std::vector<double> trend;  // per-decade maxima for the Young samplers
};

/// ‖χ_Q‖_X ‖χ_Q‖_{X'} / |Q|.
double ax_product_ratio(const SpaceSpec& x, const Cube& q);
ConditionReport ax_product_sup(const SpaceSpec& x, const DyadicGrid& grid);

/// |f|_Q ‖χ_Q‖_X / ‖f χ_Q‖_X. Throws undefined_ratio when f vanishes on Q.
double ax_lerner_ratio(const SpaceSpec& x, const GridFunction& f, const Cube& q);
ConditionReport ax_lerner_sup(const SpaceSpec& x, const GridFunction& f);

/// sup_Q (w)_Q ((w^{1-p'})_Q)^{p-1} over all grid cubes, p > 1.
ConditionReport ap_constant(const GridFunction& w, double p);

/// sup over cubes and subsets E ⊂ Q of (|E|/|Q|) / (w(E)/w(Q))^{1/p}. For
/// each cube every sublevel set of w (the cells with the m smallest weights,
/// which minimize w(E) at fixed |E|) is tried, plus `subset_budget` random
/// subsets. Cubes with more than `max_cube_cells` cells are skipped when the
/// limit is nonzero.
ConditionReport ap1_constant(const GridFunction& w, double p, std::size_t subset_budget = 32,
                             std::uint64_t seed = 1, std::size_t max_cube_cells = 0);

/// The same functional by exhaustive subset enumeration over cubes with at
/// most `max_cube_cells` cells (at most 20).
ConditionReport ap1_constant_exhaustive(const GridFunction& w, double p, std::size_t max_cube_cells = 16);

/// r = 2^-20 10^{i/64} for i = 0, 1, ... while r ≤ 2^20.
std::vector<double> young_samples();

/// max Φ(2r)/Φ(r) over the samples with Φ(2r) finite.
ConditionReport young_delta2_constant(const YoungFunction& phi, const std::vector<double>& samples);

/// Smallest k in {1.01, 1.02, ..., 64} with 2k Φ(r) ≤ Φ(kr) on every sample.
std::optional<double> young_nabla2_constant(const YoungFunction& phi, const std::vector<double>& samples);
ConditionReport young_nabla2_report(const YoungFunction& phi, const std::vector<double>& samples);

/// Φ_θ(t) = ∫_0^{t^θ} Φ(s)/s ds, θ ≥ 1. Power functions use the closed form
/// t^{θp}/p; anything else is tabulated by adaptive Simpson quadrature and
/// interpolated monotonically in log-log coordinates.
YoungFunction phi_theta(const YoungFunction& phi, double theta);

struct PhiRegularity {
  ConditionReport almost_decreasing;  // max φ(x,r)/φ(x,s), r ≥ s
  ConditionReport comparability;      // max φ(x,r)/φ(y,r), |x - y| ≤ r
};

/// Samples: every cube center of the grid and the radii ℓ/2 of dyadic sides.
PhiRegularity phi_regularity(const PhiParameter& phi, const DyadicGrid& grid);

struct LogHolder {
  ConditionReport lh0;          // max |p(x) - p(y)| (-log |x - y|), |x - y| < 1/2
  ConditionReport lh_infinity;  // max |p(x) - p∞| log(e + |x|), p∞ at the base center
};

LogHolder log_holder_constants(const VariableExponent& p);

}  // namespace campanato
