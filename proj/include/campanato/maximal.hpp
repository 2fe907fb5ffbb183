#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "campanato/grid.hpp"
#include "campanato/spaces.hpp"

namespace campanato {

// full: every grid-aligned cube inside the base cube; dyadic: the dyadic
// descendants of the base cube only.
enum class MaximalMode { full, dyadic };

/// (Mf)(cell) = max of (1/|Q|) ∫_Q |f| over the cubes of `mode` containing
/// the cell. O(cells × cubes) in full mode.
GridFunction maximal(const GridFunction& f, MaximalMode mode = MaximalMode::full);

/// min over the cells of Q of (Mχ_E)(cell), checking that it is at least
/// |E|/|Q|. Requires E ⊂ Q and |Q| ≤ 2|E|.
double maximal_of_indicator_lower(std::span<const std::size_t> e, const Cube& q);

/// λ ‖χ_{Mf > λ}‖_X / ‖f‖_X.
double weak_bound_ratio(const SpaceSpec& x, const GridFunction& f, double lambda,
                        MaximalMode mode = MaximalMode::full);

struct VectorValuedRatio {
  double displayed;  // ‖Σ (Mf_j)^η‖_X / ‖Σ |f_j|^η‖_X
  double rooted;     // the same with both sums raised to 1/η
};

VectorValuedRatio vector_valued_ratio(const SpaceSpec& x, std::span<const GridFunction> fs, double eta,
                                      MaximalMode mode = MaximalMode::full);

/// max |M(δ f) - δ(M f restricted to [0, 2^-j)^n)| with δ = dilate(·, j).
/// Zero in dyadic mode; full mode may deviate near the boundary.
double dilation_commutation_check(const GridFunction& f, int j, MaximalMode mode);

}  // namespace campanato
