#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "campanato/grid.hpp"
#include "campanato/young.hpp"

namespace campanato {

/// Exponent field p(·) with 0 < p₋ ≤ p₊ < ∞.
class VariableExponent {
 public:
  explicit VariableExponent(GridFunction values);

  const GridFunction& values() const noexcept { return values_; }
  double p_minus() const noexcept { return p_minus_; }
  double p_plus() const noexcept { return p_plus_; }

 private:
  GridFunction values_;
  double p_minus_;
  double p_plus_;
};

struct Lp {
  double p;
};
struct WeightedLp {
  double p;
  GridFunction w;
};
// Weight absent means w ≡ 1. q may be +infinity.
struct WeightedLorentz {
  double p;
  double q;
  std::optional<GridFunction> w;
};
struct Orlicz {
  YoungFunction phi;
};
struct VariableLp {
  VariableExponent exponent;
};
struct Morrey {
  double p;
  double q;
};

/// Tagged description of the function space X. Factories validate the
/// parameters (weights strictly positive, q ≤ p for Morrey, finite Lorentz p).
class SpaceSpec {
 public:
  using Variant = std::variant<Lp, WeightedLp, WeightedLorentz, Orlicz, VariableLp, Morrey>;

  static SpaceSpec lp(double p);
  static SpaceSpec weighted_lp(double p, GridFunction w);
  static SpaceSpec lorentz(double p, double q, std::optional<GridFunction> w = std::nullopt);
  static SpaceSpec orlicz(YoungFunction phi);
  static SpaceSpec variable_lp(VariableExponent exponent);
  static SpaceSpec morrey(double p, double q);

  const Variant& variant() const noexcept { return variant_; }
  std::string describe() const;

  // Grid of the weight or exponent field, when the space carries one.
  std::optional<DyadicGrid> field_grid() const;

  // The same space with every grid-valued field block-averaged down to
  // `level`. Exact for weights (the weighted measure of a coarse cell is
  // preserved); an approximation for variable exponents.
  SpaceSpec coarsened(int level) const;

 private:
  explicit SpaceSpec(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

/// ‖f‖_X. Closed-form finite sums for L^p, L^p(w), Lorentz and Morrey;
/// Luxemburg root finding (relative tolerance 1e-12) for Orlicz and
/// variable-exponent spaces.
double quasi_norm(const SpaceSpec& x, const GridFunction& f);

/// ‖χ_Q‖_X.
double indicator_norm(const SpaceSpec& x, const Cube& q);

struct Plateau {
  double height;
  double width;  // w-measure of the cell
};

/// Decreasing rearrangement of |f| with respect to w dx: one plateau per
/// cell, sorted by |f| descending with ties broken by cell index.
std::vector<Plateau> weighted_rearrangement(const GridFunction& f, const GridFunction& w);
std::vector<Plateau> weighted_rearrangement(const GridFunction& f);  // w ≡ 1

double lorentz_norm(double p, double q, const std::optional<GridFunction>& w, const GridFunction& f);

double modular(const Orlicz& x, const GridFunction& f, double lambda);
double modular(const VariableLp& x, const GridFunction& f, double lambda);
double luxemburg_norm(const Orlicz& x, const GridFunction& f);
double luxemburg_norm(const VariableLp& x, const GridFunction& f);

/// inf{λ > 0 : ρ(λ) ≤ 1} for a modular given through ψ(u) = log ρ(e^u),
/// which must be nonincreasing in u. `log_scale` is a starting guess for
/// log λ. Bracketed regula falsi (Illinois variant) in u; stops once the
/// bracket is narrower than 1e-12 relative or |ψ| ≤ 1e-14.
double solve_luxemburg(const std::function<double(double)>& log_modular, double log_scale);

struct AssociateNorm {
  double value;
  // false when the value is only a lower bound from the generic ascent.
  bool certified;
};

/// ‖χ_Q‖_{X'} = sup{∫_Q |g| : ‖g‖_X ≤ 1}. Closed forms for L^p and L^p(w);
/// every other space gets a coordinate-ascent lower bound flagged
/// certified = false.
AssociateNorm associate_norm_indicator(const SpaceSpec& x, const Cube& q);

/// ‖g‖_{X'} for the variants with a closed form: L^p gives ‖g‖_{L^{p'}}
/// (sup |g| for p = 1) and L^p(w) gives (∫ |g|^{p'} w^{1-p'})^{1/p'}
/// (sup |g|/w for p = 1). Empty for every other variant.
std::optional<double> associate_norm(const SpaceSpec& x, const GridFunction& g);

/// Lower bound for ‖χ_Q‖_{X'} by normalized coordinate ascent over
/// nonnegative g supported on Q, starting from χ_Q.
double associate_norm_ascent(const SpaceSpec& x, const Cube& q, int max_sweeps = 500);

/// Checks ‖g‖_X ≤ ‖f‖_X (1 + 1e-9). Throws contract_violation unless
/// |g| ≤ |f| cellwise.
bool ideal_property_probe(const SpaceSpec& x, const GridFunction& f, const GridFunction& g);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace campanato
