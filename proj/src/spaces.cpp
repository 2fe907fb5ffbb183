#include "campanato/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "campanato/error.hpp"
#include "campanato/io.hpp"
#include "campanato/summation.hpp"

namespace campanato {

namespace {

void require_positive_field(const GridFunction& w, const char* what) {
  for (double v : w.values())
    if (!(v > 0.0)) throw Error(ErrorKind::invalid_space, std::string(what) + " must be strictly positive");
}

void require_same_grid(const DyadicGrid& field, const DyadicGrid& f) {
  if (!(field == f))
    throw Error(ErrorKind::incompatible_space, "function grid (n=" + std::to_string(f.dimension()) +
                                                   ", L=" + std::to_string(f.level()) +
                                                   ") does not match the space's field grid (n=" +
                                                   std::to_string(field.dimension()) +
                                                   ", L=" + std::to_string(field.level()) + ")");
}

double checked(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::numeric_overflow, "non-finite quasi-norm");
  return v;
}

double power_of(double t, double p) {
  if (p == 1.0) return t;
  if (p == 2.0) return t * t;
  return std::pow(t, p);
}

double root_of(double s, double p) {
  if (p == 1.0) return s;
  if (p == 2.0) return std::sqrt(s);
  return std::pow(s, 1.0 / p);
}

// Evaluates a homogeneous norm, retrying on f / max|f| when the direct sum
// overflows or underflows.
template <class Norm>
double rescued(const GridFunction& f, Norm norm) {
  const double direct = norm(f);
  const bool zero_f = f.is_zero();
  if (std::isfinite(direct) && (direct > 0.0 || zero_f)) return direct;
  const double m = f.max_abs();
  return checked(m * norm(scale(f, 1.0 / m)));
}

double lp_norm(const GridFunction& f, double p, const GridFunction* w) {
  return rescued(f, [&](const GridFunction& g) {
    const double vol = g.grid().cell_volume();
    std::vector<double> terms(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double a = std::fabs(g[i]);
      if (a == 0.0) continue;
      terms[i] = power_of(a, p) * vol;
      if (w) terms[i] *= (*w)[i];
    }
    return root_of(pairwise_sum(terms), p);
  });
}

// Bounding square of the support, clamped to the base cube. Cubes meeting
// the support can be replaced by a subcube of this square of no larger
// measure and the same mass, so the Morrey supremum may be taken over cubes
// inside it.
struct SupportSquare {
  CellIndex lo{0, 0};
  std::int64_t side = 0;
};

SupportSquare support_square(const GridFunction& f) {
  const DyadicGrid& grid = f.grid();
  const int n = grid.dimension();
  CellIndex lo{grid.cells_per_side(), grid.cells_per_side()}, hi{-1, -1};
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0.0) continue;
    const CellIndex c = grid.cell_coords(i);
    for (int d = 0; d < n; ++d) {
      lo[d] = std::min(lo[d], c[d]);
      hi[d] = std::max(hi[d], c[d] + 1);
    }
  }
  SupportSquare sq;
  if (hi[0] < 0) return sq;
  for (int d = 0; d < n; ++d) sq.side = std::max(sq.side, hi[d] - lo[d]);
  for (int d = 0; d < n; ++d) sq.lo[d] = std::min(lo[d], grid.cells_per_side() - sq.side);
  if (n == 1) sq.lo[1] = 0;
  return sq;
}

double morrey_norm(const GridFunction& f, double p, double q) {
  return rescued(f, [&](const GridFunction& g) {
    const DyadicGrid& grid = g.grid();
    const int n = grid.dimension();
    const SupportSquare sq = support_square(g);
    if (sq.side == 0) return 0.0;
    const auto s = static_cast<std::size_t>(sq.side);
    const double vol = grid.cell_volume();
    const double h = grid.cell_side();
    // sup_Q |Q|^{q/p-1} ∫_Q |g|^q, raised to 1/q at the end.
    const double exponent = static_cast<double>(n) * (q / p - 1.0);
    std::vector<double> factor(s + 1, 0.0);
    for (std::size_t k = 1; k <= s; ++k) factor[k] = std::pow(static_cast<double>(k) * h, exponent);

    double best = 0.0;
    if (n == 1) {
      std::vector<long double> prefix(s + 1, 0.0L);
      for (std::size_t i = 0; i < s; ++i)
        prefix[i + 1] = prefix[i] + static_cast<long double>(power_of(std::fabs(g[sq.lo[0] + i]), q) * vol);
      for (std::size_t k = 1; k <= s; ++k)
        for (std::size_t a = 0; a + k <= s; ++a)
          best = std::max(best, factor[k] * static_cast<double>(prefix[a + k] - prefix[a]));
    } else {
      // Summed-area table over the support square.
      std::vector<long double> sat((s + 1) * (s + 1), 0.0L);
      auto at = [&](std::size_t i, std::size_t j) -> long double& { return sat[i * (s + 1) + j]; };
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) {
          const double v = g.at({sq.lo[0] + static_cast<std::int64_t>(i), sq.lo[1] + static_cast<std::int64_t>(j)});
          at(i + 1, j + 1) =
              static_cast<long double>(power_of(std::fabs(v), q) * vol) + at(i, j + 1) + at(i + 1, j) - at(i, j);
        }
      for (std::size_t k = 1; k <= s; ++k)
        for (std::size_t a = 0; a + k <= s; ++a)
          for (std::size_t b = 0; b + k <= s; ++b) {
            const long double mass = at(a + k, b + k) - at(a, b + k) - at(a + k, b) + at(a, b);
            best = std::max(best, factor[k] * static_cast<double>(mass));
          }
    }
    return root_of(best, q);
  });
}

double lorentz_from_plateaus(const std::vector<Plateau>& plateaus, double p, double q) {
  double t = 0.0;
  if (std::isinf(q)) {
    double best = 0.0;
    for (const Plateau& pl : plateaus) {
      t += pl.width;
      if (pl.height == 0.0) break;
      best = std::max(best, std::pow(t, 1.0 / p) * pl.height);
    }
    return best;
  }
  const double r = q / p;
  std::vector<double> terms;
  terms.reserve(plateaus.size());
  for (const Plateau& pl : plateaus) {
    if (pl.height == 0.0) break;
    // ∫_t^{t+width} s^{q/p-1} ds = (p/q) ((t+width)^r - t^r)
    double increment;
    if (r == 1.0) {
      increment = pl.width;
    } else if (t == 0.0) {
      increment = std::pow(pl.width, r);
    } else {
      increment = std::pow(t, r) * std::expm1(r * std::log1p(pl.width / t));
    }
    if (r != 1.0) increment *= 1.0 / r;
    terms.push_back(power_of(pl.height, q) * increment);
    t += pl.width;
  }
  return root_of(pairwise_sum(terms), q);
}

double weighted_cell_measure(const GridFunction* w, std::size_t i, double vol) {
  return w ? (*w)[i] * vol : vol;
}

std::vector<Plateau> rearrange(const GridFunction& f, const GridFunction* w) {
  std::vector<std::size_t> order(f.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::fabs(f[a]) > std::fabs(f[b]); });
  const double vol = f.grid().cell_volume();
  std::vector<Plateau> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back({std::fabs(f[i]), weighted_cell_measure(w, i, vol)});
  return out;
}

struct NonzeroCells {
  std::vector<double> magnitude;
  std::vector<double> volume;
  std::vector<std::size_t> index;
  double max = 0.0;
};

NonzeroCells nonzero_cells(const GridFunction& f) {
  NonzeroCells out;
  const double vol = f.grid().cell_volume();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::fabs(f[i]);
    if (a == 0.0) continue;
    out.magnitude.push_back(a);
    out.volume.push_back(vol);
    out.index.push_back(i);
    out.max = std::max(out.max, a);
  }
  return out;
}

double orlicz_log_modular(const YoungFunction& phi, const NonzeroCells& cells, double u) {
  const double lambda = std::exp(u);
  std::vector<double> terms(cells.magnitude.size());
  for (std::size_t k = 0; k < terms.size(); ++k) terms[k] = phi(cells.magnitude[k] / lambda) * cells.volume[k];
  return std::log(pairwise_sum(terms));
}

// log Σ v_k (a_k/λ)^{p_k} via log-sum-exp, so the bracket search never
// overflows.
double variable_log_modular(const std::vector<double>& log_terms, const std::vector<double>& exponents, double u) {
  double m = -kInfinity;
  std::vector<double> e(log_terms.size());
  for (std::size_t k = 0; k < e.size(); ++k) {
    e[k] = log_terms[k] - exponents[k] * u;
    m = std::max(m, e[k]);
  }
  for (double& v : e) v = std::exp(v - m);
  return m + std::log(pairwise_sum(e));
}

}  // namespace

VariableExponent::VariableExponent(GridFunction values) : values_(std::move(values)) {
  const auto v = values_.values();
  p_minus_ = *std::min_element(v.begin(), v.end());
  p_plus_ = *std::max_element(v.begin(), v.end());
  if (!(p_minus_ > 0.0)) throw Error(ErrorKind::invalid_space, "variable exponent must be positive");
}

SpaceSpec SpaceSpec::lp(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::invalid_space, "L^p needs 1 <= p < inf");
  return SpaceSpec(Lp{p});
}

SpaceSpec SpaceSpec::weighted_lp(double p, GridFunction w) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::invalid_space, "L^p(w) needs 1 <= p < inf");
  require_positive_field(w, "weight");
  return SpaceSpec(WeightedLp{p, std::move(w)});
}

SpaceSpec SpaceSpec::lorentz(double p, double q, std::optional<GridFunction> w) {
  if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorKind::invalid_space, "Lorentz space needs 0 < p < inf");
  if (!(q > 0.0)) throw Error(ErrorKind::invalid_space, "Lorentz space needs q > 0");
  if (w) require_positive_field(*w, "weight");
  return SpaceSpec(WeightedLorentz{p, q, std::move(w)});
}

SpaceSpec SpaceSpec::orlicz(YoungFunction phi) { return SpaceSpec(Orlicz{std::move(phi)}); }

SpaceSpec SpaceSpec::variable_lp(VariableExponent exponent) {
  if (!std::isfinite(exponent.p_plus())) throw Error(ErrorKind::invalid_space, "p_+ must be finite");
  return SpaceSpec(VariableLp{std::move(exponent)});
}

SpaceSpec SpaceSpec::morrey(double p, double q) {
  if (!(q >= 1.0) || !(q <= p) || !std::isfinite(p))
    throw Error(ErrorKind::invalid_space, "Morrey space needs 1 <= q <= p < inf");
  return SpaceSpec(Morrey{p, q});
}

std::string SpaceSpec::describe() const {
  struct {
    std::string operator()(const Lp& x) const { return "lp:p=" + format_round_trip(x.p); }
    std::string operator()(const WeightedLp& x) const { return "wlp:p=" + format_round_trip(x.p) + ",w=<field>"; }
    std::string operator()(const WeightedLorentz& x) const {
      return "lorentz:p=" + format_round_trip(x.p) + ",q=" + (std::isinf(x.q) ? "inf" : format_round_trip(x.q)) +
             (x.w ? ",w=<field>" : "");
    }
    std::string operator()(const Orlicz& x) const { return "orlicz:" + x.phi.describe(); }
    std::string operator()(const VariableLp&) const { return "varlp:p=<field>"; }
    std::string operator()(const Morrey& x) const {
      return "morrey:p=" + format_round_trip(x.p) + ",q=" + format_round_trip(x.q);
    }
  } visitor;
  return std::visit(visitor, variant_);
}

std::optional<DyadicGrid> SpaceSpec::field_grid() const {
  if (const auto* x = std::get_if<WeightedLp>(&variant_)) return x->w.grid();
  if (const auto* x = std::get_if<WeightedLorentz>(&variant_))
    if (x->w) return x->w->grid();
  if (const auto* x = std::get_if<VariableLp>(&variant_)) return x->exponent.values().grid();
  return std::nullopt;
}

SpaceSpec SpaceSpec::coarsened(int level) const {
  if (const auto* x = std::get_if<WeightedLp>(&variant_)) return SpaceSpec(WeightedLp{x->p, coarsen(x->w, level)});
  if (const auto* x = std::get_if<WeightedLorentz>(&variant_)) {
    if (!x->w) return *this;
    return SpaceSpec(WeightedLorentz{x->p, x->q, coarsen(*x->w, level)});
  }
  if (const auto* x = std::get_if<VariableLp>(&variant_))
    return SpaceSpec(VariableLp{VariableExponent(coarsen(x->exponent.values(), level))});
  return *this;
}

std::vector<Plateau> weighted_rearrangement(const GridFunction& f, const GridFunction& w) {
  require_same_grid(w.grid(), f.grid());
  return rearrange(f, &w);
}

std::vector<Plateau> weighted_rearrangement(const GridFunction& f) { return rearrange(f, nullptr); }

double lorentz_norm(double p, double q, const std::optional<GridFunction>& w, const GridFunction& f) {
  if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorKind::invalid_space, "Lorentz norm needs 0 < p < inf");
  if (!(q > 0.0)) throw Error(ErrorKind::invalid_space, "Lorentz norm needs q > 0");
  if (w) require_same_grid(w->grid(), f.grid());
  return rescued(f, [&](const GridFunction& g) {
    return lorentz_from_plateaus(rearrange(g, w ? &*w : nullptr), p, q);
  });
}

double modular(const Orlicz& x, const GridFunction& f, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::contract_violation, "modular needs lambda > 0");
  const double vol = f.grid().cell_volume();
  std::vector<double> terms(f.size(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0.0) terms[i] = x.phi(std::fabs(f[i]) / lambda) * vol;
  return pairwise_sum(terms);
}

double modular(const VariableLp& x, const GridFunction& f, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::contract_violation, "modular needs lambda > 0");
  const GridFunction& p = x.exponent.values();
  require_same_grid(p.grid(), f.grid());
  const double vol = f.grid().cell_volume();
  std::vector<double> terms(f.size(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0.0) terms[i] = std::pow(std::fabs(f[i]) / lambda, p[i]) * vol;
  return pairwise_sum(terms);
}

double luxemburg_norm(const Orlicz& x, const GridFunction& f) {
  const NonzeroCells cells = nonzero_cells(f);
  if (cells.magnitude.empty()) return 0.0;
  return checked(solve_luxemburg([&](double u) { return orlicz_log_modular(x.phi, cells, u); },
                                 std::log(cells.max)));
}

double luxemburg_norm(const VariableLp& x, const GridFunction& f) {
  const GridFunction& p = x.exponent.values();
  require_same_grid(p.grid(), f.grid());
  const NonzeroCells cells = nonzero_cells(f);
  if (cells.magnitude.empty()) return 0.0;
  std::vector<double> log_terms(cells.index.size()), exponents(cells.index.size());
  for (std::size_t k = 0; k < cells.index.size(); ++k) {
    exponents[k] = p[cells.index[k]];
    log_terms[k] = std::log(cells.volume[k]) + exponents[k] * std::log(cells.magnitude[k]);
  }
  return checked(solve_luxemburg([&](double u) { return variable_log_modular(log_terms, exponents, u); },
                                 std::log(cells.max)));
}

double quasi_norm(const SpaceSpec& x, const GridFunction& f) {
  struct {
    const GridFunction& f;
    double operator()(const Lp& s) const { return lp_norm(f, s.p, nullptr); }
    double operator()(const WeightedLp& s) const {
      require_same_grid(s.w.grid(), f.grid());
      return lp_norm(f, s.p, &s.w);
    }
    double operator()(const WeightedLorentz& s) const { return lorentz_norm(s.p, s.q, s.w, f); }
    double operator()(const Orlicz& s) const { return luxemburg_norm(s, f); }
    double operator()(const VariableLp& s) const { return luxemburg_norm(s, f); }
    double operator()(const Morrey& s) const { return morrey_norm(f, s.p, s.q); }
  } visitor{f};
  return checked(std::visit(visitor, x.variant()));
}

double indicator_norm(const SpaceSpec& x, const Cube& q) { return quasi_norm(x, indicator(q.grid(), q)); }

double associate_norm_ascent(const SpaceSpec& x, const Cube& q, int max_sweeps) {
  const DyadicGrid grid = q.grid();
  const std::vector<std::size_t> cells = q.cells();
  const double vol = grid.cell_volume();
  std::vector<double> g(cells.size(), 1.0);
  std::vector<double> full(grid.cell_count(), 0.0);

  auto objective = [&](const std::vector<double>& trial) {
    for (std::size_t k = 0; k < cells.size(); ++k) full[cells[k]] = trial[k];
    const double norm = quasi_norm(x, GridFunction(grid, full));
    return pairwise_sum(trial) * vol / norm;
  };

  double best = objective(g);
  double delta = 0.5;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double start = best;
    for (std::size_t k = 0; k < g.size(); ++k) {
      for (double factor : {1.0 + delta, 1.0 - delta}) {
        std::vector<double> trial = g;
        trial[k] *= factor;
        const double value = objective(trial);
        if (value > best) {
          best = value;
          g = std::move(trial);
          break;
        }
      }
    }
    // Keep the iterate normalized so repeated shrinking cannot underflow.
    const double m = *std::max_element(g.begin(), g.end());
    for (double& v : g) v /= m;
    if (best - start <= 1e-10 * best) {
      if (delta < 1e-4) break;
      delta *= 0.5;
    }
  }
  return best;
}

AssociateNorm associate_norm_indicator(const SpaceSpec& x, const Cube& q) {
  if (const auto* s = std::get_if<Lp>(&x.variant())) {
    if (s->p == 1.0) return {1.0, true};
    return {std::pow(q.measure(), 1.0 - 1.0 / s->p), true};
  }
  if (const auto* s = std::get_if<WeightedLp>(&x.variant())) {
    require_same_grid(s->w.grid(), q.grid());
    const auto cells = q.cells();
    if (s->p == 1.0) {
      // All of g's mass on the cell where w is smallest.
      double wmin = kInfinity;
      for (std::size_t i : cells) wmin = std::min(wmin, s->w[i]);
      return {1.0 / wmin, true};
    }
    const double conj = s->p / (s->p - 1.0);
    const double vol = q.grid().cell_volume();
    std::vector<double> terms;
    terms.reserve(cells.size());
    for (std::size_t i : cells) terms.push_back(std::pow(s->w[i], 1.0 - conj) * vol);
    return {std::pow(pairwise_sum(terms), 1.0 / conj), true};
  }
  return {associate_norm_ascent(x, q), false};
}

std::optional<double> associate_norm(const SpaceSpec& x, const GridFunction& g) {
  const GridFunction* w = nullptr;
  double p = 0.0;
  if (const auto* s = std::get_if<Lp>(&x.variant())) {
    p = s->p;
  } else if (const auto* s = std::get_if<WeightedLp>(&x.variant())) {
    require_same_grid(s->w.grid(), g.grid());
    p = s->p;
    w = &s->w;
  } else {
    return std::nullopt;
  }
  if (p == 1.0) {
    double best = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) best = std::max(best, std::fabs(g[i]) / (w ? (*w)[i] : 1.0));
    return best;
  }
  const double conj = p / (p - 1.0);
  const double vol = g.grid().cell_volume();
  std::vector<double> terms(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == 0.0) continue;
    terms[i] = std::pow(std::fabs(g[i]), conj) * vol;
    if (w) terms[i] *= std::pow((*w)[i], 1.0 - conj);
  }
  return checked(std::pow(pairwise_sum(terms), 1.0 / conj));
}

bool ideal_property_probe(const SpaceSpec& x, const GridFunction& f, const GridFunction& g) {
  require_same_grid(f.grid(), g.grid());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (std::fabs(g[i]) > std::fabs(f[i]))
      throw Error(ErrorKind::contract_violation, "ideal property probe needs |g| <= |f| cellwise");
  return quasi_norm(x, g) <= quasi_norm(x, f) * (1.0 + 1e-9);
}

}  // namespace campanato
