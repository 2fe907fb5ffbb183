#include "campanato/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>

#include "campanato/error.hpp"
#include "campanato/io.hpp"
#include "campanato/parallel.hpp"
#include "campanato/random.hpp"
#include "campanato/summation.hpp"

namespace campanato {

namespace {

struct Best {
  double value = -kInfinity;
  std::size_t index = 0;
};

// Index of the largest entry, first one on ties.
Best arg_max(const std::vector<double>& values) {
  Best b;
  for (std::size_t k = 0; k < values.size(); ++k)
    if (values[k] > b.value) b = {values[k], k};
  return b;
}

double power_mean_term(const GridFunction& w, const Cube& q, double p) {
  const double conj = p / (p - 1.0);
  std::vector<double> dual;
  dual.reserve(q.cell_count());
  for (std::size_t idx : q.cells()) dual.push_back(std::pow(w[idx], 1.0 - conj));
  const double dual_mean = pairwise_sum(dual) / static_cast<double>(dual.size());
  return average(w, q) * std::pow(dual_mean, p - 1.0);
}

void require_weight(const GridFunction& w) {
  for (double v : w.values())
    if (!(v > 0.0)) throw Error(ErrorKind::invalid_spec, "weights must be strictly positive");
}

double ap1_ratio(double e_cells, double q_cells, double w_e, double w_q, double p) {
  return (e_cells / q_cells) / std::pow(w_e / w_q, 1.0 / p);
}

struct Ap1Candidate {
  double value = 0.0;
  std::vector<std::size_t> subset;
};

// Every prefix of the cells sorted by weight, then random subsets.
Ap1Candidate ap1_cube(const GridFunction& w, const Cube& q, double p, std::size_t budget, std::uint64_t seed) {
  const std::vector<std::size_t> cells = q.cells();
  std::vector<std::size_t> order(cells.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[cells[a]] < w[cells[b]]; });

  std::vector<double> values(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) values[k] = w[cells[k]];
  const double total = pairwise_sum(values);
  const auto k_total = static_cast<double>(cells.size());

  Ap1Candidate best;
  std::size_t best_prefix = 0;
  long double running = 0.0L;
  for (std::size_t m = 0; m < order.size(); ++m) {
    running += values[order[m]];
    const double r = ap1_ratio(static_cast<double>(m + 1), k_total, static_cast<double>(running), total, p);
    if (r > best.value) {
      best.value = r;
      best_prefix = m + 1;
    }
  }
  for (std::size_t m = 0; m < best_prefix; ++m) best.subset.push_back(cells[order[m]]);

  SplitMix64 rng(mix_seed(seed, mix_seed(static_cast<std::uint64_t>(q.corner()[0]) << 32 ^ static_cast<std::uint64_t>(q.corner()[1]),
                                         static_cast<std::uint64_t>(q.side_cells()))));
  std::vector<double> chosen;
  std::vector<std::size_t> subset;
  for (std::size_t draw = 0; draw < budget; ++draw) {
    chosen.clear();
    subset.clear();
    for (std::size_t k = 0; k < cells.size(); ++k)
      if (rng.next() >> 63) {
        chosen.push_back(values[k]);
        subset.push_back(cells[k]);
      }
    if (chosen.empty()) continue;
    const double r = ap1_ratio(static_cast<double>(chosen.size()), k_total, pairwise_sum(chosen), total, p);
    if (r > best.value) {
      best.value = r;
      best.subset = subset;
    }
  }
  return best;
}

int decade_of(double r, double first) { return static_cast<int>(std::floor(std::log10(r / first) + 1e-9)); }

// Per-decade maxima; diverging when every decade after the first beats the
// previous one strictly.
void fill_trend(ConditionReport& report, const std::vector<double>& samples, const std::vector<double>& values) {
  report.trend.clear();
  int current = -1;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (std::isnan(values[k])) continue;
    const int d = decade_of(samples[k], samples.front());
    if (d != current) {
      report.trend.push_back(values[k]);
      current = d;
    } else {
      report.trend.back() = std::max(report.trend.back(), values[k]);
    }
  }
  report.diverging = report.trend.size() >= 3;
  for (std::size_t k = 1; k < report.trend.size(); ++k)
    if (!(report.trend[k] > report.trend[k - 1] * (1.0 + 1e-9))) report.diverging = false;
}

// ---- Φ_θ quadrature -------------------------------------------------------

constexpr int kNodesPerOctave = 8;
constexpr int kOctaves = 60;

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& g, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = g(lm), frm = g(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) throw Error(ErrorKind::numeric_failure, "quadrature for phi_theta did not converge");
  return adaptive_simpson(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// G(u) = ∫_0^u Φ(s)/s ds = ∫_{-∞}^{log u} Φ(e^y) dy tabulated at u = 2^{k/8}.
class PrimitiveTable {
 public:
  explicit PrimitiveTable(const YoungFunction& phi) {
    const double h = std::numbers::ln2 / kNodesPerOctave;
    const int count = 2 * kOctaves * kNodesPerOctave + 1;
    y0_ = -kOctaves * std::numbers::ln2;
    step_ = h;
    auto integrand = [&phi](double y) { return phi(std::exp(y)); };

    const double u0 = std::exp(y0_), u1 = std::exp(y0_ + h);
    const double p0 = phi(u0), p1 = phi(u1);
    const double local_power = std::log(p1 / p0) / h;
    if (!(local_power > 0.0) || !std::isfinite(local_power))
      throw Error(ErrorKind::numeric_failure, "cannot extrapolate phi_theta below the table");
    double g = p0 / local_power;
    for (int k = 0; k < count; ++k) {
      const double y = y0_ + k * h;
      const double phi_y = integrand(y);
      if (!std::isfinite(g) || !std::isfinite(phi_y)) break;
      log_g_.push_back(std::log(g));
      slope_.push_back(phi_y / g);  // d log G / d log u
      if (k + 1 == count) break;
      const double b = y + h, m = y + 0.5 * h;
      const double fb = integrand(b), fm = integrand(m);
      if (!std::isfinite(fb)) break;
      const double whole = simpson(y, b, phi_y, fm, fb);
      g += adaptive_simpson(integrand, y, b, phi_y, fm, fb, whole, 1e-10 * whole, 40);
    }
    if (log_g_.size() < 2) throw Error(ErrorKind::numeric_failure, "phi_theta table is empty");
    limit_slopes();
  }

  double operator()(double u) const {
    if (u == 0.0) return 0.0;
    const double y = std::log(u);
    const double x = (y - y0_) / step_;
    const auto last = static_cast<double>(log_g_.size() - 1);
    if (x < 0.0) return std::exp(log_g_.front() + slope_.front() * (y - y0_));
    if (x > last) {
      if (static_cast<int>(log_g_.size()) < 2 * kOctaves * kNodesPerOctave + 1) return kInfinity;
      return std::exp(log_g_.back() + slope_.back() * (y - (y0_ + last * step_)));
    }
    const auto k = std::min(static_cast<std::size_t>(x), log_g_.size() - 2);
    const double t = x - static_cast<double>(k);
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
    return std::exp(h00 * log_g_[k] + h10 * step_ * slope_[k] + h01 * log_g_[k + 1] + h11 * step_ * slope_[k + 1]);
  }

 private:
  // Fritsch–Carlson limiter on the exact derivatives keeps each Hermite
  // piece monotone.
  void limit_slopes() {
    for (std::size_t k = 0; k + 1 < log_g_.size(); ++k) {
      const double secant = (log_g_[k + 1] - log_g_[k]) / step_;
      if (secant <= 0.0) continue;
      const double a = slope_[k] / secant, b = slope_[k + 1] / secant;
      const double r = a * a + b * b;
      if (r > 9.0) {
        const double tau = 3.0 / std::sqrt(r);
        slope_[k] = tau * a * secant;
        slope_[k + 1] = tau * b * secant;
      }
    }
  }

  double y0_ = 0.0;
  double step_ = 1.0;
  std::vector<double> log_g_;
  std::vector<double> slope_;
};

std::vector<double> half_integer_positions(const DyadicGrid& grid) {
  // Cube centers along one axis sit at k h/2, k = 1 .. 2N - 1.
  const std::int64_t n = grid.cells_per_side();
  const double half = 0.5 * grid.cell_side();
  std::vector<double> out;
  for (std::int64_t k = 1; k < 2 * n; ++k) out.push_back(static_cast<double>(k) * half);
  return out;
}

double distance(const Point& a, const Point& b, int n) {
  double s = 0.0;
  for (int d = 0; d < n; ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
  return std::sqrt(s);
}

}  // namespace

double ax_product_ratio(const SpaceSpec& x, const Cube& q) {
  return indicator_norm(x, q) * associate_norm_indicator(x, q).value / q.measure();
}

ConditionReport ax_product_sup(const SpaceSpec& x, const DyadicGrid& grid) {
  const std::vector<Cube> cubes = enumerate_cubes(grid);
  std::vector<double> values(cubes.size());
  std::vector<char> certified(cubes.size(), 1);
  parallel_for(
      cubes.size(),
      [&](std::size_t k) {
        const AssociateNorm a = associate_norm_indicator(x, cubes[k]);
        values[k] = indicator_norm(x, cubes[k]) * a.value / cubes[k].measure();
        certified[k] = a.certified ? 1 : 0;
      },
      4);
  const Best b = arg_max(values);
  ConditionReport report;
  report.condition = "ax";
  report.constant = b.value;
  report.witness.cube = cubes[b.index];
  report.samples = cubes.size();
  report.certified = std::all_of(certified.begin(), certified.end(), [](char c) { return c != 0; });
  return report;
}

double ax_lerner_ratio(const SpaceSpec& x, const GridFunction& f, const Cube& q) {
  std::vector<double> local(f.size(), 0.0);
  std::vector<double> mags;
  for (std::size_t idx : q.cells()) {
    local[idx] = f[idx];
    mags.push_back(std::fabs(f[idx]));
  }
  const double denominator = quasi_norm(x, GridFunction(f.grid(), std::move(local)));
  if (denominator == 0.0) throw Error(ErrorKind::undefined_ratio, "f vanishes on Q");
  const double mean = pairwise_sum(mags) / static_cast<double>(mags.size());
  return mean * indicator_norm(x, q) / denominator;
}

ConditionReport ax_lerner_sup(const SpaceSpec& x, const GridFunction& f) {
  const std::vector<Cube> cubes = enumerate_cubes(f.grid());
  std::vector<double> values(cubes.size(), -kInfinity);
  parallel_for(
      cubes.size(),
      [&](std::size_t k) {
        bool nonzero = false;
        for (std::size_t idx : cubes[k].cells()) nonzero = nonzero || f[idx] != 0.0;
        if (nonzero) values[k] = ax_lerner_ratio(x, f, cubes[k]);
      },
      16);
  const Best b = arg_max(values);
  if (b.value == -kInfinity) throw Error(ErrorKind::undefined_ratio, "f vanishes identically");
  ConditionReport report;
  report.condition = "lerner";
  report.constant = b.value;
  report.witness.cube = cubes[b.index];
  report.samples = static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](double v) { return v != -kInfinity; }));
  return report;
}

ConditionReport ap_constant(const GridFunction& w, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorKind::invalid_spec, "A_p needs 1 < p < inf");
  require_weight(w);
  const std::vector<Cube> cubes = enumerate_cubes(w.grid());
  std::vector<double> values(cubes.size());
  parallel_for(cubes.size(), [&](std::size_t k) { values[k] = power_mean_term(w, cubes[k], p); });
  const Best b = arg_max(values);
  ConditionReport report;
  report.condition = "ap";
  report.constant = b.value;
  report.witness.cube = cubes[b.index];
  report.witness.level = p;
  report.samples = cubes.size();
  return report;
}

ConditionReport ap1_constant(const GridFunction& w, double p, std::size_t subset_budget, std::uint64_t seed,
                             std::size_t max_cube_cells) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::invalid_spec, "A(p,1) needs 1 <= p < inf");
  require_weight(w);
  std::vector<Cube> cubes;
  for (const Cube& q : enumerate_cubes(w.grid()))
    if (max_cube_cells == 0 || q.cell_count() <= max_cube_cells) cubes.push_back(q);
  std::vector<Ap1Candidate> found(cubes.size());
  parallel_for(cubes.size(), [&](std::size_t k) { found[k] = ap1_cube(w, cubes[k], p, subset_budget, seed); }, 16);
  std::vector<double> values(found.size());
  std::size_t samples = 0;
  for (std::size_t k = 0; k < found.size(); ++k) {
    values[k] = found[k].value;
    samples += cubes[k].cell_count() + subset_budget;
  }
  const Best b = arg_max(values);
  ConditionReport report;
  report.condition = "ap1";
  report.constant = b.value;
  report.witness.cube = cubes[b.index];
  report.witness.subset = found[b.index].subset;
  report.witness.level = p;
  report.budget = subset_budget;
  report.samples = samples;
  return report;
}

ConditionReport ap1_constant_exhaustive(const GridFunction& w, double p, std::size_t max_cube_cells) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::invalid_spec, "A(p,1) needs 1 <= p < inf");
  if (max_cube_cells > 20) throw Error(ErrorKind::invalid_spec, "exhaustive A(p,1) search is limited to 20 cells");
  require_weight(w);
  std::vector<Cube> cubes;
  for (const Cube& q : enumerate_cubes(w.grid()))
    if (q.cell_count() <= max_cube_cells) cubes.push_back(q);
  std::vector<double> values(cubes.size(), 0.0);
  std::vector<std::uint32_t> masks(cubes.size(), 0);
  parallel_for(
      cubes.size(),
      [&](std::size_t k) {
        const std::vector<std::size_t> cells = cubes[k].cells();
        std::vector<double> vals;
        for (std::size_t idx : cells) vals.push_back(w[idx]);
        const double total = pairwise_sum(vals);
        const auto n = static_cast<std::uint32_t>(cells.size());
        std::vector<double> chosen;
        for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
          chosen.clear();
          for (std::uint32_t b = 0; b < n; ++b)
            if (mask >> b & 1u) chosen.push_back(vals[b]);
          const double r = ap1_ratio(static_cast<double>(chosen.size()), n, pairwise_sum(chosen), total, p);
          if (r > values[k]) {
            values[k] = r;
            masks[k] = mask;
          }
        }
      },
      4);
  const Best b = arg_max(values);
  ConditionReport report;
  report.condition = "ap1_exhaustive";
  report.constant = b.value;
  report.witness.cube = cubes[b.index];
  const std::vector<std::size_t> cells = cubes[b.index].cells();
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (masks[b.index] >> i & 1u) report.witness.subset.push_back(cells[i]);
  report.witness.level = p;
  for (const Cube& q : cubes) report.samples += (std::size_t{1} << q.cell_count()) - 1;
  return report;
}

std::vector<double> young_samples() {
  std::vector<double> out;
  const double lo = std::exp2(-20.0), hi = std::exp2(20.0);
  for (int i = 0;; ++i) {
    const double r = lo * std::pow(10.0, i / 64.0);
    if (r > hi) break;
    out.push_back(r);
  }
  return out;
}

ConditionReport young_delta2_constant(const YoungFunction& phi, const std::vector<double>& samples) {
  if (samples.empty()) throw Error(ErrorKind::invalid_spec, "no samples");
  std::vector<double> values(samples.size(), std::numeric_limits<double>::quiet_NaN());
  std::size_t used = 0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double r = samples[k];
    const double base = phi(r);
    if (!(base > 0.0)) throw Error(ErrorKind::invalid_spec, "Young function vanishes at r > 0");
    const double doubled = phi(2.0 * r);
    if (!std::isfinite(doubled)) continue;
    values[k] = doubled / base;
    ++used;
  }
  if (used == 0) throw Error(ErrorKind::invalid_spec, "no sample inside the finite range");
  ConditionReport report;
  report.condition = "delta2";
  Best b;
  for (std::size_t k = 0; k < values.size(); ++k)
    if (!std::isnan(values[k]) && values[k] > b.value) b = {values[k], k};
  report.constant = b.value;
  report.witness.level = samples[b.index];
  report.samples = used;
  fill_trend(report, samples, values);
  return report;
}

std::optional<double> young_nabla2_constant(const YoungFunction& phi, const std::vector<double>& samples) {
  std::vector<double> base(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) base[k] = phi(samples[k]);
  for (int i = 101; i <= 6400; ++i) {
    const double kk = i / 100.0;
    bool ok = true;
    for (std::size_t s = 0; s < samples.size() && ok; ++s) {
      const double far = phi(kk * samples[s]);
      if (!std::isfinite(far)) continue;
      ok = 2.0 * kk * base[s] <= far * (1.0 + 1e-12);
    }
    if (ok) return kk;
  }
  return std::nullopt;
}

ConditionReport young_nabla2_report(const YoungFunction& phi, const std::vector<double>& samples) {
  ConditionReport report;
  report.condition = "nabla2";
  const auto k = young_nabla2_constant(phi, samples);
  report.constant = k ? *k : kInfinity;
  if (k) report.witness.level = *k;
  report.threshold = 1.0;
  report.samples = samples.size();
  return report;
}

YoungFunction phi_theta(const YoungFunction& phi, double theta) {
  if (!(theta >= 1.0) || !std::isfinite(theta)) throw Error(ErrorKind::invalid_spec, "phi_theta needs theta >= 1");
  const std::string name = "phi_theta(" + phi.describe() + ",theta=" + format_round_trip(theta) + ")";
  if (const auto* pw = std::get_if<YoungFunction::Power>(&phi.descriptor())) {
    const double p = pw->p, q = theta * p;
    return YoungFunction::custom(name, [p, q](double t) { return std::pow(t, q) / p; });
  }
  auto table = std::make_shared<const PrimitiveTable>(phi);
  return YoungFunction::custom(name, [table, theta](double t) { return (*table)(std::pow(t, theta)); });
}

PhiRegularity phi_regularity(const PhiParameter& phi, const DyadicGrid& grid) {
  const int n = grid.dimension();
  const std::vector<double> axis = half_integer_positions(grid);
  std::vector<Point> points;
  if (n == 1) {
    for (double a : axis) points.push_back({a, 0.0});
  } else {
    for (double a : axis)
      for (double b : axis) points.push_back({a, b});
  }
  std::vector<double> radii;
  for (int k = grid.level(); k >= 0; --k) radii.push_back(0.5 * std::ldexp(1.0, -k));  // ascending

  const std::size_t np = points.size(), nr = radii.size();
  std::vector<double> table(np * nr);
  parallel_for(np, [&](std::size_t i) {
    for (std::size_t k = 0; k < nr; ++k) table[i * nr + k] = phi(points[i], radii[k]);
  });

  // Almost decreasing: for each x, φ(x, r) against the smallest φ(x, s), s ≤ r.
  struct Hit {
    double value = 0.0;
    std::size_t i = 0, j = 0, r = 0, s = 0;
  };
  std::vector<Hit> dec(np);
  parallel_for(np, [&](std::size_t i) {
    Hit h{0.0, i, i, 0, 0};
    std::size_t arg_min = 0;
    for (std::size_t k = 0; k < nr; ++k) {
      if (table[i * nr + k] < table[i * nr + arg_min]) arg_min = k;
      const double v = table[i * nr + k] / table[i * nr + arg_min];
      if (v > h.value) h = {v, i, i, k, arg_min};
    }
    dec[i] = h;
  });
  std::vector<Hit> comp(np);
  parallel_for(np, [&](std::size_t i) {
    Hit h{0.0, i, i, 0, 0};
    for (std::size_t j = 0; j < np; ++j) {
      const double d = distance(points[i], points[j], n);
      for (std::size_t k = 0; k < nr; ++k) {
        if (d > radii[k]) continue;
        const double v = table[i * nr + k] / table[j * nr + k];
        if (v > h.value) h = {v, i, j, k, k};
      }
    }
    comp[i] = h;
  });
  auto worst = [](const std::vector<Hit>& hits) {
    Hit best;
    for (const Hit& h : hits)
      if (h.value > best.value) best = h;
    return best;
  };

  PhiRegularity out;
  const Hit d = worst(dec);
  out.almost_decreasing.condition = "phi_almost_decreasing";
  out.almost_decreasing.constant = d.value;
  out.almost_decreasing.witness.points = {points[d.i]};
  out.almost_decreasing.witness.radius = radii[d.r];
  out.almost_decreasing.witness.level = radii[d.s];
  out.almost_decreasing.samples = np * nr * (nr + 1) / 2;
  const Hit c = worst(comp);
  out.comparability.condition = "phi_comparability";
  out.comparability.constant = c.value;
  out.comparability.witness.points = {points[c.i], points[c.j]};
  out.comparability.witness.radius = radii[c.r];
  out.comparability.samples = np * np * nr;
  return out;
}

LogHolder log_holder_constants(const VariableExponent& p) {
  const GridFunction& v = p.values();
  const DyadicGrid& grid = v.grid();
  const int n = grid.dimension();
  const std::size_t cells = grid.cell_count();
  std::vector<Point> centers(cells);
  for (std::size_t i = 0; i < cells; ++i) centers[i] = grid.cell_center(i);

  std::vector<double> best(cells, 0.0);
  std::vector<std::size_t> partner(cells, 0);
  parallel_for(cells, [&](std::size_t i) {
    partner[i] = i;
    for (std::size_t j = i + 1; j < cells; ++j) {
      const double d = distance(centers[i], centers[j], n);
      if (!(d < 0.5)) continue;
      const double value = std::fabs(v[i] - v[j]) * -std::log(d);
      if (value > best[i]) {
        best[i] = value;
        partner[i] = j;
      }
    }
  });
  const Best b0 = arg_max(best);

  LogHolder out;
  out.lh0.condition = "log_holder_local";
  out.lh0.constant = b0.value;
  out.lh0.witness.points = {centers[b0.index], centers[partner[b0.index]]};
  out.lh0.samples = cells * (cells - 1) / 2;

  CellIndex mid{0, 0};
  for (int d = 0; d < n; ++d) mid[d] = grid.cells_per_side() / 2;
  const double p_inf = v.at(mid);
  std::vector<double> far(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    double norm = 0.0;
    for (int d = 0; d < n; ++d) norm += centers[i][d] * centers[i][d];
    far[i] = std::fabs(v[i] - p_inf) * std::log(std::numbers::e + std::sqrt(norm));
  }
  const Best binf = arg_max(far);
  out.lh_infinity.condition = "log_holder_infinity";
  out.lh_infinity.constant = binf.value;
  out.lh_infinity.witness.points = {centers[binf.index]};
  out.lh_infinity.witness.level = p_inf;
  out.lh_infinity.samples = cells;
  return out;
}

}  // namespace campanato
