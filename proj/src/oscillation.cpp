#include "campanato/oscillation.hpp"

#include <algorithm>
#include <cmath>

#include "campanato/error.hpp"
#include "campanato/parallel.hpp"
#include "campanato/summation.hpp"

namespace campanato {

namespace {

double lp_mean_oscillation(const GridFunction& f, const Cube& q, double p) {
  if (p == 1.0) return mean_oscillation(f, q);
  const double mean = average(f, q);
  std::vector<double> terms;
  terms.reserve(q.cell_count());
  for (std::size_t idx : q.cells()) terms.push_back(std::pow(std::fabs(f[idx] - mean), p));
  return std::pow(pairwise_sum(terms) / static_cast<double>(terms.size()), 1.0 / p);
}

bool is_plain_l1(const SpaceSpec& x) {
  const auto* lp = std::get_if<Lp>(&x.variant());
  return lp && lp->p == 1.0;
}

double ratio_or_one(double num, double den) {
  if (num == 0.0 && den == 0.0) return 1.0;
  return num / den;
}

// The space seen by functions rescaled from cubes of each dyadic side.
class RescaledSpaces {
 public:
  RescaledSpaces(const SpaceSpec& x, const DyadicGrid& grid) {
    const auto field = x.field_grid();
    if (field && !(*field == grid))
      throw Error(ErrorKind::incompatible_space, "space fields live on a different grid than the function");
    for (int level = 0; level <= grid.level(); ++level) by_level_.push_back(field ? x.coarsened(level) : x);
  }

  const SpaceSpec& at(int level) const { return by_level_.at(static_cast<std::size_t>(level)); }

 private:
  std::vector<SpaceSpec> by_level_;
};

double rescaled_norm(const GridFunction& f, const RescaledSpaces& spaces, const Cube& q) {
  const GridFunction g = rescale_to_unit(f, q);
  return quasi_norm(spaces.at(g.grid().level()), g);
}

}  // namespace

double mean_oscillation(const GridFunction& f, const Cube& q) {
  const double mean = average(f, q);
  std::vector<double> dev;
  dev.reserve(q.cell_count());
  for (std::size_t idx : q.cells()) dev.push_back(std::fabs(f[idx] - mean));
  return pairwise_sum(dev) / static_cast<double>(dev.size());
}

double bmo_norm(const GridFunction& f) { return campanato_norm(f, PhiParameter::constant(), 1.0); }

double campanato_norm(const GridFunction& f, const PhiParameter& phi, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::invalid_spec, "Campanato exponent needs 1 <= p < inf");
  const std::vector<Cube> cubes = enumerate_cubes(f.grid());
  std::vector<double> values(cubes.size());
  parallel_for(cubes.size(), [&](std::size_t k) {
    const double osc = lp_mean_oscillation(f, cubes[k], p);
    values[k] = osc == 0.0 ? 0.0 : phi(cubes[k]) * osc;
  });
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

std::vector<CubeRecord> oscillation_records(const GridFunction& f, const SpaceSpec& x) {
  const auto field = x.field_grid();
  if (field && !(*field == f.grid()))
    throw Error(ErrorKind::incompatible_space, "space fields live on a different grid than the function");
  const std::vector<Cube> cubes = enumerate_cubes(f.grid());
  const bool l1 = is_plain_l1(x);
  std::vector<CubeRecord> records(cubes.size(), CubeRecord{cubes.front(), 1.0, 0.0, 0.0});
  parallel_for(
      cubes.size(),
      [&](std::size_t k) {
        const Cube& q = cubes[k];
        const double osc = mean_oscillation(f, q);
        double ratio = osc;
        if (!l1) ratio = osc == 0.0 ? 0.0 : quasi_norm(x, oscillation(f, q)) / indicator_norm(x, q);
        records[k] = {q, 1.0, osc, ratio};
      },
      16);
  return records;
}

OscillationReport apply_phi(std::vector<CubeRecord> records, const PhiParameter& phi) {
  OscillationReport report;
  for (CubeRecord& r : records) {
    r.phi = phi(r.cube);
    report.campanato = std::max(report.campanato, r.phi * r.l1_osc);
    report.x_campanato = std::max(report.x_campanato, r.phi * r.x_ratio);
  }
  report.records = std::move(records);
  report.lower_ratio = ratio_or_one(report.campanato, report.x_campanato);
  report.upper_ratio = ratio_or_one(report.x_campanato, report.campanato);
  return report;
}

OscillationReport x_campanato(const GridFunction& f, const PhiParameter& phi, const SpaceSpec& x) {
  return apply_phi(oscillation_records(f, x), phi);
}

double orlicz_average(const GridFunction& f, const YoungFunction& phi, const Cube& q) {
  std::vector<double> a;
  double largest = 0.0;
  for (std::size_t idx : q.cells()) {
    const double v = std::fabs(f[idx]);
    if (v == 0.0) continue;
    a.push_back(v);
    largest = std::max(largest, v);
  }
  if (a.empty()) return 0.0;
  const double log_count = std::log(static_cast<double>(q.cell_count()));
  std::vector<double> terms(a.size());
  const double value = solve_luxemburg(
      [&](double u) {
        const double lambda = std::exp(u);
        for (std::size_t k = 0; k < a.size(); ++k) terms[k] = phi(a[k] / lambda);
        return std::log(pairwise_sum(terms)) - log_count;
      },
      std::log(largest));
  if (!std::isfinite(value)) throw Error(ErrorKind::numeric_overflow, "non-finite Orlicz average");
  return value;
}

double x_average_norm(const GridFunction& f, const SpaceSpec& x, const Cube& q) {
  return rescaled_norm(f, RescaledSpaces(x, f.grid()), q);
}

double average_campanato(const GridFunction& f, const PhiParameter& phi, const SpaceSpec& x) {
  const RescaledSpaces spaces(x, f.grid());
  std::vector<Cube> cubes;
  for (const Cube& q : enumerate_cubes(f.grid()))
    if (q.power_of_two_side()) cubes.push_back(q);
  std::vector<double> values(cubes.size(), 0.0);
  parallel_for(
      cubes.size(),
      [&](std::size_t k) {
        const GridFunction g = oscillation(f, cubes[k]);
        if (g.is_zero()) return;
        values[k] = phi(cubes[k]) * rescaled_norm(g, spaces, cubes[k]);
      },
      16);
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double technical_condition_ratio(const GridFunction& f, const SpaceSpec& x, const Cube& q) {
  for (std::size_t idx : q.cells())
    if (f[idx] < 0.0) throw Error(ErrorKind::contract_violation, "technical condition needs f >= 0");
  const double denominator = x_average_norm(f, x, q);
  if (denominator == 0.0) throw Error(ErrorKind::undefined_ratio, "f vanishes on Q");
  return average(f, q) / denominator;
}

}  // namespace campanato
