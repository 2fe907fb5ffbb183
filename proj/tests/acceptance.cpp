// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "campanato/conditions.hpp"
#include "campanato/corpus.hpp"
#include "campanato/error.hpp"
#include "campanato/maximal.hpp"
#include "campanato/oscillation.hpp"
#include "campanato/random.hpp"
#include "campanato/sparse.hpp"

using namespace campanato;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "exception: " << e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s %d %s | %s(%.1fs)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.str().c_str(), secs);
  std::fflush(stdout);
}

GridFunction random_function(const DyadicGrid& grid, std::uint64_t seed) {
  SplitMix64 g(seed);
  std::vector<double> v(grid.cell_count());
  for (double& x : v) x = g.uniform(-1.0, 1.0);
  return GridFunction(grid, std::move(v));
}

double rel(double got, double want) { return got == want ? 0.0 : std::fabs(got - want) / std::fabs(want); }

std::vector<SpaceSpec> verified_spaces(const DyadicGrid& g) {
  return {SpaceSpec::lp(2),
          SpaceSpec::weighted_lp(2, power_weight(g, 0.5)),
          SpaceSpec::lorentz(2, 1),
          SpaceSpec::orlicz(YoungFunction::power(2)),
          SpaceSpec::variable_lp(VariableExponent(linear_exponent(g))),
          SpaceSpec::morrey(4, 2)};
}

void holder_direction(Outcome& o) {
  const DyadicGrid g(1, 6);
  double worst_slack = kInfinity, worst_lower = 0;
  std::size_t checked = 0;
  for (const auto& [name, f] : standard_corpus(g))
    for (double p : {1.0, 2.0, 4.0}) {
      const OscillationReport r = x_campanato(f, PhiParameter::constant(), SpaceSpec::lp(p));
      for (const CubeRecord& rec : r.records) {
        worst_slack = std::min(worst_slack, rec.x_ratio - rec.l1_osc);
        ++checked;
      }
      worst_lower = std::max(worst_lower, r.lower_ratio);
      o.require(r.records.size() == cube_count(g), "cube enumeration incomplete");
    }
  o.require(worst_slack >= -1e-12, "per-cube slack below -1e-12");
  o.require(worst_lower <= 1 + 1e-12, "lower_ratio above 1");
  o.detail << checked << " cube checks, min slack " << worst_slack << ", max lower_ratio " << worst_lower << " ";
}

void norm_coincidences(Outcome& o) {
  double lux = 0, lor = 0, var = 0;
  for (int n = 1; n <= 2; ++n) {
    const DyadicGrid g(n, n == 1 ? 6 : 3);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const GridFunction f = random_function(g, 1000 * n + seed);
      for (double p : {1.0, 1.5, 2.0, 3.0}) {
        const double lp = quasi_norm(SpaceSpec::lp(p), f);
        lux = std::max(lux, rel(quasi_norm(SpaceSpec::orlicz(YoungFunction::power(p)), f), lp));
        lor = std::max(lor, rel(quasi_norm(SpaceSpec::lorentz(p, p), f), lp));
        var = std::max(var, rel(quasi_norm(SpaceSpec::variable_lp(VariableExponent(GridFunction(g, p))), f), lp));
      }
    }
  }
  o.require(lux <= 1e-9, "Luxemburg t^p vs L^p");
  o.require(lor <= 1e-12, "Lorentz (p,p) vs L^p");
  o.require(var <= 1e-9, "constant exponent vs L^p");
  o.detail << "max rel: luxemburg " << lux << ", lorentz " << lor << ", variable " << var << " ";
}

void sparse_invariants(Outcome& o) {
  const DyadicGrid g(1, 6);
  std::size_t entries = 0;
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const GridFunction f = random_function(g, seed);
    const SparseFamily s = cz_sparse(f, Cube::whole(g), 2.0);
    const auto v = sparse_violations(s);
    o.require(v.empty(), v.empty() ? "" : v.front());
    const double c = domination_constant(f, s);
    o.require(std::isfinite(c), "infinite domination constant");
    worst = std::max(worst, c);
    entries += s.entries.size();
  }
  const GridFunction spike(DyadicGrid(1, 2), std::vector<double>{0, 0, 0, 8});
  const double c = domination_constant(spike, Cube::whole(spike.grid()), 2.0);
  o.require(c == 2.0, "worked instance");
  o.detail << entries << " entries over 1000 families, max domination " << worst << ", worked instance " << c << " ";
}

void indicator_lower(Outcome& o) {
  std::size_t pairs = 0;
  double worst = kInfinity;
  for (std::uint64_t seed = 1; pairs < 500; ++seed) {
    const int n = seed % 3 == 0 ? 2 : 1;
    const DyadicGrid g(n, n == 1 ? 6 : 3);
    const SparseFamily s = cz_sparse(random_function(g, 50000 + seed), Cube::whole(g), 2.0);
    for (const SparseEntry& e : s.entries) {
      if (pairs == 500) break;
      worst = std::min(worst, maximal_of_indicator_lower(e.e, e.cube));
      ++pairs;
    }
  }
  o.require(worst >= 0.5 - 1e-12, "lower bound below 1/2");
  o.detail << pairs << " pairs, min " << worst << " ";
}

void ax_sharpness(Outcome& o) {
  const DyadicGrid g(1, 6);
  double worst = 0;
  for (double p : {1.0, 2.0, 4.0})
    for (const Cube& q : enumerate_cubes(g)) worst = std::max(worst, std::fabs(ax_product_ratio(SpaceSpec::lp(p), q) - 1.0));
  o.require(worst <= 1e-12, "L^p product differs from 1");
  const double c6 = ax_product_sup(SpaceSpec::weighted_lp(2, power_weight(g, 0.5)), g).constant;
  const DyadicGrid g8(1, 8);
  const double c8 = ax_product_sup(SpaceSpec::weighted_lp(2, power_weight(g8, 0.5)), g8).constant;
  o.require(std::isfinite(c6) && std::isfinite(c8), "weighted constant not finite");
  o.require(rel(c8, c6) < 0.10, "weighted constant moved by 10% or more");
  o.detail << "L^p max |ratio-1| " << worst << ", weighted L6 " << c6 << " L8 " << c8 << " ";
}

void refinement_stability(Outcome& o) {
  const std::vector<PhiParameter> phis{PhiParameter::constant(), PhiParameter::power(0.5)};
  const std::vector<int> levels{4, 6, 8};
  // corpus_max[space][phi][level]
  std::vector<std::vector<std::vector<double>>> corpus_max(6, std::vector<std::vector<double>>(2));
  std::vector<std::string> names;
  for (int level : levels) {
    const DyadicGrid g(1, level);
    const auto spaces = verified_spaces(g);
    const auto corpus = standard_corpus(g);
    for (std::size_t s = 0; s < spaces.size(); ++s) {
      if (names.size() < spaces.size()) names.push_back(spaces[s].describe());
      std::vector<double> best(phis.size(), 0.0);
      for (const auto& [name, f] : corpus) {
        const auto records = oscillation_records(f, spaces[s]);
        for (std::size_t k = 0; k < phis.size(); ++k) {
          const double u = apply_phi(records, phis[k]).upper_ratio;
          o.require(std::isfinite(u), "non-finite upper_ratio for " + name);
          best[k] = std::max(best[k], u);
        }
      }
      for (std::size_t k = 0; k < phis.size(); ++k) corpus_max[s][k].push_back(best[k]);
    }
  }
  double worst = 0;
  for (std::size_t s = 0; s < corpus_max.size(); ++s)
    for (std::size_t k = 0; k < phis.size(); ++k) {
      const auto& m = corpus_max[s][k];
      for (std::size_t i = 1; i < m.size(); ++i) {
        const double d = rel(m[i], m[i - 1]);
        worst = std::max(worst, d);
        o.require(d < 0.25, names[s] + " " + phis[k].describe() + " changed by " + std::to_string(d));
      }
      o.detail << names[s].substr(0, names[s].find(':')) << "/" << (k == 0 ? "1" : "l^-1/2") << " [" << m[0] << " " << m[1]
               << " " << m[2] << "] ";
    }
  o.detail << "max change " << worst << " ";
}

void checker_oracles(Outcome& o) {
  for (int n = 1; n <= 2; ++n)
    for (double p : {1.5, 2.0, 4.0}) o.require(ap_constant(unit_weight(DyadicGrid(n, 4)), p).constant == 1.0, "A_p of 1");
  const auto samples = young_samples();
  double d2 = 0;
  for (double p : {1.0, 1.5, 2.0, 2.5, 3.0, 4.0})
    d2 = std::max(d2, std::fabs(young_delta2_constant(YoungFunction::power(p), samples).constant - std::pow(2.0, p)));
  o.require(d2 <= 1e-12, "Delta_2 of t^p");
  const YoungFunction t2 = phi_theta(YoungFunction::custom("identity", [](double t) { return t; }), 2.0);
  double pt = 0;
  for (int i = 0; i < 64; ++i) {
    const double t = std::pow(10.0, -4.0 + 8.0 * i / 63.0);
    pt = std::max(pt, rel(t2(t), t * t));
  }
  o.require(pt <= 1e-8, "phi_theta(t, 2) vs t^2");
  double ap1 = 0;
  for (int n = 1; n <= 2; ++n) {
    const DyadicGrid g(n, n == 1 ? 5 : 3);
    for (const std::string& name : {"unit_weight", "sqrt_weight", "inv_sqrt_weight", "spike_weight"})
      for (double p : {1.0, 2.0}) {
        const GridFunction w = named_field(name, g);
        const double exhaustive = ap1_constant_exhaustive(w, p, 16).constant;
        const double sampled = ap1_constant(w, p, 32, 1, 16).constant;
        ap1 = std::max(ap1, rel(sampled, exhaustive));
      }
  }
  o.require(ap1 <= 0.05, "A(p,1) sampled vs exhaustive");
  o.detail << "Delta_2 err " << d2 << ", phi_theta rel err " << pt << ", A(p,1) rel diff " << ap1 << " ";
}

void average_consistency(Outcome& o) {
  double lp_err = 0, orl_err = 0;
  std::size_t cubes = 0;
  for (int n = 1; n <= 2; ++n) {
    const DyadicGrid g(n, 5);
    const GridFunction f = random_function(g, 77 + n);
    for (const Cube& q : enumerate_cubes(g)) {
      if (!q.power_of_two_side()) continue;
      ++cubes;
      std::vector<double> v(f.size(), 0.0);
      for (std::size_t i : q.cells()) v[i] = f[i];
      const GridFunction fq(g, std::move(v));
      for (double p : {1.0, 2.0, 3.0}) {
        const double want = std::pow(1.0 / q.measure(), 1.0 / p) * quasi_norm(SpaceSpec::lp(p), fq);
        lp_err = std::max(lp_err, rel(x_average_norm(f, SpaceSpec::lp(p), q), want));
        orl_err = std::max(orl_err, rel(orlicz_average(f, YoungFunction::power(p), q), want));
      }
    }
  }
  o.require(lp_err <= 1e-12, "L^p average");
  o.require(orl_err <= 1e-9, "Orlicz average");
  double dil = 0;
  for (int n = 1; n <= 2; ++n)
    for (int j = 1; j <= 3; ++j) {
      const DyadicGrid g(n, n == 1 ? 7 : 4);
      GridFunction f = random_function(g, 900 + 10 * n + j);
      std::vector<double> v(f.values().begin(), f.values().end());
      const std::int64_t cut = g.cells_per_side() >> j;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const CellIndex c = g.cell_coords(i);
        for (int d = 0; d < n; ++d)
          if (c[d] >= cut) v[i] = 0.0;
      }
      dil = std::max(dil, dilation_commutation_check(GridFunction(g, v), j, MaximalMode::dyadic));
    }
  o.require(dil == 0.0, "dyadic dilation commutation");
  o.detail << cubes << " cubes, L^p rel err " << lp_err << ", Orlicz rel err " << orl_err << ", dilation deviation " << dil
           << " ";
}

bool same_family(const SparseFamily& a, const SparseFamily& b) {
  if (!(a.root == b.root) || a.entries.size() != b.entries.size()) return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    if (!(a.entries[i].cube == b.entries[i].cube) || a.entries[i].e != b.entries[i].e) return false;
  return true;
}

void invariances(Outcome& o) {
  double tr = 0, hom = 0;
  std::size_t families = 0;
  for (int n = 1; n <= 2; ++n) {
    const DyadicGrid g(n, n == 1 ? 6 : 3);
    const auto spaces = verified_spaces(g);
    for (const auto& [name, f] : standard_corpus(g)) {
      const double c = 3.25, a = 0.375;
      const GridFunction shifted = shift(f, c), scaled = scale(f, a);
      const auto track = [&](double base, double moved, double sc) {
        tr = std::max(tr, std::fabs(moved - base) / c);
        hom = std::max(hom, rel(sc, a * base));
      };
      track(bmo_norm(f), bmo_norm(shifted), bmo_norm(scaled));
      const PhiParameter phi = PhiParameter::power(0.5);
      track(campanato_norm(f, phi, 2.0), campanato_norm(shifted, phi, 2.0), campanato_norm(scaled, phi, 2.0));
      for (const SpaceSpec& x : spaces)
        track(x_campanato(f, phi, x).x_campanato, x_campanato(shifted, phi, x).x_campanato,
              x_campanato(scaled, phi, x).x_campanato);
      const SparseFamily s = cz_sparse(f, Cube::whole(g));
      for (const auto& [aa, bb] : {std::pair{1.0, -17.5}, std::pair{4.0, 0.0}, std::pair{0.3, 2.0}}) {
        o.require(same_family(s, cz_sparse(shift(scale(f, aa), bb), Cube::whole(g))), "sparse affine invariance: " + name);
        ++families;
      }
    }
  }
  o.require(tr <= 1e-12, "translation invariance");
  o.require(hom <= 1e-9, "homogeneity");
  o.detail << "translation err/|c| " << tr << ", homogeneity rel err " << hom << ", " << families << " affine families ";
}

}  // namespace

int main() {
  criterion(1, "Hoelder direction for L^p", holder_direction);
  criterion(2, "norm coincidences", norm_coincidences);
  criterion(3, "sparse family invariants", sparse_invariants);
  criterion(4, "indicator maximal lower bound", indicator_lower);
  criterion(5, "A_X product sharpness", ax_sharpness);
  criterion(6, "equivalence refinement stability", refinement_stability);
  criterion(7, "condition checkers", checker_oracles);
  criterion(8, "cube-average consistency", average_consistency);
  criterion(9, "functional invariances", invariances);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
