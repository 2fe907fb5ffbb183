#include "campanato/corpus.hpp"

#include <cmath>
#include <numbers>

#include "campanato/error.hpp"
#include "campanato/random.hpp"

namespace campanato {

namespace {

constexpr int kCzLevels = 4;

double euclidean(const Point& x, int n) {
  double s = 0.0;
  for (int d = 0; d < n; ++d) s += x[d] * x[d];
  return std::sqrt(s);
}

template <class Fn>
GridFunction sample(const DyadicGrid& grid, Fn fn) {
  std::vector<double> out(grid.cell_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(grid.cell_center(i), grid.cell_coords(i));
  return GridFunction(grid, std::move(out));
}

bool on_vertex(double x, const DyadicGrid& grid) {
  const double scaled = std::ldexp(x, grid.level());
  return x >= 0.0 && x <= 1.0 && scaled == std::floor(scaled);
}

// Centered child value of a martingale difference: u_child minus the mean
// of the 2^n draws for the parent cube.
double cz_increment(const RandomCz& spec, int level, std::uint64_t parent, int child, int n) {
  const int children = 1 << n;
  double u[4];
  double mean = 0.0;
  for (int c = 0; c < children; ++c) {
    SplitMix64 g(mix_seed(mix_seed(spec.seed, static_cast<std::uint64_t>(level)), parent * 4 + static_cast<std::uint64_t>(c)));
    u[c] = g.uniform(-1.0, 1.0);
    mean += u[c];
  }
  mean /= children;
  return u[child] - mean;
}

}  // namespace

GridFunction generate(const CorpusSpec& spec, const DyadicGrid& grid) {
  const int n = grid.dimension();
  if (const auto* s = std::get_if<LogDistance>(&spec)) {
    for (int d = 0; d < n; ++d)
      if (!on_vertex(s->x0[d], grid)) throw Error(ErrorKind::invalid_spec, "log_distance center must be a grid vertex");
    return sample(grid, [&](const Point& x, const CellIndex&) {
      Point diff{x[0] - s->x0[0], n == 2 ? x[1] - s->x0[1] : 0.0};
      return std::log(euclidean(diff, n));
    });
  }
  if (const auto* s = std::get_if<PowerProfile>(&spec)) {
    if (!(s->theta > 0.0 && s->theta <= 1.0)) throw Error(ErrorKind::invalid_spec, "power profile needs 0 < theta <= 1");
    return sample(grid, [&](const Point& x, const CellIndex&) {
      const double r = euclidean(x, n);
      return s->theta == 1.0 ? r : std::pow(r, s->theta);
    });
  }
  if (const auto* s = std::get_if<Step>(&spec)) {
    if (s->levels < 0 || s->levels > 30) throw Error(ErrorKind::invalid_spec, "step levels must lie in [0, 30]");
    return sample(grid, [&](const Point& x, const CellIndex&) { return std::floor(std::ldexp(x[0], s->levels)); });
  }
  if (const auto* s = std::get_if<RandomCz>(&spec)) {
    if (!std::isfinite(s->amplitude)) throw Error(ErrorKind::invalid_spec, "amplitude must be finite");
    const int depth = std::min(grid.level(), kCzLevels);
    return sample(grid, [&](const Point&, const CellIndex& c) {
      double v = 0.0;
      for (int k = 0; k < depth; ++k) {
        // Parent cube at level k and the child at level k + 1 containing c.
        const int shift_child = grid.level() - (k + 1);
        CellIndex child{c[0] >> shift_child, n == 2 ? c[1] >> shift_child : 0};
        const std::uint64_t parent_side = std::uint64_t{1} << k;
        const auto p0 = static_cast<std::uint64_t>(child[0] >> 1), p1 = static_cast<std::uint64_t>(child[1] >> 1);
        const std::uint64_t parent = n == 2 ? p0 * parent_side + p1 : p0;
        const int which = n == 2 ? static_cast<int>((child[0] & 1) * 2 + (child[1] & 1)) : static_cast<int>(child[0] & 1);
        v += cz_increment(*s, k, parent, which, n);
      }
      return s->amplitude * v;
    });
  }
  const auto& s = std::get<Sine>(spec);
  if (!std::isfinite(s.frequency)) throw Error(ErrorKind::invalid_spec, "frequency must be finite");
  return sample(grid, [&](const Point& x, const CellIndex&) { return std::sin(2.0 * std::numbers::pi * s.frequency * x[0]); });
}

namespace {

std::vector<std::pair<std::string, CorpusSpec>> catalog(int n) {
  return {
      {"log_distance_origin", LogDistance{{0.0, 0.0}}},
      {"log_distance_center", LogDistance{{0.5, n == 2 ? 0.5 : 0.0}}},
      {"power_1", PowerProfile{1.0}},
      {"power_half", PowerProfile{0.5}},
      {"step_1", Step{1}},
      {"step_2", Step{2}},
      {"step_3", Step{3}},
      {"random_cz_1", RandomCz{1, 1.0}},
      {"random_cz_2", RandomCz{2, 1.0}},
      {"random_cz_3", RandomCz{3, 1.0}},
      {"random_cz_4", RandomCz{4, 1.0}},
      {"sine_1", Sine{1.0}},
  };
}

}  // namespace

std::vector<std::pair<std::string, GridFunction>> standard_corpus(const DyadicGrid& grid) {
  std::vector<std::pair<std::string, GridFunction>> out;
  for (auto& [name, spec] : catalog(grid.dimension())) out.emplace_back(name, generate(spec, grid));
  return out;
}

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (auto& entry : catalog(1)) out.push_back(entry.first);
  return out;
}

GridFunction corpus_member(const std::string& name, const DyadicGrid& grid) {
  for (auto& [key, spec] : catalog(grid.dimension()))
    if (key == name) return generate(spec, grid);
  throw Error(ErrorKind::invalid_spec, "unknown corpus member '" + name + "'");
}

GridFunction unit_weight(const DyadicGrid& grid) { return GridFunction(grid, 1.0); }

GridFunction power_weight(const DyadicGrid& grid, double a) {
  const int n = grid.dimension();
  return sample(grid, [&](const Point& x, const CellIndex&) { return std::pow(euclidean(x, n), a); });
}

GridFunction spike_weight(const DyadicGrid& grid) {
  std::vector<double> out(grid.cell_count(), 1.0);
  out[0] = std::ldexp(1.0, grid.dimension() * grid.level());
  return GridFunction(grid, std::move(out));
}

GridFunction linear_exponent(const DyadicGrid& grid) {
  return sample(grid, [](const Point& x, const CellIndex&) { return 2.0 + 0.25 * x[0]; });
}

GridFunction jump_exponent(const DyadicGrid& grid) {
  return sample(grid, [](const Point& x, const CellIndex&) { return x[0] >= 0.5 ? 3.0 : 2.0; });
}

std::vector<std::string> field_names() {
  return {"unit_weight", "sqrt_weight", "inv_sqrt_weight", "spike_weight", "linear_exponent", "jump_exponent"};
}

GridFunction named_field(const std::string& name, const DyadicGrid& grid) {
  if (name == "unit_weight") return unit_weight(grid);
  if (name == "sqrt_weight") return power_weight(grid, 0.5);
  if (name == "inv_sqrt_weight") return power_weight(grid, -0.5);
  if (name == "spike_weight") return spike_weight(grid);
  if (name == "linear_exponent") return linear_exponent(grid);
  if (name == "jump_exponent") return jump_exponent(grid);
  throw Error(ErrorKind::invalid_spec, "unknown field '" + name + "'");
}

}  // namespace campanato
