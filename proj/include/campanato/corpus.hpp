#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "campanato/grid.hpp"

namespace campanato {

struct LogDistance {  // log |x - x0|, x0 a grid vertex
  Point x0;
};
struct PowerProfile {  // |x|^θ, 0 < θ ≤ 1
  double theta;
};
struct Step {  // floor(2^levels x₁)
  int levels;
};
struct RandomCz {  // seeded Haar martingale differences on levels < 4
  std::uint64_t seed;
  double amplitude;
};
struct Sine {  // sin(2π frequency x₁)
  double frequency;
};

using CorpusSpec = std::variant<LogDistance, PowerProfile, Step, RandomCz, Sine>;

/// Samples the generator at cell centers. Bit-identical for identical
/// inputs. random_cz coefficients come from SplitMix64 mixing of
/// (seed, level, cube index, child) and do not depend on the grid level once
/// it is at least 4.
GridFunction generate(const CorpusSpec& spec, const DyadicGrid& grid);

/// The fixed twelve-member suite, in a stable order.
std::vector<std::pair<std::string, GridFunction>> standard_corpus(const DyadicGrid& grid);
std::vector<std::string> corpus_names();
GridFunction corpus_member(const std::string& name, const DyadicGrid& grid);

// Weights: |center|^a and a spike of height 2^{nL} on cell 0.
GridFunction unit_weight(const DyadicGrid& grid);
GridFunction power_weight(const DyadicGrid& grid, double a);
GridFunction spike_weight(const DyadicGrid& grid);

// Exponents: 2 + x₁/4 and 2 + [x₁ ≥ 1/2].
GridFunction linear_exponent(const DyadicGrid& grid);
GridFunction jump_exponent(const DyadicGrid& grid);

/// Weight and exponent fields by name: unit_weight, sqrt_weight,
/// inv_sqrt_weight, spike_weight, linear_exponent, jump_exponent.
std::vector<std::string> field_names();
GridFunction named_field(const std::string& name, const DyadicGrid& grid);

}  // namespace campanato
