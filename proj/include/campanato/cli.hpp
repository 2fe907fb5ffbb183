#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "campanato/grid.hpp"
#include "campanato/maximal.hpp"
#include "campanato/phi.hpp"
#include "campanato/spaces.hpp"

namespace campanato::cli {

/// Line-oriented `key = value` experiment description; `#` starts a comment.
///
///   n      = 1
///   levels = 4 6 8
///   space  = lp:p=2
///   phi    = constant power:theta=0.5
///   corpus = all
///   mode   = full
///   alpha  = 2
///   output = results
struct ExperimentConfig {
  int n = 1;
  std::vector<int> levels{4};
  std::string space = "lp:p=1";
  std::vector<std::string> phi{"constant"};
  std::vector<std::string> corpus{"all"};
  MaximalMode mode = MaximalMode::full;
  double alpha = 2.0;
  std::string output = "equivalence_out";
};

ExperimentConfig parse_config(std::string_view text);
std::string render_config(const ExperimentConfig& config);
std::string normalize_config(std::string_view text);

// FNV-1a 64 of the normalized config, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

/// Space strings: lp:p=2, wlp:p=2,w=FILE, lorentz:p=2,q=1[,w=FILE],
/// orlicz:power,p=2, orlicz:powerlog,p=2, orlicz:exp, varlp:p=FILE,
/// morrey:p=4,q=2. A field may name a built-in as corpus:NAME, which is
/// generated on `grid`; fields read from files must match `grid` when one is
/// given.
SpaceSpec parse_space(const std::string& text, const std::optional<DyadicGrid>& grid);

/// constant | power:theta=T | oscillating:theta=T
PhiParameter parse_phi(const std::string& text);

/// Young functions as written after "orlicz:" (power,p=2 / powerlog,p=2 / exp).
YoungFunction parse_young(const std::string& text);

/// Runs the command line (arguments after the program name). Exit codes: 0 success, 2 usage, parse, I/O or
/// domain errors, 3 numeric failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace campanato::cli
