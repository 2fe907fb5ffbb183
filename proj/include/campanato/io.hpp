#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "campanato/grid.hpp"

namespace campanato {

// GridFunction text format: a header line "n L" followed by one value per
// line in row-major cell order, each written in shortest round-trip decimal.
void write_grid_function(std::ostream& out, const GridFunction& f);
GridFunction read_grid_function(std::istream& in);

GridFunction load_grid_function(const std::filesystem::path& path);
void save_grid_function(const std::filesystem::path& path, const GridFunction& f);

// Shortest decimal representation that parses back to the same double.
std::string format_round_trip(double v);
// printf("%.17g")-equivalent.
std::string format_17(double v);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace campanato
