#include "campanato/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "campanato/error.hpp"

namespace campanato {

std::string format_round_trip(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string format_17(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), ptr);
}

void write_grid_function(std::ostream& out, const GridFunction& f) {
  out << f.grid().dimension() << ' ' << f.grid().level() << '\n';
  for (double v : f.values()) out << format_round_trip(v) << '\n';
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_value(const std::string& token, std::size_t line) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw Error(ErrorKind::parse, "line " + std::to_string(line) + ": bad value '" + token + "'");
  return v;
}

}  // namespace

GridFunction read_grid_function(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  int n = 0, level = -1;
  bool have_header = false;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (!have_header) {
      std::istringstream hs(t);
      std::string extra;
      if (!(hs >> n >> level) || (hs >> extra))
        throw Error(ErrorKind::parse, "line " + std::to_string(lineno) + ": expected header 'n L'");
      have_header = true;
      continue;
    }
    values.push_back(parse_value(t, lineno));
  }
  if (!have_header) throw Error(ErrorKind::parse, "empty grid function file");
  DyadicGrid grid = [&] {
    try {
      return DyadicGrid(n, level);
    } catch (const Error& e) {
      throw Error(ErrorKind::parse, e.what());
    }
  }();
  if (values.size() != grid.cell_count())
    throw Error(ErrorKind::parse, "expected " + std::to_string(grid.cell_count()) + " values, found " +
                                      std::to_string(values.size()));
  return GridFunction(grid, std::move(values));
}

GridFunction load_grid_function(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  return read_grid_function(in);
}

void save_grid_function(const std::filesystem::path& path, const GridFunction& f) {
  std::ostringstream out;
  write_grid_function(out, f);
  write_file_atomic(path, out.str());
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorKind::io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::io, "cannot rename onto " + path.string() + ": " + ec.message());
}

}  // namespace campanato
