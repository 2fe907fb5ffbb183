#include <charconv>
#include <cmath>
#include <map>

#include "campanato/cli.hpp"
#include "campanato/corpus.hpp"
#include "campanato/error.hpp"
#include "campanato/io.hpp"

namespace campanato::cli {

namespace {

struct Parsed {
  std::string kind;
  std::vector<std::string> flags;            // bare words
  std::map<std::string, std::string> keys;   // key=value
};

Parsed split(const std::string& text) {
  Parsed p;
  const auto colon = text.find(':');
  p.kind = text.substr(0, colon);
  if (colon == std::string::npos) return p;
  std::string rest = text.substr(colon + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    auto comma = rest.find(',', start);
    if (comma == std::string::npos) comma = rest.size();
    const std::string item = rest.substr(start, comma - start);
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        p.flags.push_back(item);
      } else {
        if (!p.keys.emplace(item.substr(0, eq), item.substr(eq + 1)).second)
          throw Error(ErrorKind::parse, "duplicate key '" + item.substr(0, eq) + "' in '" + text + "'");
      }
    }
    start = comma + 1;
  }
  return p;
}

double number(const Parsed& p, const std::string& key, const std::string& text) {
  const auto it = p.keys.find(key);
  if (it == p.keys.end()) throw Error(ErrorKind::parse, "'" + text + "' needs " + key + "=");
  const std::string& v = it->second;
  if (v == "inf") return kInfinity;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw Error(ErrorKind::parse, "bad number for " + key + " in '" + text + "'");
  return out;
}

void only(const Parsed& p, std::initializer_list<const char*> allowed, const std::string& text) {
  for (const auto& [k, v] : p.keys) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw Error(ErrorKind::parse, "unexpected key '" + k + "' in '" + text + "'");
  }
}

GridFunction field(const std::string& ref, const std::optional<DyadicGrid>& grid) {
  if (ref.rfind("corpus:", 0) == 0) {
    if (!grid) throw Error(ErrorKind::parse, "built-in field '" + ref + "' needs a grid");
    return named_field(ref.substr(7), *grid);
  }
  GridFunction f = load_grid_function(ref);
  if (grid && !(f.grid() == *grid))
    throw Error(ErrorKind::incompatible_space, "field file '" + ref + "' does not match the function grid");
  return f;
}

}  // namespace

YoungFunction parse_young(const std::string& text) {
  const Parsed p = split("orlicz:" + text);
  if (p.flags.size() != 1) throw Error(ErrorKind::parse, "Young function needs one of power, powerlog, exp");
  const std::string& which = p.flags.front();
  if (which == "power") {
    only(p, {"p"}, text);
    return YoungFunction::power(number(p, "p", text));
  }
  if (which == "powerlog") {
    only(p, {"p"}, text);
    return YoungFunction::power_log(number(p, "p", text));
  }
  if (which == "exp") {
    only(p, {}, text);
    return YoungFunction::exponential();
  }
  throw Error(ErrorKind::parse, "unknown Young function '" + which + "'");
}

SpaceSpec parse_space(const std::string& text, const std::optional<DyadicGrid>& grid) {
  const Parsed p = split(text);
  if (p.kind == "orlicz") return SpaceSpec::orlicz(parse_young(text.substr(text.find(':') + 1)));
  if (!p.flags.empty()) throw Error(ErrorKind::parse, "unexpected flag '" + p.flags.front() + "' in '" + text + "'");
  if (p.kind == "lp") {
    only(p, {"p"}, text);
    return SpaceSpec::lp(number(p, "p", text));
  }
  if (p.kind == "wlp") {
    only(p, {"p", "w"}, text);
    if (!p.keys.contains("w")) throw Error(ErrorKind::parse, "'" + text + "' needs w=");
    return SpaceSpec::weighted_lp(number(p, "p", text), field(p.keys.at("w"), grid));
  }
  if (p.kind == "lorentz") {
    only(p, {"p", "q", "w"}, text);
    std::optional<GridFunction> w;
    if (p.keys.contains("w")) w = field(p.keys.at("w"), grid);
    return SpaceSpec::lorentz(number(p, "p", text), number(p, "q", text), std::move(w));
  }
  if (p.kind == "varlp") {
    only(p, {"p"}, text);
    if (!p.keys.contains("p")) throw Error(ErrorKind::parse, "'" + text + "' needs p=");
    return SpaceSpec::variable_lp(VariableExponent(field(p.keys.at("p"), grid)));
  }
  if (p.kind == "morrey") {
    only(p, {"p", "q"}, text);
    return SpaceSpec::morrey(number(p, "p", text), number(p, "q", text));
  }
  throw Error(ErrorKind::parse, "unknown space '" + p.kind + "'");
}

PhiParameter parse_phi(const std::string& text) {
  const Parsed p = split(text);
  if (!p.flags.empty()) throw Error(ErrorKind::parse, "unexpected flag in phi '" + text + "'");
  if (p.kind == "constant") {
    only(p, {}, text);
    return PhiParameter::constant();
  }
  if (p.kind == "power") {
    only(p, {"theta"}, text);
    return PhiParameter::power(number(p, "theta", text));
  }
  if (p.kind == "oscillating") {
    only(p, {"theta"}, text);
    return PhiParameter::oscillating(number(p, "theta", text));
  }
  throw Error(ErrorKind::parse, "unknown phi '" + p.kind + "'");
}

}  // namespace campanato::cli
