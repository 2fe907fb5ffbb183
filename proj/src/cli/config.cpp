#include <charconv>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "campanato/cli.hpp"
#include "campanato/error.hpp"
#include "campanato/io.hpp"

namespace campanato::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> words(const std::string& value) {
  std::vector<std::string> out;
  std::string token;
  for (char c : value) {
    if (c == ' ' || c == '\t' || c == ',') {
      if (!token.empty()) out.push_back(std::move(token));
      token.clear();
    } else {
      token.push_back(c);
    }
  }
  if (!token.empty()) out.push_back(std::move(token));
  return out;
}

template <class T>
T parse_number(const std::string& text, const std::string& key) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw Error(ErrorKind::parse, "bad value for '" + key + "': " + text);
  return value;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : " ") + s;
  return out;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (value.empty()) throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": empty value for " + key);

    if (key == "n") {
      c.n = parse_number<int>(value, key);
      if (c.n != 1 && c.n != 2) throw Error(ErrorKind::parse, "n must be 1 or 2");
    } else if (key == "levels") {
      c.levels.clear();
      for (const auto& w : words(value)) c.levels.push_back(parse_number<int>(w, key));
      if (c.levels.empty()) throw Error(ErrorKind::parse, "levels is empty");
    } else if (key == "space") {
      c.space = value;
    } else if (key == "phi") {
      c.phi = words(value);
    } else if (key == "corpus") {
      c.corpus = words(value);
    } else if (key == "mode") {
      if (value == "full") c.mode = MaximalMode::full;
      else if (value == "dyadic") c.mode = MaximalMode::dyadic;
      else throw Error(ErrorKind::parse, "mode must be full or dyadic");
    } else if (key == "alpha") {
      c.alpha = parse_number<double>(value, key);
    } else if (key == "output") {
      c.output = value;
    } else {
      throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  return c;
}

std::string render_config(const ExperimentConfig& c) {
  std::string levels;
  for (int l : c.levels) levels += (levels.empty() ? "" : " ") + std::to_string(l);
  std::string out;
  out += "n = " + std::to_string(c.n) + "\n";
  out += "levels = " + levels + "\n";
  out += "space = " + c.space + "\n";
  out += "phi = " + join(c.phi) + "\n";
  out += "corpus = " + join(c.corpus) + "\n";
  out += std::string("mode = ") + (c.mode == MaximalMode::full ? "full" : "dyadic") + "\n";
  out += "alpha = " + format_round_trip(c.alpha) + "\n";
  out += "output = " + c.output + "\n";
  return out;
}

std::string normalize_config(std::string_view text) { return render_config(parse_config(text)); }

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : render_config(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace campanato::cli
