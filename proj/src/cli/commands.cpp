#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "campanato/cli.hpp"
#include "campanato/conditions.hpp"
#include "campanato/corpus.hpp"
#include "campanato/error.hpp"
#include "campanato/io.hpp"
#include "campanato/oscillation.hpp"
#include "campanato/sparse.hpp"

namespace campanato::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kSchema = 1;
constexpr const char* kVersion = "1.0.0";

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json cube_json(const Cube& q) {
  json corner = json::array();
  for (int d = 0; d < q.dimension(); ++d) corner.push_back(q.corner()[d]);
  return {{"corner", corner}, {"side_cells", q.side_cells()}, {"level", q.level()}, {"n", q.dimension()}};
}

json report_json(const ConditionReport& r) {
  json witness = json::object();
  if (r.witness.cube) witness["cube"] = cube_json(*r.witness.cube);
  if (!r.witness.points.empty()) {
    json pts = json::array();
    for (const Point& p : r.witness.points) pts.push_back({p[0], p[1]});
    witness["points"] = pts;
  }
  if (r.witness.radius) witness["radius"] = *r.witness.radius;
  if (r.witness.level) witness["level"] = *r.witness.level;
  if (!r.witness.subset.empty()) witness["subset"] = r.witness.subset;
  json j = {{"schema", kSchema},  {"condition", r.condition}, {"constant", number(r.constant)},
            {"witness", witness}, {"budget", r.budget},       {"samples", r.samples},
            {"certified", r.certified}};
  if (r.threshold) j["threshold"] = *r.threshold;
  if (!r.trend.empty()) {
    j["trend"] = r.trend;
    j["diverging"] = r.diverging;
  }
  return j;
}

// "c0[,c1]:side"
Cube parse_cube(const std::string& text, const DyadicGrid& grid) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::parse, "cube must look like c0[,c1]:side");
  CellIndex corner{0, 0};
  std::stringstream in(text.substr(0, colon));
  std::string part;
  int d = 0;
  while (std::getline(in, part, ',')) {
    if (d >= grid.dimension()) throw Error(ErrorKind::parse, "too many corner coordinates in '" + text + "'");
    try {
      corner[d++] = std::stoll(part);
    } catch (const std::exception&) {
      throw Error(ErrorKind::parse, "bad corner in '" + text + "'");
    }
  }
  if (d != grid.dimension()) throw Error(ErrorKind::parse, "cube corner needs " + std::to_string(grid.dimension()) + " coordinates");
  std::int64_t side = 0;
  try {
    side = std::stoll(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(ErrorKind::parse, "bad side in '" + text + "'");
  }
  return Cube(grid, corner, side);
}

double key_value(const std::vector<std::string>& args, const std::string& key, std::optional<double> fallback) {
  for (const auto& a : args)
    if (a.rfind(key + "=", 0) == 0) {
      try {
        std::size_t used = 0;
        const double v = std::stod(a.substr(key.size() + 1), &used);
        if (used == a.size() - key.size() - 1) return v;
      } catch (const std::exception&) {
      }
      throw Error(ErrorKind::parse, "bad value in '" + a + "'");
    }
  if (!fallback) throw Error(ErrorKind::parse, "missing " + key + "=");
  return *fallback;
}

std::vector<std::string> positional(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const auto& a : args)
    if (a.rfind("p=", 0) != 0) out.push_back(a);
  return out;
}

const std::string& nth(const std::vector<std::string>& v, std::size_t i, const char* what) {
  if (i >= v.size()) throw Error(ErrorKind::parse, std::string("missing argument: ") + what);
  return v[i];
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

MaximalMode parse_mode(const std::string& s) {
  if (s == "full") return MaximalMode::full;
  if (s == "dyadic") return MaximalMode::dyadic;
  throw Error(ErrorKind::parse, "mode must be full or dyadic");
}

// ---- commands -------------------------------------------------------------

void cmd_norm(const std::string& space, const std::string& file, std::ostream& out) {
  const GridFunction f = load_grid_function(file);
  out << format_17(quasi_norm(parse_space(space, f.grid()), f)) << "\n";
}

void cmd_corpus(const std::string& name, bool list, int n, int level, const std::string& output, std::ostream& out) {
  if (list) {
    for (const auto& s : corpus_names()) out << s << "\n";
    for (const auto& s : field_names()) out << s << "\n";
    return;
  }
  if (name.empty()) throw Error(ErrorKind::parse, "corpus needs a member name or --list");
  const DyadicGrid grid(n, level);
  const auto fields = field_names();
  const GridFunction f = std::find(fields.begin(), fields.end(), name) != fields.end() ? named_field(name, grid)
                                                                                         : corpus_member(name, grid);
  std::ostringstream text;
  write_grid_function(text, f);
  emit(text.str(), output, out);
}

void cmd_maximal(const std::string& file, const std::string& mode, const std::string& output, std::ostream& out) {
  std::ostringstream text;
  write_grid_function(text, maximal(load_grid_function(file), parse_mode(mode)));
  emit(text.str(), output, out);
}

void cmd_sparse(const std::string& file, const std::string& cube, double alpha, const std::string& output,
                std::ostream& out) {
  const GridFunction f = load_grid_function(file);
  const Cube q0 = cube.empty() ? Cube::whole(f.grid()) : parse_cube(cube, f.grid());
  const SparseFamily s = cz_sparse(f, q0, alpha);
  const auto problems = sparse_violations(s);
  if (!problems.empty()) throw Error(ErrorKind::contract_violation, "sparse family self-check failed: " + problems.front());
  const double constant = domination_constant(f, s);

  std::ostringstream text;
  text << "# schema=" << kSchema << "\n";
  text << "alpha=" << format_round_trip(alpha) << " L=" << f.grid().level() << " n=" << f.grid().dimension()
       << " entries=" << s.entries.size() << "\n";
  for (const SparseEntry& e : s.entries) {
    for (int d = 0; d < f.grid().dimension(); ++d) text << e.cube.corner()[d] << " ";
    text << e.cube.side_cells() << " " << e.e.size() << " " << format_round_trip(e.oscillation) << "\n";
  }
  text << "domination_constant=" << (std::isfinite(constant) ? format_round_trip(constant) : "inf") << "\n";
  emit(text.str(), output, out);
}

struct CheckOptions {
  int n = 1;
  int level = 4;
  std::size_t budget = 32;
  std::uint64_t seed = 1;
  bool exhaustive = false;
  std::size_t max_cells = 16;
  double lambda = 0.5;
  double theta = 0.0;
  std::string mode = "full";
};

void cmd_check(const std::string& condition, const std::vector<std::string>& args, const CheckOptions& o,
               std::ostream& out) {
  const auto pos = positional(args);
  json j;
  if (condition == "ax") {
    const DyadicGrid grid(o.n, o.level);
    j = report_json(ax_product_sup(parse_space(nth(pos, 0, "space"), grid), grid));
  } else if (condition == "lerner") {
    const GridFunction f = load_grid_function(nth(pos, 1, "function file"));
    j = report_json(ax_lerner_sup(parse_space(nth(pos, 0, "space"), f.grid()), f));
  } else if (condition == "ap") {
    j = report_json(ap_constant(load_grid_function(nth(pos, 0, "weight file")), key_value(args, "p", std::nullopt)));
  } else if (condition == "ap1") {
    const GridFunction w = load_grid_function(nth(pos, 0, "weight file"));
    const double p = key_value(args, "p", std::nullopt);
    j = report_json(o.exhaustive ? ap1_constant_exhaustive(w, p, o.max_cells) : ap1_constant(w, p, o.budget, o.seed));
  } else if (condition == "young") {
    const std::string& which = nth(pos, 0, "delta2 or nabla2");
    std::string spec = nth(pos, 1, "Young function");
    if (spec.rfind("orlicz:", 0) == 0) spec = spec.substr(7);
    YoungFunction phi = parse_young(spec);
    if (o.theta != 0.0) phi = phi_theta(phi, o.theta);
    const auto samples = young_samples();
    if (which == "delta2") j = report_json(young_delta2_constant(phi, samples));
    else if (which == "nabla2") j = report_json(young_nabla2_report(phi, samples));
    else throw Error(ErrorKind::parse, "young check is delta2 or nabla2");
  } else if (condition == "phi") {
    const PhiRegularity r = phi_regularity(parse_phi(nth(pos, 0, "phi")), DyadicGrid(o.n, o.level));
    j = {{"schema", kSchema},
         {"almost_decreasing", report_json(r.almost_decreasing)},
         {"comparability", report_json(r.comparability)}};
  } else if (condition == "loghoelder") {
    const LogHolder r = log_holder_constants(VariableExponent(load_grid_function(nth(pos, 0, "exponent file"))));
    j = {{"schema", kSchema}, {"lh0", report_json(r.lh0)}, {"lh_infinity", report_json(r.lh_infinity)}};
  } else if (condition == "weak") {
    const GridFunction f = load_grid_function(nth(pos, 1, "function file"));
    ConditionReport r;
    r.condition = "weak";
    r.constant = weak_bound_ratio(parse_space(nth(pos, 0, "space"), f.grid()), f, o.lambda, parse_mode(o.mode));
    r.witness.level = o.lambda;
    r.samples = 1;
    j = report_json(r);
  } else {
    throw Error(ErrorKind::parse, "unknown condition '" + condition + "'");
  }
  out << j.dump(2) << "\n";
}

double relative_change(double from, double to) {
  if (from == to) return 0.0;
  return std::fabs(to - from) / std::fabs(from);
}

void cmd_equivalence(const std::string& config_path, const std::string& output_override, std::ostream& out) {
  std::ifstream in(config_path);
  if (!in) throw Error(ErrorKind::io, "cannot open config '" + config_path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  ExperimentConfig config = parse_config(buffer.str());
  if (!output_override.empty()) config.output = output_override;
  const fs::path root(config.output);
  fs::create_directories(root);

  std::vector<PhiParameter> phis;
  for (const auto& s : config.phi) phis.push_back(parse_phi(s));
  const bool all = config.corpus.size() == 1 && config.corpus.front() == "all";

  json levels = json::array();
  // corpus_max[phi][level index], member_upper[phi][member][level index]
  std::vector<std::vector<double>> corpus_max(phis.size());
  std::vector<std::map<std::string, std::vector<double>>> member_upper(phis.size());

  for (int level : config.levels) {
    const DyadicGrid grid(config.n, level);
    const SpaceSpec x = parse_space(config.space, grid);
    std::vector<std::pair<std::string, GridFunction>> members;
    if (all) {
      members = standard_corpus(grid);
    } else {
      for (const auto& name : config.corpus) members.emplace_back(name, corpus_member(name, grid));
    }
    const fs::path dir = root / ("L" + std::to_string(level));
    fs::create_directories(dir);

    std::vector<double> level_max(phis.size(), 0.0);
    json member_blocks = json::array();
    std::vector<GridFunction> family;
    for (const auto& [name, f] : members) {
      family.push_back(f);
      const std::vector<CubeRecord> records = oscillation_records(f, x);
      json phi_blocks = json::array();
      for (std::size_t k = 0; k < phis.size(); ++k) {
        const OscillationReport report = apply_phi(records, phis[k]);
        std::string csv = "# schema=" + std::to_string(kSchema) + "\n";
        csv += config.n == 1 ? "corner0" : "corner0,corner1";
        csv += ",side_cells,phi,l1_osc,x_ratio\n";
        for (const CubeRecord& r : report.records) {
          for (int d = 0; d < config.n; ++d) csv += std::to_string(r.cube.corner()[d]) + ",";
          csv += std::to_string(r.cube.side_cells()) + "," + format_round_trip(r.phi) + "," +
                 format_round_trip(r.l1_osc) + "," + format_round_trip(r.x_ratio) + "\n";
        }
        const std::string file = name + "__phi" + std::to_string(k) + ".csv";
        write_file_atomic(dir / file, csv);
        phi_blocks.push_back({{"phi", phis[k].describe()},
                              {"campanato", report.campanato},
                              {"x_campanato", report.x_campanato},
                              {"lower_ratio", number(report.lower_ratio)},
                              {"upper_ratio", number(report.upper_ratio)},
                              {"csv", (fs::path("L" + std::to_string(level)) / file).string()}});
        level_max[k] = std::max(level_max[k], report.upper_ratio);
        member_upper[k][name].push_back(report.upper_ratio);
      }
      member_blocks.push_back({{"name", name},
                               {"phi", phi_blocks},
                               {"domination_constant", number(domination_constant(f, Cube::whole(grid), config.alpha))}});
    }
    const VectorValuedRatio vv = vector_valued_ratio(x, family, 2.0, config.mode);
    for (std::size_t k = 0; k < phis.size(); ++k) corpus_max[k].push_back(level_max[k]);
    levels.push_back({{"level", level},
                      {"space", x.describe()},
                      {"members", member_blocks},
                      {"corpus_max_upper_ratio", level_max},
                      {"vector_valued", {{"eta", 2.0}, {"displayed", number(vv.displayed)}, {"rooted", number(vv.rooted)}}}});
    out << "level " << level << ":";
    for (std::size_t k = 0; k < phis.size(); ++k)
      out << " [" << phis[k].describe() << "] max upper_ratio " << format_round_trip(level_max[k]);
    out << "\n";
  }

  json refinement = json::array();
  for (std::size_t k = 0; k < phis.size(); ++k)
    for (std::size_t i = 1; i < config.levels.size(); ++i) {
      json members_delta = json::object();
      for (const auto& [name, values] : member_upper[k]) members_delta[name] = number(relative_change(values[i - 1], values[i]));
      refinement.push_back({{"phi", phis[k].describe()},
                            {"from", config.levels[i - 1]},
                            {"to", config.levels[i]},
                            {"corpus_max_delta", number(relative_change(corpus_max[k][i - 1], corpus_max[k][i]))},
                            {"members", members_delta}});
    }

  const json summary = {{"schema", kSchema},
                        {"version", kVersion},
                        {"config_hash", config_hash(config)},
                        {"config", render_config(config)},
                        {"uncertified_associate", false},
                        {"levels", levels},
                        {"refinement", refinement}};
  write_file_atomic(root / "summary.json", summary.dump(2) + "\n");
  out << "wrote " << (root / "summary.json").string() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Campanato and BMO experiments on dyadic grids", "campanato"};
  app.require_subcommand(1);
  std::function<void()> action;

  std::string space, file, name, output, cube, mode = "full", condition, config_path;
  std::vector<std::string> extra;
  bool list = false;
  int n = 1, level = 4;
  double alpha = 2.0;
  CheckOptions check;

  auto* norm = app.add_subcommand("norm", "Print the quasi-norm of a grid function");
  norm->add_option("space", space, "Space, e.g. lp:p=2")->required();
  norm->add_option("file", file, "Grid function file")->required();
  norm->callback([&] { action = [&] { cmd_norm(space, file, out); }; });

  auto* eq = app.add_subcommand("equivalence", "Run the oscillation-equivalence experiment of a config file");
  eq->add_option("config", config_path, "Config file")->required();
  eq->add_option("--output", output, "Override the output directory");
  eq->callback([&] { action = [&] { cmd_equivalence(config_path, output, out); }; });

  auto* sp = app.add_subcommand("sparse", "Sparse decomposition dump and domination constant");
  sp->add_option("file", file, "Grid function file")->required();
  sp->add_option("--cube", cube, "Root cube c0[,c1]:side (default: the base cube)");
  sp->add_option("--alpha", alpha, "Stopping threshold (>= 2)");
  sp->add_option("--output", output, "Write the dump here instead of standard output");
  sp->callback([&] { action = [&] { cmd_sparse(file, cube, alpha, output, out); }; });

  auto* ck = app.add_subcommand("check", "Evaluate a hypothesis checker and print its JSON report");
  ck->add_option("condition", condition, "ax | lerner | ap | ap1 | young | phi | loghoelder | weak")->required();
  ck->add_option("args", extra, "Condition arguments");
  ck->add_option("--n", check.n, "Grid dimension");
  ck->add_option("--level", check.level, "Grid level");
  ck->add_option("--budget", check.budget, "Random subsets per cube (ap1)");
  ck->add_option("--seed", check.seed, "Seed for random subsets (ap1)");
  ck->add_flag("--exhaustive", check.exhaustive, "Exhaustive subsets on small cubes (ap1)");
  ck->add_option("--max-cells", check.max_cells, "Largest cube for --exhaustive");
  ck->add_option("--lambda", check.lambda, "Level for the weak-type ratio");
  ck->add_option("--theta", check.theta, "Apply the Phi_theta construction first (young)");
  ck->add_option("--mode", check.mode, "full | dyadic (weak)");
  ck->callback([&] { action = [&] { cmd_check(condition, extra, check, out); }; });

  auto* cp = app.add_subcommand("corpus", "Dump a corpus member or built-in field");
  cp->add_option("name", name, "Member or field name");
  cp->add_flag("--list", list, "List available names");
  cp->add_option("--n", n, "Grid dimension");
  cp->add_option("--level", level, "Grid level");
  cp->add_option("--output", output, "Write here instead of standard output");
  cp->callback([&] { action = [&] { cmd_corpus(name, list, n, level, output, out); }; });

  auto* mx = app.add_subcommand("maximal", "Dump the maximal function of a grid function");
  mx->add_option("file", file, "Grid function file")->required();
  mx->add_option("--mode", mode, "full | dyadic");
  mx->add_option("--output", output, "Write here instead of standard output");
  mx->callback([&] { action = [&] { cmd_maximal(file, mode, output, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.numeric() ? 3 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace campanato::cli
