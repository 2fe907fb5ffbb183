#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "campanato/cli.hpp"
#include "campanato/error.hpp"
#include "campanato/io.hpp"

using namespace campanato;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("campanato_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& s) const { return path_ / s; }

 private:
  fs::path path_;
};

std::string write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(Cli, Norm) {
  TempDir dir;
  const std::string f = write(dir / "f.txt", "1 2\n2\n0\n0\n0\n");
  Result r = run({"norm", "lp:p=2", f});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::stod(r.out), 1.0);
  r = run({"norm", "orlicz:power,p=2", f});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(r.out), 1.0, 1e-12);
  r = run({"norm", "wlp:p=1,w=corpus:unit_weight", f});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(r.out), 0.5, 1e-15);
}

TEST(Cli, Errors) {
  TempDir dir;
  EXPECT_EQ(run({"norm", "lp:p=2", (dir / "missing.txt").string()}).code, 2);
  const std::string bad = write(dir / "bad.txt", "1 2\n1\nfoo\n0\n0\n");
  EXPECT_EQ(run({"norm", "lp:p=2", bad}).code, 2);
  const std::string f = write(dir / "f.txt", "1 1\n1\n1\n");
  EXPECT_EQ(run({"norm", "lp:p=0", f}).code, 2);
  EXPECT_EQ(run({"norm", "bogus:p=2", f}).code, 2);
  EXPECT_EQ(run({"check", "nothing"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, Sparse) {
  TempDir dir;
  const std::string f = write(dir / "f.txt", "1 2\n0\n0\n0\n8\n");
  const Result r = run({"sparse", f});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# schema=1"), std::string::npos);
  EXPECT_NE(r.out.find("entries=1"), std::string::npos);
  EXPECT_NE(r.out.find("0 4 4 3"), std::string::npos);
  EXPECT_NE(r.out.find("domination_constant=2"), std::string::npos);
  EXPECT_EQ(run({"sparse", f, "--alpha", "1.5"}).code, 2);
  EXPECT_EQ(run({"sparse", f, "--cube", "1:3"}).code, 2);
}

TEST(Cli, Checks) {
  TempDir dir;
  Result r = run({"check", "ax", "lp:p=2", "--level", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["constant"].get<double>(), 1.0, 1e-12);
  EXPECT_TRUE(j["certified"].get<bool>());

  const std::string w = write(dir / "w.txt", "1 2\n1\n1\n1\n1\n");
  r = run({"check", "ap", w, "p=2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["constant"].get<double>(), 1.0);
  r = run({"check", "ap1", w, "p=2", "--exhaustive"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["constant"].get<double>(), 1.0, 1e-15);

  r = run({"check", "young", "delta2", "power,p=2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["constant"].get<double>(), 4.0, 1e-12);
  r = run({"check", "young", "nabla2", "power,p=1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(r.out)["constant"].is_null());
  r = run({"check", "phi", "oscillating:theta=0.5", "--level", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GT(nlohmann::json::parse(r.out)["comparability"]["constant"].get<double>(), 1.0);
}

TEST(Cli, CorpusAndMaximal) {
  TempDir dir;
  Result r = run({"corpus", "--list"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("random_cz_1"), std::string::npos);
  const std::string out = (dir / "step.txt").string();
  r = run({"corpus", "step_1", "--level", "3", "--output", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const GridFunction f = load_grid_function(out);
  EXPECT_EQ(f.grid(), DyadicGrid(1, 3));
  r = run({"maximal", out, "--mode", "dyadic"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  const GridFunction m = read_grid_function(in);
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_GE(m[i], std::fabs(f[i]));
}

TEST(Cli, ConfigRoundTrip) {
  const std::string text =
      "# experiment\n n=2\nlevels = 3, 4\nspace = morrey:p=4,q=2\nphi = constant power:theta=0.5\n"
      "corpus = sine_1 step_2\nmode = dyadic\nalpha = 3\noutput = somewhere\n";
  const cli::ExperimentConfig c = cli::parse_config(text);
  EXPECT_EQ(c.n, 2);
  EXPECT_EQ(c.levels, (std::vector<int>{3, 4}));
  EXPECT_EQ(c.phi.size(), 2u);
  EXPECT_EQ(c.mode, MaximalMode::dyadic);
  const std::string once = cli::normalize_config(text);
  EXPECT_EQ(cli::normalize_config(once), once);
  EXPECT_EQ(cli::config_hash(c), cli::config_hash(cli::parse_config(once)));
  EXPECT_EQ(cli::config_hash(c).size(), 16u);
  EXPECT_THROW(cli::parse_config("unknown = 1\n"), Error);
  EXPECT_THROW(cli::parse_config("n = x\n"), Error);
}

TEST(Cli, Equivalence) {
  TempDir dir;
  const std::string cfg = write(dir / "exp.cfg", "levels = 3 4\nspace = lp:p=1\nphi = constant power:theta=0.5\n");
  const std::string out = (dir / "out").string();
  const Result r = run({"equivalence", cfg, "--output", out});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(fs::path(out) / "summary.json");
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["schema"], 1);
  ASSERT_EQ(j["levels"].size(), 2u);
  for (const auto& level : j["levels"]) {
    EXPECT_EQ(level["members"].size(), 12u);
    for (const auto& m : level["members"])
      for (const auto& b : m["phi"]) {
        EXPECT_EQ(b["upper_ratio"].get<double>(), 1.0);
        EXPECT_TRUE(fs::exists(fs::path(out) / b["csv"].get<std::string>()));
      }
  }
  EXPECT_EQ(j["refinement"].size(), 2u);
  EXPECT_TRUE(fs::exists(fs::path(out) / "L4" / "sine_1__phi1.csv"));
}
