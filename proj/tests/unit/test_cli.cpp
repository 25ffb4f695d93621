#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "vlasov1d/io.hpp"

using namespace vlasov1d;
using namespace vlasov1d::cli;

namespace {

const char* kMinimal = R"({
  "command": "stability",
  "initial_distribution": {"type": "uniform_box", "v_half_width": 0.5},
  "n": 256,
  "t_final": 1.0
})";

std::string field_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigValidationError& e) {
    return e.field();
  }
  return "";
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("vlasov1d_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::filesystem::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return path / name;
  }
};

int run(std::vector<std::string> args, std::string* out = nullptr, std::string* err = nullptr) {
  std::vector<const char*> argv = {"vlasov1d"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int rc = main_entry(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return rc;
}

}  // namespace

TEST(ParseConfig, MinimalStabilityGetsDefaults) {
  const auto c = parse_config(kMinimal);
  EXPECT_EQ(c.command, Command::Stability);
  EXPECT_EQ(c.n, 256u);
  EXPECT_EQ(c.dt, 1e-3);
  EXPECT_EQ(c.margin, 0.10);
  EXPECT_EQ(c.w1_atoms, 1024u);
  EXPECT_DOUBLE_EQ(c.vmax, 0.5 + 0.5 + 0.5);
  EXPECT_DOUBLE_EQ(c.sample_interval, 0.1);
  EXPECT_EQ(c.seed, 0u);
}

TEST(ParseConfig, ValidationNamesTheField) {
  auto with = [](const std::string& extra) {
    std::string s = kMinimal;
    s.insert(s.rfind('}'), ", " + extra);
    return s;
  };
  EXPECT_EQ(field_of(with("\"dt\": -0.001")), "dt");
  EXPECT_EQ(field_of(with("\"nx\": 0")), "nx");
  EXPECT_EQ(field_of(with("\"margin\": -1")), "margin");
  EXPECT_EQ(field_of(with("\"vmax\": 0.7")), "vmax");
  EXPECT_EQ(field_of(with("\"strategy\": \"sobol\"")), "strategy");
  EXPECT_EQ(field_of(with("\"sample_interval\": 0.07")), "sample_interval");
  EXPECT_EQ(field_of(with("\"n\": 1.5")), "n");
  EXPECT_EQ(field_of(R"({"command": "stability", "n": 4, "t_final": 1})"), "initial_distribution");
  EXPECT_EQ(field_of(R"({"command": "stability", "t_final": 1,
    "initial_distribution": {"type": "uniform_box", "v_half_width": -1}, "n": 4})"),
            "initial_distribution");
  EXPECT_EQ(field_of(R"({"command": "mollify", "t_final": 1, "n": 16,
    "initial_distribution": {"type": "uniform_box"}, "eps_list": [0.1, 0.6]})"),
            "eps_list");
}

TEST(ParseConfig, UnknownKeySuggestsNeighbour) {
  std::string s = kMinimal;
  s.insert(s.rfind('}'), ", \"dt_particls\": 0.001");
  try {
    parse_config(s);
    FAIL();
  } catch (const ConfigValidationError& e) {
    EXPECT_EQ(e.field(), "dt_particls");
    EXPECT_NE(std::string(e.what()).find("did you mean 'dt'"), std::string::npos);
  }
  EXPECT_EQ(suggest_key("t_finl", {"t_final", "n", "dt"}), "t_final");
  EXPECT_EQ(suggest_key("nv_", {"nx", "nv"}), "nv");
}

TEST(ParseConfig, MalformedJsonReportsLocation) {
  try {
    parse_config("{\"n\": 3,,}");
    FAIL();
  } catch (const ConfigParseError& e) {
    EXPECT_NE(std::string(e.what()).find("byte 9"), std::string::npos);
  }
  EXPECT_THROW(parse_config("[1, 2]"), ConfigParseError);
}

TEST(ParseConfig, CommandMustAgree) {
  EXPECT_EQ(parse_config(kMinimal, Command::Stability).command, Command::Stability);
  EXPECT_THROW(parse_config(kMinimal, Command::Chaos), ConfigValidationError);
  const auto c = parse_config(R"({"mu": "a.csv", "nu": "b.csv"})", Command::W1);
  EXPECT_EQ(c.command, Command::W1);
}

TEST(ParseConfig, HashTracksResolvedValues) {
  const auto a = parse_config(kMinimal);
  auto b = a;
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.seed = 1;
  EXPECT_NE(config_hash(a), config_hash(b));
  b = a;
  b.output_dir = "elsewhere";
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(Cli, UsageErrors) {
  std::string err;
  EXPECT_EQ(run({}, nullptr, &err), kUsageError);
  EXPECT_EQ(run({"stability"}, nullptr, &err), kUsageError);
  EXPECT_EQ(run({"bogus", "--config", "x.json"}, nullptr, &err), kUsageError);
  EXPECT_EQ(run({"stability", "--config", "/nonexistent/x.json"}, nullptr, &err), kUsageError);
  EXPECT_NE(err.find("cannot read"), std::string::npos);
}

TEST(Cli, W1PrintsTwelveDigits) {
  TempDir dir;
  dir.write("mu.csv", "x,v,w\n0,0,0.5\n0.25,0,0.5\n");
  dir.write("nu.csv", "x,v,w\n0,0.3,1\n");
  const auto cfg = dir.write("pair.json", R"({"mu": "mu.csv", "nu": "nu.csv"})");
  std::string out;
  ASSERT_EQ(run({"w1", "--config", cfg.string(), "--out", (dir.path / "out").string()}, &out),
            kPass);
  // (0.3 + sqrt(0.25^2 + 0.3^2)) / 2
  EXPECT_EQ(out, "0.345256241898\n");
}

TEST(Cli, SolveWritesArtifacts) {
  TempDir dir;
  const auto cfg = dir.write("solve.json", R"({
    "initial_distribution": {"type": "truncated_maxwellian", "sigma": 0.4, "vcut": 1.2},
    "t_final": 0.2, "nx": 16, "nv": 16, "dt_grid": 0.05})");
  const auto out = dir.path / "out";
  ASSERT_EQ(run({"solve", "--config", cfg.string(), "--out", out.string(), "--emit-svg"}), kPass);
  const auto hash = config_hash(parse_config(
      R"({"command": "solve",
    "initial_distribution": {"type": "truncated_maxwellian", "sigma": 0.4, "vcut": 1.2},
    "t_final": 0.2, "nx": 16, "nv": 16, "dt_grid": 0.05})"));
  EXPECT_TRUE(std::filesystem::exists(out / hash / "report.json"));
  EXPECT_TRUE(std::filesystem::exists(out / hash / "plot.svg"));
  const auto trace = trace_from_table(read_csv_file(out / hash / "series.csv"));
  EXPECT_EQ(trace.times.size(), 5u);
  const auto grid = grid_from_table(read_csv_file(out / hash / "grid.csv"));
  EXPECT_EQ(grid.nx(), 16u);
}
