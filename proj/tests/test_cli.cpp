#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string output;
};

/// Runs the CLI with stderr folded into stdout.
Result cli(const std::string& args) {
  const std::string cmd = std::string(BLOWDIAG_CLI_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.output += buf;
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) / ("blowdiag_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  std::string write_config(const std::string& body) {
    const auto p = dir_ / "run.cfg";
    std::ofstream(p) << body;
    return p.string();
  }

  static constexpr const char* small_run =
      "[run]\nmodel = euler2d\nn = 16\nk = 3\n"
      "[ic]\npreset = random_smooth\nseed = 4\nkcut = 4\n"
      "[stepper]\ndt = 0.02\nt_end = 0.1\n"
      "[fit]\nfamily_size = 4\nn = 16\n";

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, PrintDefaultsAndVersion) {
  const auto r = cli("--print-defaults");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.output.find("[run]"), std::string::npos);
  EXPECT_NE(r.output.find("model = euler2d"), std::string::npos);
  const auto v = cli("--version");
  EXPECT_EQ(v.code, 0);
  EXPECT_FALSE(v.output.empty());
}

TEST_F(Cli, SimulateIsByteReproducible) {
  const auto cfg = write_config(small_run);
  const auto a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(cli("simulate --config " + cfg + " --out " + a.string()).code, 0);
  ASSERT_EQ(cli("simulate --config " + cfg + " --out " + b.string()).code, 0);
  const auto csv_a = slurp(a / "series.csv");
  EXPECT_FALSE(csv_a.empty());
  EXPECT_EQ(csv_a, slurp(b / "series.csv"));
  EXPECT_EQ(slurp(a / "series.json"), slurp(b / "series.json"));
  const auto side = nlohmann::json::parse(slurp(a / "series.json"));
  EXPECT_EQ(side["model"], "euler2d");
  EXPECT_EQ(side["params"]["k"], 3);
  EXPECT_TRUE(side["fitted_constants"].contains("K"));
  EXPECT_EQ(side["config_hash"].get<std::string>().size(), 16u);
  // A different seed changes the data.
  ASSERT_EQ(cli("simulate --config " + cfg + " --seed 5 --out " + (dir_ / "c").string()).code, 0);
  EXPECT_NE(csv_a, slurp(dir_ / "c" / "series.csv"));
}

TEST_F(Cli, CriteriaReportOnSimulatedSeries) {
  const auto cfg = write_config(small_run);
  ASSERT_EQ(cli("simulate --config " + cfg + " --out " + dir_.string()).code, 0);
  const auto report = dir_ / "report.json";
  const auto r = cli("criteria --config " + cfg + " --series " + (dir_ / "series.csv").string() + " --t-star 0.5,1 --out " +
                     report.string());
  ASSERT_EQ(r.code, 0) << r.output;
  const auto j = nlohmann::json::parse(slurp(report));
  // Five default criteria times two candidate times.
  ASSERT_EQ(j["verdicts"].size(), 10u);
  EXPECT_EQ(j["verdicts"][0]["criterion"], "lower_bound");
  EXPECT_EQ(j["verdicts"][1]["T_star"], 1.0);
  for (const auto& v : j["verdicts"]) EXPECT_TRUE(v.contains("outcome") && v.contains("evidence"));
}

TEST_F(Cli, CriteriaOnSyntheticSeries) {
  const auto cfg = write_config("[synth]\nkind = decaying\n[criteria]\nlist = trichotomy\nt_star = 1\n");
  ASSERT_EQ(cli("synth --config " + cfg + " --out " + dir_.string()).code, 0);
  const auto r = cli("criteria --config " + cfg + " --series " + (dir_ / "series.csv").string());
  ASSERT_EQ(r.code, 0) << r.output;
  const auto j = nlohmann::json::parse(r.output);
  EXPECT_EQ(j["verdicts"][0]["outcome"], "violated");
  EXPECT_EQ(j["verdicts"][0]["evidence"]["non_blowup"], 1.0);
}

TEST_F(Cli, UnsupportedCriterionIsAnError) {
  const auto cfg = write_config("[synth]\nkind = self_similar\n[criteria]\nlist = log_corrected_sup\nt_star = 2\n");
  ASSERT_EQ(cli("synth --config " + cfg + " --out " + dir_.string()).code, 0);
  const auto r = cli("criteria --config " + cfg + " --series " + (dir_ / "series.csv").string());
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.output.find("alpha_linf"), std::string::npos) << r.output;
}

TEST_F(Cli, ZeroPresetIsRejected) {
  const auto cfg = write_config("[ic]\npreset = zero\n");
  const auto r = cli("simulate --config " + cfg + " --out " + dir_.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("zero"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "series.csv"));
}

TEST_F(Cli, ConfigErrorsAreCollected) {
  const auto cfg = write_config("[run]\nn = 12\np = 1\nbogus = 3\n");
  const auto r = cli("simulate --config " + cfg + " --out " + dir_.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("run.n"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("run.p"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("bogus"), std::string::npos) << r.output;
}

TEST_F(Cli, UnwritableOutputFailsBeforeComputing) {
  const auto blocker = dir_ / "file";
  std::ofstream(blocker) << "x";
  const auto r = cli("simulate --out " + (blocker / "sub").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("not writable"), std::string::npos) << r.output;
}

TEST_F(Cli, MissingSeriesPathIsReported) {
  const auto r = cli("criteria --series " + (dir_ / "missing.csv").string());
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.output.find("missing.csv"), std::string::npos);
}

TEST_F(Cli, VerifyUnknownSuiteListsAvailable) {
  const auto r = cli("verify identitys");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("identities"), std::string::npos);
  EXPECT_NE(r.output.find("determinism"), std::string::npos);
}

TEST_F(Cli, VerifyIdentitiesPasses) {
  const auto report = dir_ / "verify.json";
  const auto r = cli("verify identities --out " + report.string());
  EXPECT_EQ(r.code, 0) << r.output;
  const auto j = nlohmann::json::parse(slurp(report));
  ASSERT_FALSE(j.empty());
  for (const auto& c : j) EXPECT_TRUE(c["passed"].get<bool>()) << c["check"];
}

TEST_F(Cli, FitConstantsReport) {
  const auto cfg = write_config(small_run);
  const auto r = cli("fit-constants --config " + cfg);
  ASSERT_EQ(r.code, 0) << r.output;
  const auto j = nlohmann::json::parse(r.output);
  const auto& c = j["fitted_constants"];
  ASSERT_TRUE(c.contains("growth") && c.contains("K"));
  // K = 1/(2·a·growth) with a = (N+2)/(2k) = 2/3.
  EXPECT_NEAR(c["K"].get<double>(), 1.0 / (2.0 * (2.0 / 3.0) * c["growth"].get<double>()), 1e-12);
}
