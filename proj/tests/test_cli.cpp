#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "pwt/instance_io.hpp"

namespace fs = std::filesystem;

namespace {

int pwt(const std::string& args) {
  const std::string cmd = std::string(PWT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pwt_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string at(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, GenBatchWritesNumberedFiles) {
  ASSERT_EQ(pwt("gen --n 25 --seed 9 --instances 3 --out " + at("batch")), 0);
  for (int i = 0; i < 3; ++i) {
    const auto path = dir_ / "batch" / ("instance_25_9_" + std::to_string(i) + ".json");
    ASSERT_TRUE(fs::exists(path));
    EXPECT_EQ(pwt::load_instance(path.string()).size(), 25u);
  }
}

TEST_F(Cli, RunAndParetoOnFiles) {
  ASSERT_EQ(pwt("gen --n 12 --seed 2 --out " + at("one.json")), 0);
  ASSERT_EQ(pwt("run --instances " + at("one.json") + " --algorithms rls_swap,semo --budget 5000 --out " +
                at("run.json")),
            0);
  const auto runs = nlohmann::json::parse(slurp(at("run.json")));
  ASSERT_EQ(runs.size(), 2u);
  EXPECT_EQ(runs[0].at("algorithm"), "rls_swap");
  EXPECT_TRUE(runs[0].at("hitTarget").get<bool>());
  ASSERT_EQ(pwt("pareto --instances " + at("one.json") + " --out " + at("front.json")), 0);
  const auto front = nlohmann::json::parse(slurp(at("front.json")));
  EXPECT_EQ(front[0].at("front").size(), front[0].at("k").get<std::size_t>() + 1);
}

TEST_F(Cli, ExperimentsWriteCsv) {
  ASSERT_EQ(pwt("convergence --n 30 --instances 2 --budget 3000 --workers 2 --out " + at("c.csv")), 0);
  EXPECT_EQ(slurp(at("c.csv")).rfind("algorithm,evaluations,meanNormalizedBenefit,repetitions\n", 0), 0u);
  ASSERT_EQ(pwt("scaling --sizes 10,20 --instances 2 --algorithms rls_swap --out " + at("s.csv")), 0);
  const std::string csv = slurp(at("s.csv"));
  EXPECT_EQ(csv.rfind("algorithm,n,meanEvals,medianEvals,stddev,censoredCount,refN2,refNLogN\n", 0), 0u);
  EXPECT_NE(csv.find("rls_swap,20,"), std::string::npos);
}

TEST_F(Cli, VerifyPasses) { EXPECT_EQ(pwt("verify --instances 10 --out " + at("v.json")), 0); }

TEST_F(Cli, PreconditionViolationsExitNonzero) {
  EXPECT_NE(pwt(""), 0);
  EXPECT_NE(pwt("bogus"), 0);
  EXPECT_NE(pwt("verify --instances 0"), 0);
  EXPECT_NE(pwt("scaling --sizes 40,20"), 0);
  EXPECT_NE(pwt("run --algorithms nope"), 0);
  EXPECT_NE(pwt("run --budget 0"), 0);
  EXPECT_NE(pwt("convergence --init sideways"), 0);
  EXPECT_NE(pwt("convergence --counting sometimes"), 0);
  EXPECT_NE(pwt("convergence --instances /nonexistent/dir"), 0);
  EXPECT_NE(pwt("gen --n 0 --out " + at("x.json")), 0);
  EXPECT_NE(pwt("gen"), 0);
}

}  // namespace
