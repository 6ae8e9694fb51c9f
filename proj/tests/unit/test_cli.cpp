#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "seqmem/cli.hpp"
#include "seqmem/results.hpp"

using namespace seqmem;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "seqmem");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path fresh_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("seqmem_cli_" + name);
  fs::remove_all(d);
  return d;
}

std::vector<fs::path> files_in(const fs::path& d) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(d)) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Cli, CapacityRunsAreByteIdentical) {
  const auto a = fresh_dir("cap_a");
  const auto b = fresh_dir("cap_b");
  const std::vector<std::string> common = {"capacity", "--rule", "densenet", "--f", "poly:2",
                                           "--n", "60", "--kind", "transition", "--seed", "7",
                                           "--repeats", "2", "--sequences", "10"};
  auto args_a = common;
  args_a.insert(args_a.end(), {"--out", a.string(), "--threads", "1"});
  auto args_b = common;
  args_b.insert(args_b.end(), {"--out", b.string(), "--threads", "3"});
  ASSERT_EQ(run(args_a), 0);
  ASSERT_EQ(run(args_b), 0);
  const auto fa = files_in(a);
  const auto fb = files_in(b);
  ASSERT_EQ(fa.size(), 2U);
  for (std::size_t i = 0; i < fa.size(); ++i) EXPECT_EQ(slurp(fa[i]), slurp(fb[i]));

  const auto doc = Json::parse(slurp(fa[1]));
  EXPECT_EQ(doc["metadata"]["seed"], 7);
  EXPECT_EQ(doc["metadata"]["config"]["n"], "60");
  EXPECT_EQ(doc["metadata"]["version"], version_string());
  EXPECT_EQ(doc["result"]["capacities"].size(), 2U);
}

TEST(Cli, KindBothWritesTwoResults) {
  const auto d = fresh_dir("both");
  ASSERT_EQ(run({"capacity", "--n", "40", "--kind", "both", "--repeats", "1", "--sequences", "5",
                 "--out", d.string()}),
            0);
  int json = 0;
  for (const auto& f : files_in(d)) json += f.extension() == ".json";
  EXPECT_EQ(json, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"capacity", "--rule", "densenet"}), 2);
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(run({"capacity", "--n", "50", "--rule", "nonsense"}), 2);
  EXPECT_EQ(run({"capacity", "--n", "50", "--decay", "1.5"}), 2);
  EXPECT_EQ(run({"theory", "--formula", "unknown"}), 2);
  EXPECT_EQ(run({"capacity", "--n", "50", "--config", "/nonexistent.cfg"}), 2);
}

TEST(Cli, ExperimentFailureExitCode) {
  EXPECT_EQ(run({"mnist", "--images", "/nonexistent/a", "--labels", "/nonexistent/b"}), 1);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto d = fresh_dir("cfg");
  fs::create_directories(d);
  const auto cfg = d / "run.cfg";
  std::ofstream(cfg) << "# crosstalk settings\nn = 30\np = 10\nsamples = 2000\nrule = densenet\nf = poly:3\n";
  const auto out = d / "out";
  ASSERT_EQ(run({"crosstalk", "--config", cfg.string(), "--f", "poly:2", "--out", out.string()}), 0);
  const auto files = files_in(out);
  ASSERT_EQ(files.size(), 2U);
  const auto doc = Json::parse(slurp(files[1]));
  EXPECT_EQ(doc["metadata"]["config"]["f"], "poly:2");
  EXPECT_EQ(doc["metadata"]["config"]["n"], "30");
  EXPECT_EQ(doc["result"]["n_samples"], 2000);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const auto d = fresh_dir("env");
  ::setenv("SEQMEM_OUTPUT_DIR", d.string().c_str(), 1);
  const int rc = run({"trace", "--rule", "densenet", "--n", "50", "--p", "10"});
  ::unsetenv("SEQMEM_OUTPUT_DIR");
  ASSERT_EQ(rc, 0);
  EXPECT_EQ(files_in(d).size(), 2U);
}

TEST(Cli, TheoryPrintsJson) {
  testing::internal::CaptureStdout();
  ASSERT_EQ(run({"theory", "--formula", "poly_capacity", "--n", "300", "--d", "2", "--kind", "transition"}), 0);
  const auto doc = Json::parse(testing::internal::GetCapturedStdout());
  EXPECT_EQ(doc["formula_id"], "poly_capacity");
  EXPECT_NEAR(doc["value"].get<double>(), 2629.8338, 1e-3);
  EXPECT_EQ(doc["inputs"]["n"], 300.0);

  testing::internal::CaptureStdout();
  ASSERT_EQ(run({"theory", "--formula", "gamma", "--d_s", "2", "--d_a", "2", "--lambda", "2.5"}), 0);
  EXPECT_DOUBLE_EQ(Json::parse(testing::internal::GetCapturedStdout())["value"].get<double>(), 26.75);
}

TEST(Cli, BiasSweepWritesTable) {
  const auto d = fresh_dir("bias");
  ASSERT_EQ(run({"bias-sweep", "--n", "30", "--rules", "densenet:poly:2,gpi:poly:2", "--eps", "0,0.3",
                 "--repeats", "1", "--sequences", "5", "--p0", "60", "--out", d.string()}),
            0);
  const auto files = files_in(d);
  ASSERT_EQ(files.size(), 2U);
  const auto doc = Json::parse(slurp(files[1]));
  EXPECT_EQ(doc["result"].size(), 4U);
}
