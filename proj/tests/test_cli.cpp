#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gll/io.hpp"

#include "cli_app.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gll::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("gll_cli_test_" + name);
}

}  // namespace

TEST(Cli, BinomialGlr) {
  const auto r = run({"glr", "--model", "binomial", "--x", "9", "--n", "17", "--h1", "theta > 0.2", "--h2", "theta <= 0.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r.out);
  EXPECT_NEAR(j["glr"].get<double>(), 91.4704805171, 1e-8);
  EXPECT_EQ(j["strength"]["label"], "strong");
  EXPECT_EQ(j["manifest"]["command"], "glr");
  EXPECT_TRUE(j["manifest"].contains("duration_seconds"));
}

TEST(Cli, TwoBinomialComplement) {
  const auto r = run({"glr", "--model", "two-binomial", "--x1", "83", "--n1", "88", "--x2", "69", "--n2", "76", "--h1",
                      "delta > -0.1", "--complement"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(parse(r.out)["glr"].get<double>(), 137.947, 0.01);
}

TEST(Cli, ProfileCsvOnStdout) {
  const auto r = run({"profile", "--model", "binomial", "--x", "9", "--n", "17", "--grid", "0:1:11"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(r.out);
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "gamma,normalized_likelihood");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 11);
  EXPECT_EQ(parse(r.err)["rows"], 11);
}

TEST(Cli, ProfileToFile) {
  const auto path = temp_file("profile.csv");
  const auto r = run({"profile", "--model", "binomial", "--x", "9", "--n", "17", "--grid", "0.2:0.8:5", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse(r.out)["out"], path.string());
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "gamma,normalized_likelihood");
  std::filesystem::remove(path);
}

TEST(Cli, SupportSet) {
  const auto r = run({"support", "--model", "binomial", "--x", "9", "--n", "17", "--k", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r.out);
  EXPECT_NEAR(j["intervals"][0]["lower"].get<double>(), 0.29241, 1e-5);
  EXPECT_NEAR(j["intervals"][0]["upper"].get<double>(), 0.757495, 1e-5);
}

TEST(Cli, ReducedCommands) {
  auto r = run({"reduced", "test", "--alpha", "0.05", "--kind", "one-sided", "--result", "reject"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(parse(r.out)["glr"].get<double>(), 20.0);
  EXPECT_EQ(parse(r.out)["direction"], "H2");
  r = run({"reduced", "pvalue", "--u", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(parse(r.out)["glr"].get<double>(), 1.0);
}

TEST(Cli, SimulateRawOut) {
  const auto path = temp_file("raw.csv");
  const auto r = run({"simulate", "--scenario", "boundary", "--n", "200", "--replications", "200", "--seed", "3",
                      "--raw-out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r.out);
  EXPECT_EQ(j["count"], 200);
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "two_log_glr");
  std::filesystem::remove(path);
  // Same seed, same output apart from timing.
  auto again = parse(run({"simulate", "--scenario", "boundary", "--n", "200", "--replications", "200", "--seed", "3"}).out);
  EXPECT_EQ(again["quantiles"], j["quantiles"]);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"glr", "--model", "binomial", "--x", "9", "--n", "17", "--h1", "theta >> 2", "--complement"}).code, 2);
  EXPECT_EQ(run({"glr", "--model", "binomial", "--x", "9", "--n", "17", "--h1", "theta > 2", "--complement"}).code, 2);
  EXPECT_EQ(run({"glr", "--model", "binomial", "--x", "18", "--n", "17", "--h1", "theta > 0.2", "--complement"}).code, 2);
  EXPECT_EQ(run({"support", "--model", "binomial", "--x", "9", "--n", "17", "--k", "1"}).code, 2);
  EXPECT_EQ(run({"glr", "--model", "binomial", "--x", "9", "--n", "17", "--h1", "theta > 0.2", "--h2", "theta < 0.1",
                 "--complement"}).code, 2);
  EXPECT_EQ(run({"glr", "--model", "bivnorm-mean-diff", "--data", "/nonexistent.csv", "--h1", "gamma > 0",
                 "--complement"}).code, 2);
  const auto r = run({"glr", "--model", "binomial", "--x", "9", "--n", "17", "--h1", "theta >> 2", "--complement"});
  EXPECT_NE(r.err.find("parse error"), std::string::npos);
}

TEST(Cli, ConfigFromEnvironment) {
  const auto path = temp_file("config.json");
  {
    std::ofstream f(path);
    f << R"({"max_iters": 0})";
  }
  ::setenv("GLL_CONFIG", path.c_str(), 1);
  const auto bad = run({"glr", "--model", "binomial", "--x", "9", "--n", "17", "--h1", "theta > 0.2", "--complement"});
  {
    std::ofstream f(path);
    f << R"({"multistart_count": 4, "seed": 99})";
  }
  const auto ok = run({"glr", "--model", "binomial", "--x", "9", "--n", "17", "--h1", "theta > 0.2", "--complement"});
  ::unsetenv("GLL_CONFIG");
  std::filesystem::remove(path);
  EXPECT_EQ(bad.code, 2);
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(parse(ok.out)["manifest"]["seed"], 99);
}
