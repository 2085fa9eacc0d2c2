#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "cosetq/format.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cosetq::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, KostkaBoth) {
  const auto r = run({"kostka", "--k", "1", "--j", "0", "--m", "1:2", "--method", "both"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "fermionic: 1\nalternating: 1\nMATCH\n");
}

TEST(Cli, KostkaInvalid) {
  EXPECT_EQ(run({"kostka", "--k", "1", "--j", "3", "--m", "1:2"}).code, 2);
  EXPECT_EQ(run({"kostka", "--k", "2", "--j", "0", "--m", "1:two"}).code, 2);
  EXPECT_EQ(run({"kostka", "--k", "2", "--j", "0"}).code, 2);
}

TEST(Cli, KostkaJson) {
  const auto r = run({"kostka", "--k", "2", "--j", "1", "--m", "1:1", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["coeffs"], nlohmann::json::array({"1"}));
  EXPECT_EQ(j["order"], "inf");
}

TEST(Cli, KostkaNormalizations) {
  const auto rev = run({"kostka", "--k", "2", "--j", "0", "--m", "[2,0]"});
  const auto plain = run({"kostka", "--k", "2", "--j", "0", "--m", "[2,0]", "--plain-normalization"});
  EXPECT_EQ(rev.out, "1\n");
  EXPECT_EQ(plain.out, "q\n");
  EXPECT_EQ(run({"kostka", "--k", "2", "--j", "0", "--m", "[2,0]", "--reversed", "--plain-normalization"}).code, 2);
}

TEST(Cli, BranchingAll) {
  const auto r = run({"branching", "--i1", "0", "--k1", "1", "--i2", "0", "--k2", "1", "--j", "0", "--order", "7",
                      "--method", "all"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1 + q^2 + q^3 + 2q^4 + 2q^5 + 3q^6 + O(q^7)\nALL METHODS AGREE\n");
}

TEST(Cli, BranchingParityAndErrors) {
  const auto zero = run({"branching", "--i1", "0", "--k1", "1", "--i2", "0", "--k2", "1", "--j", "1"});
  EXPECT_EQ(zero.code, 0);
  EXPECT_EQ(zero.out, "0\n");
  EXPECT_EQ(run({"branching", "--i1", "3", "--k1", "2", "--i2", "0", "--k2", "1", "--j", "1"}).code, 2);
  EXPECT_EQ(run({"branching", "--i1", "0", "--k1", "1", "--i2", "0", "--k2", "1", "--j", "0", "--method", "x"}).code, 2);
  EXPECT_EQ(run({"branching", "--i1", "0", "--k1", "1", "--i2", "0", "--k2", "1", "--j", "0", "--order", "0"}).code, 2);
}

TEST(Cli, BranchingL0) {
  const std::vector<std::string> base{"branching", "--i1", "1", "--k1", "1", "--i2", "1", "--k2", "1", "--j", "0",
                                      "--order", "4", "--normalization", "l0"};
  EXPECT_EQ(run(base).out, "q^(1/2) * (1 + q + q^2 + q^3 + O(q^4))\n");
  auto json_args = base;
  json_args.insert(json_args.end(), {"--format", "json"});
  const auto s = cosetq::qseries_from_json(run(json_args).out);
  EXPECT_EQ(*s.leading_exponent(), cosetq::Rational(1, 2));
  EXPECT_EQ(*s.bound(), cosetq::Rational(9, 2));
}

TEST(Cli, Char) {
  const auto both = run({"char", "--i", "0", "--k", "1", "--weight", "0", "--order", "5", "--method", "both"});
  EXPECT_EQ(both.code, 0);
  EXPECT_EQ(both.out, "limit: 1 + q + 2q^2 + 3q^3 + 5q^4 + O(q^5)\nclassical: 1 + q + 2q^2 + 3q^3 + 5q^4 + O(q^5)\nMATCH\n");
  EXPECT_EQ(run({"char", "--i", "0", "--k", "1", "--weight", "1"}).out, "0\n");
  EXPECT_EQ(run({"char", "--i", "0", "--k", "1", "--weight", "2", "--order", "6"}).out,
            "q + q^2 + 2q^3 + 3q^4 + 5q^5 + O(q^6)\n");
  EXPECT_EQ(run({"char", "--i", "2", "--k", "1", "--weight", "0"}).code, 2);
}

TEST(Cli, GlobalOptionsBeforeOrAfterSubcommand) {
  const auto before = run({"--format", "latex", "--order", "3", "char", "--i", "0", "--k", "1", "--weight", "0"});
  const auto after = run({"char", "--i", "0", "--k", "1", "--weight", "0", "--format", "latex", "--order", "3"});
  EXPECT_EQ(before.out, "1 + q + 2q^{2} + O(q^{3})\n");
  EXPECT_EQ(after.out, before.out);
}

TEST(Cli, Csv) {
  EXPECT_EQ(run({"--format", "csv", "char", "--i", "0", "--k", "1", "--weight", "2", "--order", "3"}).out,
            "exponent,coefficient\n1,1\n2,1\nbound,3\n");
}

TEST(Cli, Verify) {
  const auto dir = std::filesystem::temp_directory_path() / "cosetq-cli-test";
  std::filesystem::create_directories(dir);
  const auto report = (dir / "report.json").string();
  const auto r = run({"verify", "--suite", "kostka", "--max-level", "3", "--order", "10", "--report", report});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  std::ifstream in(report);
  const auto j = nlohmann::json::parse(in);
  EXPECT_TRUE(j.is_array());
  EXPECT_GT(j.size(), 0u);
  EXPECT_EQ(j[0]["suite"], "kostka");
  std::filesystem::remove_all(dir);

  EXPECT_EQ(run({"verify", "--suite", "methods", "--max-level", "4"}).code, 0);
  EXPECT_EQ(run({"verify", "--suite", "unknown"}).code, 2);
}

TEST(Cli, HelpAndUsage) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(Cli, ConfigFileSuppliesDefaults) {
  const auto dir = std::filesystem::temp_directory_path() / "cosetq-cli-config";
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "cosetq.toml";
  std::ofstream(cfg) << "order = 4\nformat = \"latex\"\n";
  const auto r = run({"--config", cfg.string(), "char", "--i", "0", "--k", "1", "--weight", "0"});
  EXPECT_EQ(r.out, "1 + q + 2q^{2} + 3q^{3} + O(q^{4})\n");
  // flags win over the file
  EXPECT_EQ(run({"--config", cfg.string(), "--order", "2", "char", "--i", "0", "--k", "1", "--weight", "0"}).out,
            "1 + q + O(q^{2})\n");
  std::filesystem::remove_all(dir);
}

TEST(Cli, CacheDirectoryFromEnvironment) {
  const auto dir = std::filesystem::temp_directory_path() / "cosetq-cli-cache";
  std::filesystem::remove_all(dir);
  ::setenv("COSETQ_CACHE", dir.c_str(), 1);
  const auto r = run({"char", "--i", "2", "--k", "5", "--weight", "2", "--order", "5", "--cache-dir", "/nonexistent/ignored"});
  ::unsetenv("COSETQ_CACHE");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "L2_k5_a2_o5.json"));
  run({"char", "--i", "0", "--k", "1", "--weight", "0"});  // resets the global cache directory
  std::filesystem::remove_all(dir);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"branching", "--i1", "1", "--k1", "2", "--i2", "1", "--k2", "2", "--j", "2",
                                      "--method", "all", "--format", "json"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, JsonRoundTripOfEmittedSeries) {
  for (const auto& spec : std::vector<std::vector<std::string>>{
           {"branching", "--i1", "1", "--k1", "2", "--i2", "0", "--k2", "1", "--j", "1", "--normalization", "l0"},
           {"char", "--i", "1", "--k", "2", "--weight", "3"},
           {"kostka", "--k", "3", "--j", "1", "--m", "[1,1,1]"}}) {
    auto args = spec;
    args.insert(args.end(), {"--format", "json"});
    const auto r = run(args);
    ASSERT_EQ(r.code, 0);
    const std::string text = r.out.substr(0, r.out.size() - 1);
    EXPECT_EQ(cosetq::to_json(cosetq::qseries_from_json(text)), text);
  }
}
