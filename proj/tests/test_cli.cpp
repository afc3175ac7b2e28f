#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

using namespace pargrade::cli;

struct Result {
  int code;
  std::string out, err;
};

Result run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "pargrade");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct GoldenCase {
  std::string name, args;
};

std::vector<GoldenCase> golden_cases() {
  std::ifstream in(std::string(PARGRADE_GOLDEN_DIR) + "/cases.txt");
  std::vector<GoldenCase> out;
  for (std::string line; std::getline(in, line);) {
    const auto bar = line.find('|');
    if (bar == std::string::npos) continue;
    out.push_back({line.substr(0, bar), line.substr(bar + 1)});
  }
  return out;
}

TEST(Cli, GoldenOutputs) {
  const auto cases = golden_cases();
  ASSERT_FALSE(cases.empty());
  for (const auto& c : cases) {
    const auto r = run_args(split(c.args));
    EXPECT_EQ(r.code, kExitOk) << c.name << ": " << r.err;
    EXPECT_EQ(r.out, read_file(std::string(PARGRADE_GOLDEN_DIR) + "/" + c.name + ".txt")) << c.name;
  }
}

TEST(Cli, OutputIsDeterministic) {
  for (const auto& c : golden_cases()) {
    const auto a = run_args(split(c.args));
    const auto b = run_args(split(c.args));
    EXPECT_EQ(a.out, b.out) << c.name;
  }
}

TEST(Cli, ParseErrorsExitTwo) {
  EXPECT_EQ(run_args({}).code, kExitParseError);
  EXPECT_EQ(run_args({"bogus"}).code, kExitParseError);
  EXPECT_EQ(run_args({"orbits", "--type", "so", "--n", "4"}).code, kExitParseError);
  EXPECT_EQ(run_args({"orbits", "--type", "sl"}).code, kExitParseError);
  EXPECT_EQ(run_args({"grading", "--type", "sl", "--d", "2", "--cochar", "1,x", "--degree", "1"}).code,
            kExitParseError);
  EXPECT_EQ(run_args({"triple", "--type", "sl", "--d", "2", "--cochar", "1,-1", "--degree", "2", "--x", "0,1;0"}).code,
            kExitParseError);
  EXPECT_EQ(run_args({"stalks", "--char", "0"}).code, kExitParseError);
  EXPECT_EQ(run_args({"fibers", "--case", "sp4", "--case-file", "x.json", "--primes", "3"}).code, kExitParseError);
}

TEST(Cli, DomainErrorsExitOne) {
  const auto r = run_args({"stalks", "--case", "sp4", "--char", "2"});
  EXPECT_EQ(r.code, kExitDomainError);
  EXPECT_NE(r.err.find("ExcludedCharacteristic"), std::string::npos);
  EXPECT_EQ(run_args({"graded-orbits", "--cochar", "1,0,0,0", "--degree", "1"}).code, kExitDomainError);
  EXPECT_EQ(run_args({"fibers", "--case", "sp4", "--primes", "17"}).code, kExitDomainError);
}

TEST(Cli, MismatchExitsThree) {
  const std::string path = ::testing::TempDir() + "pargrade_bad_case.json";
  std::string text = read_file(std::string(PARGRADE_DATA_DIR) + "/sl4.json");
  const std::string from = "\"full_fiber\": \"(pt)\"";
  const auto pos = text.find(from);
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, from.size(), "\"full_fiber\": \"(proj 1)\"");
  std::ofstream(path) << text;
  const auto r = run_args({"fibers", "--case-file", path, "--primes", "2"});
  EXPECT_EQ(r.code, kExitMismatch);
  EXPECT_NE(r.out.find("MISMATCH"), std::string::npos);
}

TEST(Cli, QuietSuppressesOutput) {
  const auto r = run_args({"--quiet", "fibers", "--case", "sl4", "--primes", "2"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, NegativeValuesAndEqualsSyntax) {
  const auto a = run_args({"grading", "--type", "sl", "--d", "4", "--cochar", "1,0,0,-1", "--degree", "-2"});
  const auto b = run_args({"grading", "--type", "sl", "--d", "4", "--cochar=1,0,0,-1", "--degree=-2"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("0,0,0,0;0,0,0,0;0,0,0,0;1,0,0,0"), std::string::npos);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run_args({"--help"}).code, kExitOk); }

}  // namespace
