/*
   Copyright 2026 The ffmds Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "ffmds/cli.hpp"

using namespace ffmds;

namespace {

struct CliRun {
  int rc;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "ffmds");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("ffmds-cli-" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(Tables, LfunPretty) {
  const CliRun r = run({"tables", "lfun", "--q", "5", "--n", "2", "--m", "t^2+t", "--format", "pretty"});
  EXPECT_EQ(r.rc, 0);
  EXPECT_EQ(r.out, "1 - x\n");
}

TEST(Tables, GaussIsSqrtFive) {
  const CliRun r = run({"tables", "gauss", "--q", "5", "--n", "2", "--m", "t"});
  ASSERT_EQ(r.rc, 0) << r.err;
  const auto ctx = make_cyc_ctx(20);
  const CycNum g = cyc_from_json(json::parse(r.out), ctx);
  EXPECT_EQ(g, sqrt_q(ctx, 5));
}

TEST(Tables, Z1ClosedForm) {
  const CliRun r = run({"tables", "z1", "--q", "5", "--n", "2", "--closed"});
  ASSERT_EQ(r.rc, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_TRUE(j.contains("num"));
  ASSERT_TRUE(j.contains("den"));
  // numerator 1 - 25xy
  EXPECT_EQ(j["num"].size(), 2u);
  const CliRun p = run({"tables", "z1", "--q", "5", "--n", "2", "--closed", "--format", "pretty"});
  EXPECT_EQ(p.out.rfind("(1 + -25*x*y) / (", 0), 0u) << p.out;
}

TEST(Tables, Z1GridCsvAndPretty) {
  const CliRun csv = run({"tables", "z1", "--q", "5", "--n", "2", "--jmax", "2", "--kmax", "2", "--format", "csv"});
  ASSERT_EQ(csv.rc, 0) << csv.err;
  EXPECT_NE(csv.out.find("j,k,value\n0,0,\"1\"\n0,1,\"5\""), std::string::npos) << csv.out;
  EXPECT_NE(csv.out.find("1,1,\"0\""), std::string::npos);
  const CliRun pretty = run({"tables", "z1", "--q", "5", "--n", "2", "--jmax", "2", "--kmax", "2", "--format", "pretty"});
  EXPECT_EQ(pretty.rc, 0);
  EXPECT_NE(pretty.out.find("j\\k"), std::string::npos);
}

TEST(Tables, PrimePartsNeedIrreducible) {
  EXPECT_EQ(run({"tables", "h1", "--q", "5", "--n", "2", "--p", "t^2+t"}).rc, 2);
  EXPECT_EQ(run({"tables", "h1", "--q", "5", "--n", "2"}).rc, 2);
  EXPECT_EQ(run({"tables", "h1", "--q", "5", "--n", "2", "--closed"}).rc, 0);
  const CliRun g = run({"tables", "h1", "--q", "5", "--n", "2", "--p", "t", "--jmax", "2", "--kmax", "2"});
  EXPECT_EQ(g.rc, 0) << g.err;
  EXPECT_EQ(json::parse(g.out)[0][0], json::parse(run({"tables", "gauss", "--q", "5", "--n", "2", "--m", "1"}).out));
}

TEST(Tables, ParseFailures) {
  EXPECT_EQ(run({"tables", "lfun", "--q", "5", "--n", "2", "--m", "t^2+x"}).rc, 2);
  EXPECT_EQ(run({"tables", "lfun", "--q", "5", "--n", "2"}).rc, 2);
  EXPECT_EQ(run({"tables", "lfun", "--q", "5", "--n", "2", "--m", "2*t"}).rc, 2);
  EXPECT_EQ(run({"tables", "bogus", "--q", "5", "--n", "2"}).rc, 2);
}

TEST(Verify, InvalidFieldsAreUsageErrors) {
  EXPECT_EQ(run({"verify", "--q", "6", "--n", "2"}).rc, 2);
  EXPECT_EQ(run({"verify", "--q", "7", "--n", "2"}).rc, 2);
  EXPECT_EQ(run({"verify", "--q", "5", "--n", "1"}).rc, 2);
  EXPECT_EQ(run({"verify", "--q", "5", "--n", "2", "--generator", "4"}).rc, 2);  // 4 has order 2
  EXPECT_EQ(run({"verify", "--q", "5", "--n", "2", "--generator", "0"}).rc, 2);
  EXPECT_EQ(run({"verify", "--q", "5", "--n", "2", "--suite", "nope"}).rc, 2);
  EXPECT_EQ(run({"verify", "--q", "5", "--n", "2", "--format", "xml"}).rc, 2);
  EXPECT_EQ(run({}).rc, 2);
}

TEST(Verify, Caps) {
  EXPECT_EQ(run({"verify", "--q", "5", "--n", "2", "--jmax", "7"}).rc, 2);
  EXPECT_EQ(run({"verify", "--q", "7", "--n", "3", "--jmax", "6", "--kmax", "6"}).rc, 2);
  // the degree-4 sweeps alone are too large at q = 13
  EXPECT_EQ(run({"verify", "--q", "13", "--n", "2", "--jmax", "1", "--kmax", "1"}).rc, 2);
  RunConfig c;
  c.jmax = 9;
  c.unsafe = true;
  EXPECT_NO_THROW(check_caps(c, true));
  c.unsafe = false;
  EXPECT_THROW(check_caps(c, true), UsageError);
  c.jmax = -1;
  c.unsafe = true;
  EXPECT_THROW(check_caps(c, true), UsageError);
}

TEST(Verify, HelpExitsZero) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.rc, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

TEST(Verify, SuiteReportShape) {
  const CliRun r = run({"verify", "--q", "5", "--n", "2", "--jmax", "3", "--kmax", "3", "--suite", "z1"});
  ASSERT_EQ(r.rc, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["run"]["q"], 5);
  ASSERT_FALSE(j["checks"].empty());
  for (const auto& c : j["checks"])
    for (const char* key : {"check", "paper_ref", "q", "n", "J", "K", "status", "lhs", "rhs"}) EXPECT_TRUE(c.contains(key)) << key;
}

TEST(Verify, DeterministicAndThreadIndependent) {
  const std::vector<std::string> base{"verify", "--q", "7", "--n", "3", "--jmax", "3", "--kmax", "3", "--suite", "z2"};
  auto with = [&](const char* threads) {
    auto a = base;
    a.insert(a.end(), {"--threads", threads});
    return run(a);
  };
  const CliRun a = with("1"), b = with("1"), c = with("3");
  EXPECT_EQ(a.rc, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(Verify, PrettyAndCsvReports) {
  const CliRun p = run({"verify", "--q", "5", "--n", "2", "--suite", "thm11", "--format", "pretty"});
  EXPECT_EQ(p.rc, 0);
  EXPECT_NE(p.out.find("2/2 checks passed"), std::string::npos) << p.out;
  const CliRun c = run({"verify", "--q", "5", "--n", "2", "--suite", "thm11", "--format", "csv"});
  EXPECT_EQ(c.out.rfind("check,paper_ref,q,n,J,K,status\n", 0), 0u);
}

TEST(Output, OutFlagAndEnvironment) {
  TempDir dir;
  const auto file = dir.path() / "r.json";
  const CliRun r = run({"verify", "--q", "5", "--n", "2", "--suite", "thm32", "--out", file.string()});
  EXPECT_EQ(r.rc, 0);
  EXPECT_EQ(json::parse(slurp(file))["status"], "pass");

  ::setenv("FFMDS_OUT", dir.path().c_str(), 1);
  const CliRun e = run({"verify", "--q", "5", "--n", "2", "--suite", "thm32"});
  ::unsetenv("FFMDS_OUT");
  EXPECT_EQ(e.rc, 0);
  const auto expected = dir.path() / "verify-q5-n2-thm32.json";
  EXPECT_TRUE(std::filesystem::exists(expected));
  EXPECT_EQ(slurp(expected), slurp(file));

  EXPECT_EQ(run({"verify", "--q", "5", "--n", "2", "--suite", "thm32", "--out", (dir.path() / "no/such/dir.json").string()}).rc, 2);
}
