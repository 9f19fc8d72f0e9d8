#include <gtest/gtest.h>

#include "cft/cli.hpp"

using namespace cft;
using cft::cli::RunConfig;

namespace {

std::string fact(const report::Json& check, const std::string& key) {
  return check["facts"].contains(key) ? check["facts"][key].get<std::string>() : "";
}

}  // namespace

TEST(Cli, ClassGroup) {
  const auto r = cli::cmd_compute("classgroup", RunConfig{});
  const auto j = r.to_json();
  EXPECT_EQ(j["result"]["invariants"], report::Json::parse("[4,4]"));
  EXPECT_EQ(j["result"]["order"], 16);
  EXPECT_EQ(j["schema_version"], report::kSchemaVersion);
  RunConfig c;
  c.n = 1;
  c.modulus = "[]";
  const auto t = cli::cmd_compute("classgroup", c).to_json();
  EXPECT_EQ(t["result"]["order"], 1);
  EXPECT_TRUE(t["result"]["invariants"].empty());
}

TEST(Cli, PairTau) {
  const auto j = cli::cmd_compute("pair-tau", RunConfig{}).to_json();
  // tau(2, (x-2)) = 2 and the generator of mu_4 in F_5 is 2 or 3.
  EXPECT_EQ(j["result"]["value"], "GF(5):[2]");
  const std::string g = j["result"]["generator"];
  EXPECT_EQ(j["result"]["dlog"], g == "GF(5):[2]" ? 1 : 3);
}

TEST(Cli, OtherComputeKinds) {
  const auto tate = cli::cmd_compute("pair-tate", RunConfig{}).to_json();
  EXPECT_NE(tate["result"]["dlog"], 0);
  const auto ate = cli::cmd_compute("pair-ate", RunConfig{}).to_json();
  EXPECT_EQ(ate["result"]["candidates"].size(), 4u);
  RunConfig c;
  c.places = "{(x), (x-1)}";
  const auto sel = cli::cmd_compute("selmer", c).to_json();
  EXPECT_EQ(sel["result"]["order"], 16);
  EXPECT_THROW(cli::cmd_compute("nope", RunConfig{}), cli::usage_error);
}

TEST(Cli, VerifyWeil) {
  RunConfig c;
  c.samples = 500;
  const auto r = cli::cmd_verify("weil", c);
  EXPECT_TRUE(r.pass());
  const auto j = r.to_json();
  EXPECT_EQ(j["checks"][0]["check"], "thm:weilrec");
  EXPECT_EQ(j["checks"][0]["samples"], 500);
}

TEST(Cli, VerifyKummerKernel) {
  const auto j = cli::cmd_verify("kummer-kernel", RunConfig{}).to_json();
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(fact(j["checks"][0], "degree"), "16");
}

TEST(Cli, ZeroSamplesIsVacuous) {
  RunConfig c;
  c.samples = 0;
  const auto r = cli::cmd_verify("all", c);
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(r.vacuous());
  EXPECT_TRUE(r.to_json()["vacuous"].get<bool>());
  EXPECT_EQ(r.checks.size(), cli::verify_suites().size() - 1);
}

TEST(Cli, ReportsAreDeterministic) {
  RunConfig c;
  c.seed = 42;
  c.samples = 20;
  for (const char* s : {"reciprocity", "lemma-ext", "adjoint"})
    EXPECT_EQ(cli::cmd_verify(s, c).to_json().dump(), cli::cmd_verify(s, c).to_json().dump()) << s;
}

TEST(Cli, EveryCheckCarriesATag) {
  RunConfig c;
  c.samples = 5;
  for (auto& chk : cli::cmd_verify("all", c).checks) EXPECT_NE(chk.check.find(':'), std::string::npos) << chk.check;
}

TEST(Cli, FailuresCarryReproduction) {
  report::Report r;
  r.command = "verify";
  r.kind = "weil";
  r.config = RunConfig{}.echo();
  CheckReport bad;
  bad.check = "thm:weilrec";
  bad.samples = 1;
  bad.fail("synthetic");
  r.checks.push_back(bad);
  const auto j = r.to_json();
  EXPECT_FALSE(j["pass"].get<bool>());
  EXPECT_EQ(j["checks"][0]["reproduce"], r.config);
}

TEST(Cli, ConfigValidation) {
  RunConfig c;
  c.n = 5;
  EXPECT_THROW(c.validate(), cli::usage_error);
  c.n = 4;
  c.field = "GF(6)";
  EXPECT_THROW(c.validate(), cli::usage_error);
  RunConfig d;
  d.merge_json(report::Json::parse(R"({"field": 7, "n": 3, "modulus": "[(x):1]", "samples": 3})"));
  EXPECT_EQ(d.field, "7");
  EXPECT_EQ(d.n, 3u);
  EXPECT_EQ(d.samples, 3u);
  EXPECT_NO_THROW(d.validate());
  EXPECT_THROW(d.merge_json(report::Json::parse(R"({"bogus": 1})")), cli::usage_error);
  EXPECT_THROW(d.merge_json(report::Json::parse(R"({"n": "four"})")), cli::usage_error);
}
