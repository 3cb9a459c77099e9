#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "wargraph/reports.hpp"

using wargraph::Json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = wargraph::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(WARGRAPH_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST(Cli, AnalyzeAbsorbing) {
  const auto r = run({"analyze", "--n", "6", "--rule", "standard", "--edges", "both", "--expect-absorbing"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["wandering"], 0);
  EXPECT_EQ(j["total_states"], 5040);
  EXPECT_EQ(j["audit"]["out_violations"], 0);
  EXPECT_EQ(j["audit"]["in_violations"], 0);
}

TEST(Cli, AnalyzeSeatLeftFailsClaim) {
  const auto r = run({"analyze", "--n", "6", "--edges", "seat-left", "--expect-absorbing"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(Json::parse(r.out)["wandering"], 1238);
}

TEST(Cli, ExpectedLengthTwoCards) {
  const auto r = run({"expected-length", "--n", "2", "--pl1", "0.5", "--pr1", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["mean_equal_split"], 1.0);
}

TEST(Cli, BadInputExitsOne) {
  EXPECT_EQ(run({"expected-length", "--n", "4", "--pl1", "1.5"}).code, 1);
  EXPECT_EQ(run({"expected-length", "--n", "4", "--pl1", "0"}).code, 1);
  EXPECT_EQ(run({"analyze", "--n", "14"}).code, 1);
  EXPECT_EQ(run({"analyze", "--n", "5"}).code, 1);
  EXPECT_EQ(run({"analyze", "--n", "4", "--bogus"}).code, 1);
  EXPECT_EQ(run({"no-such-command"}).code, 1);
  const auto r = run({"analyze", "--n", "14"});
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Cli, HelpIsSuccess) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, ReportsAreByteIdentical) {
  const std::vector<std::string> analyze{"analyze", "--n", "4", "--no-timing"};
  EXPECT_EQ(run(analyze).out, run(analyze).out);
  const std::vector<std::string> mc{"expected-length", "--n", "4", "--mc-trials", "2000", "--seed", "5"};
  EXPECT_EQ(run(mc).out, run(mc).out);
  const std::vector<std::string> classic{"mc-classic", "--trials", "50", "--seed", "5"};
  const auto a = run(classic);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, run(classic).out);
  EXPECT_EQ(a.out, run({"mc-classic", "--trials", "50", "--seed", "5", "--threads", "3"}).out);
}

TEST(Cli, ReportCarriesConfig) {
  const auto j = Json::parse(run({"expected-length", "--n", "4", "--pl1", "0.25"}).out);
  ASSERT_TRUE(j.contains("config"));
  EXPECT_EQ(j["probs"]["pL1"], 0.25);
}

TEST(Cli, TailCurveCsv) {
  const auto r = run({"tail-curve", "--n", "4", "--ks", "0,1,2,3", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "k,p_alive");
  EXPECT_NE(r.out.find("\n0,1\n"), std::string::npos);
}

TEST(Cli, DecayCertificate) {
  const auto r = run({"decay-cert", "--n", "4", "--horizon", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["holds"], true);
}

TEST(Cli, CycleCertificatesRoundTrip) {
  const auto found = run({"find-cycle", "--n", "6", "--policy", "seat-left", "--expect-cycle", "--limit", "3"});
  ASSERT_EQ(found.code, 0) << found.err;
  const auto path = std::filesystem::temp_directory_path() / "wargraph_cli_certs.json";
  {
    std::ofstream f(path);
    f << found.out;
  }
  const auto checked = run({"verify-cycle", "--cert", path.string()});
  EXPECT_EQ(checked.code, 0) << checked.err;
  std::filesystem::remove(path);

  EXPECT_EQ(run({"verify-cycle", "--cert", fixture("model_cycle_n6_seat_left.json")}).code, 0);
  EXPECT_EQ(run({"find-cycle", "--n", "6", "--policy", "own-first", "--expect-cycle"}).code, 2);
}

TEST(Cli, TamperedCertificateFails) {
  auto j = Json::parse(std::ifstream(fixture("model_cycle_n6_seat_left.json")));
  j["period"] = 13;
  const auto path = std::filesystem::temp_directory_path() / "wargraph_cli_bad_cert.json";
  {
    std::ofstream f(path);
    f << j.dump();
  }
  EXPECT_EQ(run({"verify-cycle", "--cert", path.string()}).code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, TwoOutcome) {
  EXPECT_EQ(run({"two-outcome", "--n", "4", "--rule", "cyclic", "--expect-found"}).code, 0);
  EXPECT_EQ(run({"two-outcome", "--n", "4", "--rule", "standard", "--expect-found"}).code, 2);
}

TEST(Cli, ClassicDealFile) {
  const auto r = run({"verify-deal", "--deal-file", fixture("classic_cycle_52.txt"), "--policy", "seat-left"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["ok"], true);
  EXPECT_EQ(j["period_in_values"], 26);

  const auto sim = run({"simulate-classic", "--seed", "4"});
  ASSERT_EQ(sim.code, 0) << sim.err;
  EXPECT_EQ(sim.out, run({"simulate-classic", "--seed", "4"}).out);
  EXPECT_EQ(run({"simulate-classic", "--deal", "L: AH ; R: KH"}).code, 1);
}
