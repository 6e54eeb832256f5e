#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gruss/runner.hpp"

using namespace gruss;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/gruss_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("trial outcomes are pure functions of their inputs") {
  RunConfig cfg;
  cfg.trials = 3;
  cfg.dim = 3;
  cfg.seed = 42;
  for (const std::string& suite : all_suite_ids()) {
    const TrialOutcome a = run_suite_trial(suite, cfg, 1);
    const TrialOutcome b = run_suite_trial(suite, cfg, 1);
    CHECK(a.holds == b.holds);
    CHECK(a.worst_margin == b.worst_margin);
    CHECK(a.gain_sum == b.gain_sum);
    CHECK(a.qerr_max == b.qerr_max);
  }
}

TEST_CASE("run_suites produces a valid zero-failure report") {
  RunConfig cfg;
  cfg.suites = {"THM1", "LEMMA_Y1", "GRUSS_OP"};
  cfg.trials = 5;
  cfg.dim = 3;
  cfg.seed = 7;
  TempFile out("report.json");
  cfg.out_path = out.path;
  std::ostringstream log;
  const int rc = run_suites(cfg, log);
  CHECK(rc == kExitOk);
  const auto j = nlohmann::json::parse(slurp(out.path));
  CHECK(j.at("version") == "1.0.0");
  CHECK(j.at("prng") == "splitmix64-v1");
  CHECK(j.at("config").at("seed") == 7);
  CHECK(j.at("config").at("tol_psd") == 1e-9);
  REQUIRE(j.at("suites").size() == 3);
  for (const auto& s : j.at("suites")) {
    CHECK(s.at("trials") == 5);
    CHECK(s.at("failures").empty());
    CHECK(s.contains("worst_margin"));
    CHECK(s.at("refinement_gain").contains("min"));
    CHECK(s.at("refinement_gain").contains("mean"));
    CHECK(s.contains("quadrature_error_max"));
  }
}

TEST_CASE("identical configs give byte-identical reports across worker counts") {
  RunConfig cfg;
  cfg.suites = {"THM1", "OP_HERON", "THM13"};
  cfg.trials = 6;
  cfg.dim = 3;
  cfg.seed = 11;
  TempFile f1("det1.json"), f2("det2.json"), f3("det3.json");
  std::ostringstream log;
  cfg.out_path = f1.path;
  cfg.workers = 1;
  CHECK(run_suites(cfg, log) == kExitOk);
  cfg.out_path = f2.path;
  CHECK(run_suites(cfg, log) == kExitOk);
  cfg.out_path = f3.path;
  cfg.workers = 2;
  CHECK(run_suites(cfg, log) == kExitOk);
  const std::string r1 = slurp(f1.path);
  CHECK(!r1.empty());
  CHECK(r1 == slurp(f2.path));
  CHECK(r1 == slurp(f3.path));
}

TEST_CASE("csv format emits one row per trial") {
  RunConfig cfg;
  cfg.suites = {"COR3"};
  cfg.trials = 4;
  cfg.seed = 3;
  cfg.format = "csv";
  TempFile out("report.csv");
  cfg.out_path = out.path;
  std::ostringstream log;
  CHECK(run_suites(cfg, log) == kExitOk);
  const std::string text = slurp(out.path);
  int lines = 0;
  for (char c : text) lines += c == '\n';
  CHECK(lines == 5);  // header + 4 trials
  CHECK(text.rfind("suite,trial,digest,holds", 0) == 0);
}

TEST_CASE("unknown suite and invalid config are rejected") {
  RunConfig cfg;
  cfg.suites = {"NOSUCH"};
  std::ostringstream log;
  CHECK_THROWS_AS(run_suites(cfg, log), InvalidConfig);
  RunConfig bad;
  bad.trials = 0;
  CHECK_THROWS_AS(run_suites(bad, log), InvalidConfig);
  RunConfig badf;
  badf.format = "xml";
  CHECK_THROWS_AS(run_suites(badf, log), InvalidConfig);
}

TEST_CASE("replay reruns a digest verbosely") {
  RunConfig cfg;
  TempFile out("replay.json");
  cfg.out_path = out.path;
  std::ostringstream log;
  const int rc = replay("THM1:42:2:3", cfg, log);
  CHECK(rc == kExitOk);
  const auto j = nlohmann::json::parse(slurp(out.path));
  CHECK(j.at("digest") == "THM1:42:2:3");
  CHECK(j.at("holds") == true);
  CHECK(j.at("checks").size() > 0);
  CHECK_THROWS_AS(replay("nonsense", RunConfig{}, log), InvalidConfig);
}

TEST_CASE("sweep tabulates inequalities") {
  SweepConfig cfg;
  cfg.id = "COR3";
  cfg.lo = 0.01;
  cfg.hi = 100.0;
  cfg.points = 5;
  TempFile out("sweep.csv");
  cfg.out_path = out.path;
  std::ostringstream log;
  CHECK(sweep(cfg, log) == kExitOk);
  const std::string text = slurp(out.path);
  int lines = 0;
  for (char c : text) lines += c == '\n';
  CHECK(lines == 6);  // header + 5 points

  SweepConfig single;
  single.id = "EQ67";
  single.lo = single.hi = 2.0;
  single.points = 7;
  TempFile out2("sweep1.csv");
  single.out_path = out2.path;
  CHECK(sweep(single, log) == kExitOk);
  int lines2 = 0;
  for (char c : slurp(out2.path)) lines2 += c == '\n';
  CHECK(lines2 == 2);  // degenerate range: single row

  SweepConfig bad;
  bad.id = "NOSUCH";
  CHECK_THROWS_AS(sweep(bad, log), InvalidConfig);
}

TEST_CASE("crossover explorer verdicts") {
  CrossoverConfig narrow;
  narrow.lo = 2.0;
  narrow.hi = 10.0;
  narrow.grid_points = 32;
  const CrossoverReport r1 = run_crossover(narrow);
  CHECK(r1.crossovers.empty());
  CHECK(r1.verdict == "UNDETERMINED");
  CHECK(r1.eq6_holds);
  CHECK(r1.eq7_holds);

  CrossoverConfig full;
  full.lo = 1.0001;
  full.hi = 1e7;
  full.grid_points = 256;
  full.bisect_tol = 1e-11;
  const CrossoverReport r2 = run_crossover(full);
  REQUIRE(r2.crossovers.size() == 1);
  CHECK(std::abs(r2.crossovers[0] - 235929.9270844912) <= 1.0);
  CHECK(r2.claimed_threshold == 11288.0);
  // grid points between 11288 and the measured crossover still have
  // lhs7 > lhs6, so the claimed threshold is contradicted
  CHECK(r2.verdict == "INCONSISTENT");
  CHECK(r2.eq6_holds);
  CHECK(r2.eq7_holds);
}

TEST_CASE("fixed matrix inputs drive a single trial") {
  RunConfig cfg;
  cfg.suites = {"OP_HERON"};
  Matrix a = Matrix::Identity(2, 2);
  Matrix b = Matrix::Zero(2, 2);
  b(0, 0) = 4.0;
  b(1, 1) = 9.0;
  cfg.fixed_a = a;
  cfg.fixed_b = b;
  TempFile out("fixed.json");
  cfg.out_path = out.path;
  std::ostringstream log;
  CHECK(run_suites(cfg, log) == kExitOk);
  const auto j = nlohmann::json::parse(slurp(out.path));
  CHECK(j.at("suites").at(0).at("trials") == 1);
}
