#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gruss/covariance.hpp"
#include "gruss/random_instances.hpp"
#include "gruss/suites.hpp"

namespace gruss {

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr double kClaimedCrossover = 11288.0;

// Exit codes shared by the library runners and the CLI.
enum ExitCode : int {
  kExitOk = 0,
  kExitInequalityFailure = 1,
  kExitUsage = 2,
  kExitNoConvergence = 3,
};

struct RunConfig {
  std::vector<std::string> suites{"ALL"};
  int dim = 4;
  int trials = 100;
  std::uint64_t seed = 1;
  double tol_psd = 1e-9;   // coefficient of the scale-aware PSD slack
  double quad_atol = 1e-11;
  double quad_rtol = 1e-10;
  std::vector<std::string> weights{"id", "affine", "pow2", "pow3", "exp"};
  std::string out_path;          // empty writes to stdout
  std::string format = "json";   // "json" or "csv"
  int workers = 0;               // 0 = hardware concurrency; never embedded in reports

  // Optional fixed instances (from matrix JSON files); when set, the run is
  // a single deterministic trial on these inputs instead of a seeded corpus.
  std::optional<Matrix> fixed_a;
  std::optional<Matrix> fixed_b;
  std::optional<Matrix> fixed_t;
  std::optional<Vector> fixed_x;

  void validate() const;
  QuadratureConfig quadrature() const;
};

const std::vector<std::string>& all_suite_ids();

struct FailureRecord {
  std::string digest;   // SUITE:seed:trial:dim, replayable
  std::string params;   // inputs_digest of the worst failing sub-check
  double margin = 0.0;
  double tol = 0.0;
};

struct SuiteSummary {
  std::string id;
  int trials = 0;
  std::vector<FailureRecord> failures;
  double worst_margin = 0.0;
  double gain_min = 0.0;
  double gain_mean = 0.0;
  double quad_error_max = 0.0;
};

struct TrialOutcome {
  bool holds = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  double gain_min = std::numeric_limits<double>::infinity();
  double gain_sum = 0.0;
  long gain_count = 0;
  double qerr_max = 0.0;
  std::string fail_params;
  std::string error;  // non-empty when the trial threw
  std::vector<InequalityReport> reports;  // filled only when verbose
};

// One seeded trial of one suite; pure function of (suite, config, trial).
TrialOutcome run_suite_trial(const std::string& suite, const RunConfig& cfg, int trial,
                             bool verbose = false);

// Runs the selected suites over the seeded corpus, writes the report, and
// returns the exit status (0 iff zero failures).
int run_suites(const RunConfig& cfg, std::ostream& log);

struct SweepConfig {
  std::string id = "COR3";  // COR3 | COR_GAMMA | EQ67
  double lo = 0.01;
  double hi = 100.0;
  int points = 50;
  std::string out_path;
};

int sweep(const SweepConfig& cfg, std::ostream& log);

struct CrossoverConfig {
  double lo = 1.0001;
  double hi = 1e7;
  int grid_points = 512;
  double bisect_tol = 1e-10;
  std::string out_path;
};

struct CrossoverReport {
  std::vector<double> crossovers;
  double claimed_threshold = kClaimedCrossover;
  std::string verdict;  // CONSISTENT | INCONSISTENT | UNDETERMINED
  bool eq6_holds = true;
  bool eq7_holds = true;
  double eq6_worst_margin = 0.0;
  double eq7_worst_margin = 0.0;
};

CrossoverReport run_crossover(const CrossoverConfig& cfg);
int crossover(const CrossoverConfig& cfg, std::ostream& log);

// Re-runs the trial encoded in a failure digest (SUITE:seed:trial:dim) and
// prints every sub-check verbosely.
int replay(const std::string& digest, RunConfig cfg, std::ostream& log);

std::string run_report_json(const RunConfig& cfg, const std::vector<SuiteSummary>& suites);

}  // namespace gruss
