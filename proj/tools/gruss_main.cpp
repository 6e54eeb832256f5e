#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gruss/matrix_io.hpp"
#include "gruss/runner.hpp"

namespace {

gruss::Vector read_vector_json(const std::string& path) {
  // vector files reuse the matrix schema with flat "re"/"im" arrays
  std::ifstream in(path);
  if (!in) throw gruss::InvalidConfig("cannot open vector file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("n") || !j.contains("re")) {
    throw gruss::InvalidConfig("vector JSON: expected {\"n\", \"re\"[, \"im\"]} in " + path);
  }
  const int n = j.at("n").get<int>();
  const auto& re = j.at("re");
  if (n < 1 || static_cast<int>(re.size()) != n) {
    throw gruss::InvalidConfig("vector JSON: re length does not match n");
  }
  gruss::Vector v(n);
  for (int i = 0; i < n; ++i) {
    double im = 0.0;
    if (j.contains("im")) im = j.at("im").at(static_cast<size_t>(i)).get<double>();
    v(i) = gruss::Complex(re.at(static_cast<size_t>(i)).get<double>(), im);
  }
  return v;
}

void add_common_flags(CLI::App* cmd, gruss::RunConfig& cfg) {
  cmd->add_option("--suite", cfg.suites, "suite ids or ALL")->delimiter(',');
  cmd->add_option("--dim", cfg.dim, "matrix dimension for random corpora (1..64)");
  cmd->add_option("--trials", cfg.trials, "trials per suite");
  cmd->add_option("--seed", cfg.seed, "base seed; trial i uses seed XOR i");
  cmd->add_option("--tol-psd", cfg.tol_psd, "PSD slack coefficient");
  cmd->add_option("--quad-atol", cfg.quad_atol, "quadrature absolute tolerance");
  cmd->add_option("--quad-rtol", cfg.quad_rtol, "quadrature relative tolerance");
  cmd->add_option("--weights", cfg.weights, "weight names (id,affine,pow2,pow3,exp)")
      ->delimiter(',');
  cmd->add_option("--out", cfg.out_path, "output path (default stdout)");
  cmd->add_option("--format", cfg.format, "json or csv");
  cmd->add_option("--workers", cfg.workers, "worker threads (0 = hardware)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator-mean and Gruss-type inequality verification toolkit"};
  app.require_subcommand(1);

  gruss::RunConfig run_cfg;
  std::string matrix_a, matrix_b, matrix_t, vector_x, run_replay_digest;
  CLI::App* run_cmd = app.add_subcommand("run", "run suites over a seeded corpus");
  add_common_flags(run_cmd, run_cfg);
  run_cmd->add_option("--matrix-a", matrix_a, "matrix JSON for A (single fixed trial)");
  run_cmd->add_option("--matrix-b", matrix_b, "matrix JSON for B");
  run_cmd->add_option("--matrix-t", matrix_t, "matrix JSON for T");
  run_cmd->add_option("--vector", vector_x, "vector JSON for the unit vector x");
  run_cmd->add_option("--replay", run_replay_digest,
                      "re-run one archived failure digest instead of a corpus");

  gruss::SweepConfig sweep_cfg;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "tabulate one inequality over a range");
  sweep_cmd->add_option("--ineq", sweep_cfg.id, "COR3, COR_GAMMA or EQ67");
  sweep_cmd->add_option("--lo", sweep_cfg.lo, "range start (> 0)");
  sweep_cmd->add_option("--hi", sweep_cfg.hi, "range end");
  sweep_cmd->add_option("--points", sweep_cfg.points, "number of log-spaced points");
  sweep_cmd->add_option("--out", sweep_cfg.out_path, "output path (default stdout)");

  gruss::CrossoverConfig cross_cfg;
  CLI::App* cross_cmd =
      app.add_subcommand("crossover", "locate the lhs6/lhs7 ordering crossovers");
  cross_cmd->add_option("--lo", cross_cfg.lo, "range start (> 0)");
  cross_cmd->add_option("--hi", cross_cfg.hi, "range end");
  cross_cmd->add_option("--grid", cross_cfg.grid_points, "grid points");
  cross_cmd->add_option("--tol", cross_cfg.bisect_tol, "bisection relative width");
  cross_cmd->add_option("--out", cross_cfg.out_path, "output path (default stdout)");

  gruss::RunConfig replay_cfg;
  std::string digest;
  CLI::App* replay_cmd = app.add_subcommand("replay", "re-run one archived trial verbosely");
  replay_cmd->add_option("digest", digest, "failure digest SUITE:seed:trial:dim")
      ->required();
  add_common_flags(replay_cmd, replay_cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : gruss::kExitUsage;
  }

  try {
    if (*run_cmd) {
      if (!run_replay_digest.empty()) {
        return gruss::replay(run_replay_digest, run_cfg, std::cerr);
      }
      if (!matrix_a.empty()) run_cfg.fixed_a = gruss::read_matrix_json(matrix_a);
      if (!matrix_b.empty()) run_cfg.fixed_b = gruss::read_matrix_json(matrix_b);
      if (!matrix_t.empty()) run_cfg.fixed_t = gruss::read_matrix_json(matrix_t);
      if (!vector_x.empty()) run_cfg.fixed_x = read_vector_json(vector_x);
      return gruss::run_suites(run_cfg, std::cerr);
    }
    if (*sweep_cmd) {
      return gruss::sweep(sweep_cfg, std::cerr);
    }
    if (*cross_cmd) {
      return gruss::crossover(cross_cfg, std::cerr);
    }
    if (*replay_cmd) {
      return gruss::replay(digest, replay_cfg, std::cerr);
    }
  } catch (const gruss::NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gruss::kExitNoConvergence;
  } catch (const gruss::InvalidConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gruss::kExitUsage;
  } catch (const gruss::DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gruss::kExitUsage;
  } catch (const gruss::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gruss::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gruss::kExitUsage;
  }
  return gruss::kExitUsage;
}
