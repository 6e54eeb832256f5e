#include "gruss/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace gruss {

using nlohmann::ordered_json;

namespace {

constexpr double kScalarLo = 1e-3;
constexpr double kScalarHi = 1e3;
constexpr double kTwoPi = 6.28318530717958647692;
// Spectrum for the THM13/GRUSS_OP corpora: (M-m)(N-n) <= 1.96 keeps the
// refined covariance bound inside its provably valid region.
constexpr double kCovSpectrumLo = 0.6;
constexpr double kCovSpectrumHi = 2.0;

const std::vector<double>& v_grid() {
  static const std::vector<double> g{0.0, 0.25, 0.5, 0.75, 1.0};
  return g;
}

const std::vector<double>& s_grid() {
  static const std::vector<double> g{0.1, 0.5, 1.0};
  return g;
}

double loguni(SplitMix64& rng, double lo, double hi) {
  return lo * std::exp(rng.uniform01() * std::log(hi / lo));
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct WeightSpec {
  const char* name;
  WeightKind kind;
  double exponent;
};

const std::vector<WeightSpec>& weight_specs() {
  static const std::vector<WeightSpec> specs{
      {"id", WeightKind::IDENTITY, 0.0},
      {"affine", WeightKind::AFFINE, 0.0},
      {"pow2", WeightKind::POWER, 2.0},
      {"pow3", WeightKind::POWER, 3.0},
      {"exp", WeightKind::EXP, 0.0},
  };
  return specs;
}

// Named weights instantiated on a domain; even powers are skipped on
// negative domains where they are not monotone.
std::vector<MonotoneWeight> weights_for(const std::vector<std::string>& names, double lo,
                                        double hi) {
  std::vector<MonotoneWeight> out;
  for (const std::string& name : names) {
    const WeightSpec* spec = nullptr;
    for (const auto& s : weight_specs()) {
      if (name == s.name) {
        spec = &s;
        break;
      }
    }
    if (spec == nullptr) {
      throw InvalidConfig("unknown weight name: " + name);
    }
    if (spec->kind == WeightKind::POWER && lo < 0.0 &&
        std::fmod(spec->exponent, 2.0) == 0.0) {
      continue;
    }
    out.emplace_back(spec->kind, lo, hi, spec->exponent);
  }
  if (out.empty()) {
    throw InvalidConfig("no usable weights for domain [" + fmt17(lo) + "," + fmt17(hi) + "]");
  }
  return out;
}

void absorb(TrialOutcome& o, const InequalityReport& r, bool verbose) {
  o.worst_margin = std::min(o.worst_margin, r.margin);
  o.gain_min = std::min(o.gain_min, r.refinement_gain);
  o.gain_sum += r.refinement_gain;
  o.gain_count += 1;
  o.qerr_max = std::max(o.qerr_max, r.quadrature_error);
  if (!r.holds && o.holds) {
    o.fail_params = r.inputs_digest;
  }
  o.holds = o.holds && r.holds;
  if (verbose) o.reports.push_back(r);
}

PositivePair make_pair_from_fixed(const RunConfig& cfg) {
  HermitianMatrix a(*cfg.fixed_a, 1e-10);
  HermitianMatrix b(*cfg.fixed_b, 1e-10);
  return PositivePair(std::move(a), std::move(b));
}

UnitVector unit_from_fixed_or_seed(const RunConfig& cfg, int dim, std::uint64_t seed) {
  if (cfg.fixed_x) {
    return UnitVector(*cfg.fixed_x);
  }
  return UnitVector(gen_unit_vector(dim, seed));
}

InequalityReport radius_checks(const Matrix& t, SplitMix64& rng) {
  const double omega = numerical_radius(t);
  const double nrm = operator_norm(t);
  const double tol_bracket = 1e-9 * (1.0 + nrm);
  const double lower = omega - 0.5 * nrm;
  const double upper = nrm - omega;

  const double mag = loguni(rng, 0.1, 10.0);
  const double ang = kTwoPi * rng.uniform01();
  const Complex alpha = std::polar(mag, ang);
  const double omega_scaled = numerical_radius(Matrix(alpha * t));
  const double dev_h = std::abs(omega_scaled - mag * omega);
  const double tol_h = 1e-9 * (1.0 + mag * omega);

  const int dim = static_cast<int>(t.rows());
  const Matrix u = gen_unitary(dim, rng.next_u64());
  SplitMix64 eig_rng(rng.next_u64());
  Vector eigs(dim);
  double target = 0.0;
  for (int i = 0; i < dim; ++i) {
    eigs(i) = eig_rng.complex_gaussian();
    target = std::max(target, std::abs(eigs(i)));
  }
  const Matrix normal = u * eigs.asDiagonal() * u.adjoint();
  const double omega_normal = numerical_radius(normal);
  const double dev_n = std::abs(omega_normal - target);
  const double tol_n = 1e-8 * (1.0 + target);

  InequalityReport rep;
  rep.suite_id = "RADIUS";
  rep.inputs_digest = "dim=" + std::to_string(dim);
  rep.tol = tol_bracket;
  rep.margin = std::min({lower, upper, tol_h - dev_h, tol_n - dev_n});
  rep.holds = lower >= -tol_bracket && upper >= -tol_bracket && dev_h <= tol_h && dev_n <= tol_n;
  rep.extras = {{"omega", omega},
                {"operator_norm", nrm},
                {"homogeneity_dev", dev_h},
                {"normal_dev", dev_n}};
  return rep;
}

}  // namespace

void RunConfig::validate() const {
  if (trials < 1) throw InvalidConfig("RunConfig: trials must be >= 1");
  if (dim < 1 || dim > 64) throw InvalidConfig("RunConfig: dim must lie in [1,64]");
  if (format != "json" && format != "csv") {
    throw InvalidConfig("RunConfig: format must be json or csv");
  }
  if (!(tol_psd > 0.0) || !(quad_atol > 0.0) || !(quad_rtol > 0.0)) {
    throw InvalidConfig("RunConfig: tolerances must be positive");
  }
  if (workers < 0) throw InvalidConfig("RunConfig: workers must be >= 0");
  if (suites.empty()) throw InvalidConfig("RunConfig: empty suite selection");
  if ((fixed_a.has_value()) != (fixed_b.has_value())) {
    throw InvalidConfig("RunConfig: matrix inputs A and B must be given together");
  }
}

QuadratureConfig RunConfig::quadrature() const {
  QuadratureConfig q;
  q.atol = quad_atol;
  q.rtol = quad_rtol;
  return q;
}

const std::vector<std::string>& all_suite_ids() {
  static const std::vector<std::string> ids{
      "GRUSS_BASE", "THM1",     "CHAIN",       "THM2",     "COR3",  "COR_GAMMA",
      "OP_HERON",   "OP_HEINZ_LOG", "OP_POWER_AG", "OP_POWER_HG", "OP_ENTROPY",
      "THM51",      "KITTANEH", "X3_REM11",    "LEMMA_Y1", "THM13", "GRUSS_OP",
      "RADIUS"};
  return ids;
}

TrialOutcome run_suite_trial(const std::string& suite, const RunConfig& cfg, int trial,
                             bool verbose) {
  const std::uint64_t tseed = cfg.seed ^ static_cast<std::uint64_t>(trial);
  SplitMix64 rng(tseed);
  const QuadratureConfig qcfg = cfg.quadrature();
  TrialOutcome out;

  auto scalar_pair = [&]() {
    const double a = loguni(rng, kScalarLo, kScalarHi);
    const double b = loguni(rng, kScalarLo, kScalarHi);
    return std::pair<double, double>(a, b);
  };

  auto generated_pair = [&](double lo_min, double ratio_max) {
    const std::uint64_t seed_a = rng.next_u64();
    const std::uint64_t seed_b = rng.next_u64();
    const double lo_a = loguni(rng, lo_min, 1.0);
    const double hi_a = lo_a * loguni(rng, 1.2, ratio_max);
    const double lo_b = loguni(rng, lo_min, 1.0);
    const double hi_b = lo_b * loguni(rng, 1.2, ratio_max);
    GeneratedPd a = gen_pd({cfg.dim, seed_a, lo_a, hi_a, false});
    GeneratedPd b = gen_pd({cfg.dim, seed_b, lo_b, hi_b, false});
    return PositivePair(std::move(a.matrix), std::move(b.matrix),
                        0.5 * std::min(lo_a, lo_b));
  };

  if (suite == "THM1") {
    const auto [a, b] = scalar_pair();
    for (const MonotoneWeight& w : weights_for(cfg.weights, 0.0, 1.0)) {
      for (double v : v_grid()) {
        absorb(out, check_scalar_refinement(ScalarSuite::THM1, a, b, v, w, qcfg), verbose);
      }
    }
  } else if (suite == "CHAIN") {
    const auto [a, b] = scalar_pair();
    for (const MonotoneWeight& w : weights_for(cfg.weights, 0.0, 1.0)) {
      absorb(out, check_scalar_refinement(ScalarSuite::CHAIN, a, b, 0.5, w, qcfg), verbose);
    }
  } else if (suite == "THM2") {
    const auto [a, b] = scalar_pair();
    for (const MonotoneWeight& w : weights_for(cfg.weights, 0.5, 1.0)) {
      absorb(out, check_scalar_refinement(ScalarSuite::THM2, a, b, 0.5, w, qcfg), verbose);
    }
  } else if (suite == "COR3" || suite == "COR_GAMMA") {
    const auto [a, b] = scalar_pair();
    const MonotoneWeight id(WeightKind::IDENTITY, 0.0, 1.0);
    const ScalarSuite s = suite == "COR3" ? ScalarSuite::COR3 : ScalarSuite::COR_GAMMA;
    absorb(out, check_scalar_refinement(s, a, b, 0.5, id, qcfg), verbose);
  } else if (suite == "GRUSS_BASE") {
    static const double domains[3][2] = {{0.0, 1.0}, {0.5, 1.0}, {-1.0, 0.0}};
    const auto& dom = domains[rng.next_u64() % 3];
    std::vector<std::string> names;
    for (const auto& s : weight_specs()) names.push_back(s.name);
    const auto cands = weights_for(names, dom[0], dom[1]);
    const MonotoneWeight& f = cands[rng.next_u64() % cands.size()];
    const MonotoneWeight& g = cands[rng.next_u64() % cands.size()];
    absorb(out, check_gruss_base(f, g, f.g_lo(), f.g_hi(), g.g_lo(), g.g_hi(), qcfg),
           verbose);
  } else if (suite == "OP_HERON" || suite == "OP_HEINZ_LOG" || suite == "OP_POWER_AG" ||
             suite == "OP_POWER_HG" || suite == "OP_ENTROPY") {
    OperatorSuite os;
    double wlo = 0.0, whi = 1.0;
    if (suite == "OP_HERON") {
      os = OperatorSuite::OP_HERON;
    } else if (suite == "OP_HEINZ_LOG") {
      os = OperatorSuite::OP_HEINZ_LOG;
      wlo = 0.5;
    } else if (suite == "OP_POWER_AG") {
      os = OperatorSuite::OP_POWER_AG;
    } else if (suite == "OP_POWER_HG") {
      os = OperatorSuite::OP_POWER_HG;
      wlo = -1.0;
      whi = 0.0;
    } else {
      os = OperatorSuite::OP_ENTROPY;
    }
    const PositivePair pair =
        cfg.fixed_a ? make_pair_from_fixed(cfg) : generated_pair(0.1, 50.0);
    const auto wl = weights_for(cfg.weights, wlo, whi);
    const MonotoneWeight& w = wl[static_cast<size_t>(trial) % wl.size()];
    const double v = v_grid()[static_cast<size_t>(trial) % v_grid().size()];
    const double s = s_grid()[static_cast<size_t>(trial) % s_grid().size()];
    absorb(out, check_operator_refinement(os, pair, {0.0, v}, w, s, qcfg, cfg.tol_psd),
           verbose);
  } else if (suite == "THM51") {
    const std::uint64_t seed_t = rng.next_u64();
    const double scale = loguni(rng, 0.25, 4.0);
    const Matrix t = cfg.fixed_t ? *cfg.fixed_t : gen_complex(cfg.dim, seed_t, scale);
    const UnitVector x =
        unit_from_fixed_or_seed(cfg, static_cast<int>(t.rows()), rng.next_u64());
    absorb(out, check_thm51(t, x), verbose);
  } else if (suite == "KITTANEH") {
    const std::uint64_t seed_t = rng.next_u64();
    const double scale = loguni(rng, 0.25, 4.0);
    const Matrix t = cfg.fixed_t ? *cfg.fixed_t : gen_complex(cfg.dim, seed_t, scale);
    std::vector<UnitVector> samples;
    if (cfg.fixed_x) {
      samples.emplace_back(*cfg.fixed_x);
    } else {
      for (int k = 0; k < 8; ++k) {
        samples.emplace_back(gen_unit_vector(static_cast<int>(t.rows()), rng.next_u64()));
      }
    }
    absorb(out, check_kittaneh_refinement(t, samples), verbose);
  } else if (suite == "X3_REM11") {
    if (cfg.fixed_a) {
      const HermitianMatrix a(*cfg.fixed_a, 1e-10);
      const HermitianMatrix b(*cfg.fixed_b, 1e-10);
      const UnitVector x = unit_from_fixed_or_seed(cfg, static_cast<int>(a.dim()),
                                                   rng.next_u64());
      absorb(out, check_x3_and_rem11(a, b, x), verbose);
    } else {
      const std::uint64_t seed_a = rng.next_u64();
      const std::uint64_t seed_b = rng.next_u64();
      GeneratedPd a = gen_pd({cfg.dim, seed_a, 0.25, 4.0, false});
      GeneratedPd b = gen_pd({cfg.dim, seed_b, 0.25, 4.0, false});
      const UnitVector x(gen_unit_vector(cfg.dim, rng.next_u64()));
      absorb(out, check_x3_and_rem11(a.matrix, b.matrix, x), verbose);
    }
  } else if (suite == "LEMMA_Y1") {
    const double a = loguni(rng, 1e-2, 1e2);
    const double b = loguni(rng, 1e-2, 1e2);
    const double c = loguni(rng, 1e-2, 1e2);
    const double d = loguni(rng, 1e-2, 1e2);
    absorb(out, lemma_y1(a, b, c, d), verbose);
  } else if (suite == "THM13" || suite == "GRUSS_OP") {
    HermitianMatrix a = [&] {
      if (cfg.fixed_a) return HermitianMatrix(*cfg.fixed_a, 1e-10);
      return gen_pd({cfg.dim, rng.next_u64(), kCovSpectrumLo, kCovSpectrumHi, false}).matrix;
    }();
    HermitianMatrix b = [&] {
      if (cfg.fixed_b) return HermitianMatrix(*cfg.fixed_b, 1e-10);
      return gen_pd({cfg.dim, rng.next_u64(), kCovSpectrumLo, kCovSpectrumHi, false}).matrix;
    }();
    // exact generated eigenvalue extremes, not loose envelopes
    const SpectralDecomposition ea = eigh(a);
    const SpectralDecomposition eb = eigh(b);
    SpectrumBounds bounds{ea.min_eigenvalue(), ea.max_eigenvalue(), eb.min_eigenvalue(),
                          eb.max_eigenvalue()};
    const UnitVector x =
        unit_from_fixed_or_seed(cfg, static_cast<int>(a.dim()), rng.next_u64());
    if (suite == "THM13") {
      absorb(out, check_thm13(a, b, bounds, x), verbose);
    } else {
      absorb(out, check_gruss_operator(a, b, bounds, x), verbose);
    }
  } else if (suite == "RADIUS") {
    const std::uint64_t seed_t = rng.next_u64();
    const double scale = loguni(rng, 0.25, 4.0);
    const Matrix t = cfg.fixed_t ? *cfg.fixed_t : gen_complex(cfg.dim, seed_t, scale);
    absorb(out, radius_checks(t, rng), verbose);
  } else {
    throw InvalidConfig("unknown suite: " + suite);
  }

  if (out.gain_count == 0) {
    out.gain_min = 0.0;
  }
  if (!std::isfinite(out.worst_margin)) {
    out.worst_margin = 0.0;
  }
  return out;
}

namespace {

std::string trial_digest(const std::string& suite, const RunConfig& cfg, int trial) {
  return suite + ":" + std::to_string(cfg.seed) + ":" + std::to_string(trial) + ":" +
         std::to_string(cfg.dim);
}

SuiteSummary summarize(const std::string& suite, const RunConfig& cfg,
                       const std::vector<TrialOutcome>& results, bool* any_noconv) {
  SuiteSummary s;
  s.id = suite;
  s.trials = static_cast<int>(results.size());
  double worst = std::numeric_limits<double>::infinity();
  double gain_min = std::numeric_limits<double>::infinity();
  double gain_sum = 0.0;
  long gain_count = 0;
  double qerr = 0.0;
  for (int i = 0; i < static_cast<int>(results.size()); ++i) {
    const TrialOutcome& o = results[static_cast<size_t>(i)];
    if (!o.error.empty()) {
      s.failures.push_back({trial_digest(suite, cfg, i), "error: " + o.error, 0.0, 0.0});
      if (o.error.rfind("NoConvergence", 0) == 0) *any_noconv = true;
      continue;
    }
    worst = std::min(worst, o.worst_margin);
    gain_min = std::min(gain_min, o.gain_min);
    gain_sum += o.gain_sum;
    gain_count += o.gain_count;
    qerr = std::max(qerr, o.qerr_max);
    if (!o.holds) {
      s.failures.push_back({trial_digest(suite, cfg, i), o.fail_params, o.worst_margin, 0.0});
    }
  }
  s.worst_margin = std::isfinite(worst) ? worst : 0.0;
  s.gain_min = std::isfinite(gain_min) ? gain_min : 0.0;
  s.gain_mean = gain_count > 0 ? gain_sum / static_cast<double>(gain_count) : 0.0;
  s.quad_error_max = qerr;
  return s;
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  j["suites"] = cfg.suites;
  j["dim"] = cfg.dim;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["tol_psd"] = cfg.tol_psd;
  j["quad_atol"] = cfg.quad_atol;
  j["quad_rtol"] = cfg.quad_rtol;
  j["weights"] = cfg.weights;
  j["format"] = cfg.format;
  return j;
}

ordered_json report_json(const InequalityReport& r) {
  ordered_json j;
  j["suite"] = r.suite_id;
  j["inputs"] = r.inputs_digest;
  j["holds"] = r.holds;
  j["margin"] = r.margin;
  j["tol"] = r.tol;
  j["refinement_gain"] = r.refinement_gain;
  j["quadrature_error"] = r.quadrature_error;
  if (r.loewner) {
    j["loewner"] = {{"min_eig_diff", r.loewner->min_eig_diff},
                    {"tol", r.loewner->tol},
                    {"holds", r.loewner->holds}};
  }
  ordered_json extras;
  for (const auto& [k, v] : r.extras) extras[k] = v;
  j["extras"] = std::move(extras);
  return j;
}

void write_output(const std::string& out_path, const std::string& payload,
                  std::ostream& log) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    throw InvalidConfig("cannot open output file: " + out_path);
  }
  f << payload;
  log << "wrote " << out_path << "\n";
}

}  // namespace

std::string run_report_json(const RunConfig& cfg, const std::vector<SuiteSummary>& suites) {
  ordered_json j;
  j["version"] = kArtifactVersion;
  j["prng"] = kPrngVersion;
  j["config"] = config_json(cfg);
  ordered_json arr = ordered_json::array();
  for (const SuiteSummary& s : suites) {
    ordered_json js;
    js["id"] = s.id;
    js["trials"] = s.trials;
    ordered_json fails = ordered_json::array();
    for (const FailureRecord& f : s.failures) {
      fails.push_back({{"digest", f.digest}, {"params", f.params}, {"margin", f.margin},
                       {"tol", f.tol}});
    }
    js["failures"] = std::move(fails);
    js["worst_margin"] = s.worst_margin;
    js["refinement_gain"] = {{"min", s.gain_min}, {"mean", s.gain_mean}};
    js["quadrature_error_max"] = s.quad_error_max;
    arr.push_back(std::move(js));
  }
  j["suites"] = std::move(arr);
  return j.dump(2) + "\n";
}

int run_suites(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  std::vector<std::string> selected;
  for (const std::string& s : cfg.suites) {
    if (s == "ALL") {
      selected = all_suite_ids();
      break;
    }
    if (std::find(all_suite_ids().begin(), all_suite_ids().end(), s) ==
        all_suite_ids().end()) {
      throw InvalidConfig("unknown suite: " + s);
    }
    selected.push_back(s);
  }

  const bool fixed_mode = cfg.fixed_a || cfg.fixed_t;
  const int trials = fixed_mode ? 1 : cfg.trials;
  int workers = cfg.workers > 0 ? cfg.workers
                                : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, trials);

  bool any_noconv = false;
  std::vector<SuiteSummary> summaries;
  std::ostringstream csv;
  if (cfg.format == "csv") {
    csv << "suite,trial,digest,holds,worst_margin,refinement_gain_min,quadrature_error_max\n";
  }

  for (const std::string& suite : selected) {
    std::vector<TrialOutcome> results(static_cast<size_t>(trials));
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= trials) break;
        try {
          results[static_cast<size_t>(i)] = run_suite_trial(suite, cfg, i, false);
        } catch (const NoConvergence& e) {
          results[static_cast<size_t>(i)].holds = false;
          results[static_cast<size_t>(i)].error = std::string("NoConvergence: ") + e.what();
        } catch (const Error& e) {
          results[static_cast<size_t>(i)].holds = false;
          results[static_cast<size_t>(i)].error = e.what();
        }
      }
    };
    if (workers == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<size_t>(workers));
      for (int k = 0; k < workers; ++k) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    SuiteSummary s = summarize(suite, cfg, results, &any_noconv);
    log << s.id << ": " << s.trials << " trials, " << s.failures.size()
        << " failures, worst margin " << fmt17(s.worst_margin) << "\n";
    if (cfg.format == "csv") {
      for (int i = 0; i < trials; ++i) {
        const TrialOutcome& o = results[static_cast<size_t>(i)];
        csv << suite << "," << i << "," << trial_digest(suite, cfg, i) << ","
            << (o.holds ? 1 : 0) << "," << fmt17(o.worst_margin) << ","
            << fmt17(std::isfinite(o.gain_min) ? o.gain_min : 0.0) << ","
            << fmt17(o.qerr_max) << "\n";
      }
    }
    summaries.push_back(std::move(s));
  }

  const std::string payload =
      cfg.format == "csv" ? csv.str() : run_report_json(cfg, summaries);
  write_output(cfg.out_path, payload, log);

  bool any_failure = false;
  for (const SuiteSummary& s : summaries) any_failure = any_failure || !s.failures.empty();
  if (any_noconv) return kExitNoConvergence;
  return any_failure ? kExitInequalityFailure : kExitOk;
}

int sweep(const SweepConfig& cfg, std::ostream& log) {
  if (!(cfg.lo > 0.0) || !(cfg.hi >= cfg.lo) || cfg.points < 1) {
    throw InvalidConfig("sweep: need 0 < lo <= hi and points >= 1");
  }
  std::vector<double> xs;
  if (cfg.lo == cfg.hi) {
    xs.push_back(cfg.lo);
  } else {
    const int n = std::max(cfg.points, 2);
    const double llo = std::log(cfg.lo), lhi = std::log(cfg.hi);
    for (int i = 0; i < n; ++i) {
      xs.push_back(std::exp(llo + (lhi - llo) * i / (n - 1)));
    }
  }

  std::ostringstream os;
  bool all_hold = true;
  const MonotoneWeight id(WeightKind::IDENTITY, 0.0, 1.0);
  if (cfg.id == "COR3" || cfg.id == "COR_GAMMA") {
    const ScalarSuite s = cfg.id == "COR3" ? ScalarSuite::COR3 : ScalarSuite::COR_GAMMA;
    os << "x,lhs,rhs,margin,refinement_gain\n";
    for (double x : xs) {
      const InequalityReport r = check_scalar_refinement(s, 1.0, x, 0.5, id);
      os << fmt17(x) << "," << fmt17(r.extra("lhs")) << "," << fmt17(r.extra("rhs")) << ","
         << fmt17(r.margin) << "," << fmt17(r.refinement_gain) << "\n";
      all_hold = all_hold && r.holds;
    }
  } else if (cfg.id == "EQ67") {
    os << "x,lhs6,lhs7,rhs,margin6,margin7,ordering\n";
    for (double x : xs) {
      const Eq67Record r = compare_eq6_eq7(x);
      os << fmt17(x) << "," << fmt17(r.lhs6) << "," << fmt17(r.lhs7) << "," << fmt17(r.rhs)
         << "," << fmt17(r.margin6) << "," << fmt17(r.margin7) << "," << r.ordering << "\n";
      all_hold = all_hold && r.holds;
    }
  } else {
    throw InvalidConfig("sweep: unknown inequality id " + cfg.id +
                        " (use COR3, COR_GAMMA or EQ67)");
  }
  write_output(cfg.out_path, os.str(), log);
  return all_hold ? kExitOk : kExitInequalityFailure;
}

CrossoverReport run_crossover(const CrossoverConfig& cfg) {
  CrossoverReport rep;
  rep.crossovers = find_ordering_crossovers(cfg.lo, cfg.hi, cfg.grid_points, cfg.bisect_tol);

  const double llo = std::log(cfg.lo), lhi = std::log(cfg.hi);
  double m6 = std::numeric_limits<double>::infinity();
  double m7 = std::numeric_limits<double>::infinity();
  bool claim_region_sampled = false;
  bool claim_region_flipped = true;  // lhs6 >= lhs7 everywhere above the claim?
  for (int i = 0; i < cfg.grid_points; ++i) {
    const double x = cfg.grid_points == 1
                         ? cfg.lo
                         : std::exp(llo + (lhi - llo) * i / (cfg.grid_points - 1));
    const Eq67Record r = compare_eq6_eq7(x);
    const double scale = 1.0 + std::abs(r.rhs);
    m6 = std::min(m6, r.margin6 / scale);
    m7 = std::min(m7, r.margin7 / scale);
    rep.eq6_holds = rep.eq6_holds && r.margin6 >= -1e-10 * scale;
    rep.eq7_holds = rep.eq7_holds && r.margin7 >= -1e-10 * scale;
    if (x > rep.claimed_threshold) {
      claim_region_sampled = true;
      if (r.lhs7 - r.lhs6 > 1e-13 * (1.0 + std::abs(r.lhs6))) {
        claim_region_flipped = false;
      }
    }
  }
  rep.eq6_worst_margin = std::isfinite(m6) ? m6 : 0.0;
  rep.eq7_worst_margin = std::isfinite(m7) ? m7 : 0.0;

  if (rep.crossovers.empty() || !claim_region_sampled) {
    rep.verdict = "UNDETERMINED";
  } else if (claim_region_flipped) {
    rep.verdict = "CONSISTENT";
  } else {
    rep.verdict = "INCONSISTENT";
  }
  return rep;
}

int crossover(const CrossoverConfig& cfg, std::ostream& log) {
  const CrossoverReport rep = run_crossover(cfg);
  ordered_json j;
  j["version"] = kArtifactVersion;
  j["range"] = {{"lo", cfg.lo}, {"hi", cfg.hi}};
  j["grid_points"] = cfg.grid_points;
  j["bisect_tol"] = cfg.bisect_tol;
  j["crossovers"] = rep.crossovers;
  j["claimed_threshold"] = rep.claimed_threshold;
  j["verdict"] = rep.verdict;
  j["eq6_holds"] = rep.eq6_holds;
  j["eq7_holds"] = rep.eq7_holds;
  j["eq6_worst_margin"] = rep.eq6_worst_margin;
  j["eq7_worst_margin"] = rep.eq7_worst_margin;
  write_output(cfg.out_path, j.dump(2) + "\n", log);
  return (rep.eq6_holds && rep.eq7_holds) ? kExitOk : kExitInequalityFailure;
}

int replay(const std::string& digest, RunConfig cfg, std::ostream& log) {
  std::vector<std::string> parts;
  std::string token;
  std::istringstream is(digest);
  while (std::getline(is, token, ':')) parts.push_back(token);
  if (parts.size() != 4) {
    throw InvalidConfig("replay: digest must be SUITE:seed:trial:dim, got " + digest);
  }
  const std::string suite = parts[0];
  int trial = 0;
  try {
    cfg.seed = std::stoull(parts[1]);
    trial = std::stoi(parts[2]);
    cfg.dim = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw InvalidConfig("replay: malformed digest fields in " + digest);
  }
  cfg.validate();
  if (std::find(all_suite_ids().begin(), all_suite_ids().end(), suite) ==
      all_suite_ids().end()) {
    throw InvalidConfig("replay: unknown suite " + suite);
  }

  const TrialOutcome out = run_suite_trial(suite, cfg, trial, true);
  ordered_json j;
  j["digest"] = digest;
  j["holds"] = out.holds;
  j["worst_margin"] = out.worst_margin;
  ordered_json arr = ordered_json::array();
  for (const InequalityReport& r : out.reports) arr.push_back(report_json(r));
  j["checks"] = std::move(arr);
  write_output(cfg.out_path, j.dump(2) + "\n", log);
  return out.holds ? kExitOk : kExitInequalityFailure;
}

}  // namespace gruss
