// Acceptance suite: every criterion prints one pass/fail line; the process
// exits with the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gruss/covariance.hpp"
#include "gruss/quadrature.hpp"
#include "gruss/random_instances.hpp"
#include "gruss/runner.hpp"
#include "gruss/suites.hpp"

using namespace gruss;

namespace {

int g_failures = 0;

void report(int id, const std::string& label, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, label.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double loguni(SplitMix64& rng, double lo, double hi) {
  return lo * std::exp(rng.uniform01() * std::log(hi / lo));
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::vector<MonotoneWeight> weights01() {
  std::vector<MonotoneWeight> w;
  w.emplace_back(WeightKind::IDENTITY, 0.0, 1.0);
  w.emplace_back(WeightKind::AFFINE, 0.0, 1.0);
  w.emplace_back(WeightKind::POWER, 0.0, 1.0, 2.0);
  w.emplace_back(WeightKind::POWER, 0.0, 1.0, 3.0);
  w.emplace_back(WeightKind::EXP, 0.0, 1.0);
  return w;
}

std::vector<MonotoneWeight> weights_half() {
  std::vector<MonotoneWeight> w;
  w.emplace_back(WeightKind::IDENTITY, 0.5, 1.0);
  w.emplace_back(WeightKind::AFFINE, 0.5, 1.0);
  w.emplace_back(WeightKind::POWER, 0.5, 1.0, 2.0);
  w.emplace_back(WeightKind::POWER, 0.5, 1.0, 3.0);
  w.emplace_back(WeightKind::EXP, 0.5, 1.0);
  return w;
}

std::vector<MonotoneWeight> weights_neg() {
  std::vector<MonotoneWeight> w;
  w.emplace_back(WeightKind::IDENTITY, -1.0, 0.0);
  w.emplace_back(WeightKind::AFFINE, -1.0, 0.0);
  w.emplace_back(WeightKind::POWER, -1.0, 0.0, 3.0);
  w.emplace_back(WeightKind::EXP, -1.0, 0.0);
  return w;
}

const std::vector<double>& vgrid() {
  static const std::vector<double> v{0.0, 0.25, 0.5, 0.75, 1.0};
  return v;
}

// ---------------------------------------------------------------- criterion 1
void criterion_scalar_sweep() {
  Timer timer;
  const int pairs = 100000;
  const auto w01 = weights01();
  const auto wh = weights_half();
  const MonotoneWeight id01(WeightKind::IDENTITY, 0.0, 1.0);
  long checks = 0, failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < pairs; ++i) {
    SplitMix64 rng(20250809ULL ^ static_cast<std::uint64_t>(i));
    const double a = loguni(rng, 1e-3, 1e3);
    const double b = loguni(rng, 1e-3, 1e3);
    for (const MonotoneWeight& g : w01) {
      for (double v : vgrid()) {
        const InequalityReport r = check_scalar_refinement(ScalarSuite::THM1, a, b, v, g);
        ++checks;
        failures += !r.holds;
        worst = std::min(worst, r.margin + r.tol);
      }
      const InequalityReport rc = check_scalar_refinement(ScalarSuite::CHAIN, a, b, 0.5, g);
      ++checks;
      failures += !rc.holds;
      worst = std::min(worst, rc.margin + rc.tol);
    }
    for (const MonotoneWeight& g : wh) {
      const InequalityReport r = check_scalar_refinement(ScalarSuite::THM2, a, b, 0.5, g);
      ++checks;
      failures += !r.holds;
      worst = std::min(worst, r.margin + r.tol);
    }
    const InequalityReport r3 = check_scalar_refinement(ScalarSuite::COR3, a, b, 0.5, id01);
    const InequalityReport r4 =
        check_scalar_refinement(ScalarSuite::COR_GAMMA, a, b, 0.5, id01);
    checks += 2;
    failures += !r3.holds + !r4.holds;
    worst = std::min({worst, r3.margin + r3.tol, r4.margin + r4.tol});
  }
  const double secs = timer.seconds();
  std::ostringstream detail;
  detail << pairs << " pairs, " << checks << " checks, " << failures
         << " failures, worst slack " << worst << ", " << secs << "s single-threaded";
  report(1, "scalar theorem sweep THM1/CHAIN/THM2/COR3/COR_GAMMA", failures == 0 && secs < 120.0,
         detail.str());
}

// ---------------------------------------------------------------- criterion 2
void criterion_thm1_closed_form() {
  const int pairs = 10000;
  const MonotoneWeight id01(WeightKind::IDENTITY, 0.0, 1.0);
  long failures = 0;
  double worst_dev = 0.0;
  for (int i = 0; i < pairs; ++i) {
    SplitMix64 rng(777000ULL ^ static_cast<std::uint64_t>(i));
    const double a = loguni(rng, 1e-3, 1e3);
    const double b = loguni(rng, 1e-3, 1e3);
    const double v = rng.uniform01();
    const InequalityReport r = check_scalar_refinement(ScalarSuite::THM1, a, b, v, id01);
    const double gm = scalar_mean(MeanKind::GEOM, a, b, {0.0, v});
    const double am = scalar_mean(MeanKind::ARITH, a, b, {0.0, v});
    const double dev = std::abs(r.refinement_gain - (am - gm) / 3.0);
    worst_dev = std::max(worst_dev, dev / (a + b));
    failures += dev > 1e-10 * (a + b);
  }
  std::ostringstream detail;
  detail << pairs << " pairs, " << failures << " deviations beyond 1e-10*(a+b), worst "
         << worst_dev << " relative";
  report(2, "THM1 quadrature matches the (am-gm)/3 closed form for g(t)=t", failures == 0,
         detail.str());
}

// ---------------------------------------------------------------- criterion 3
void criterion_operator_suites() {
  Timer timer;
  const auto w01 = weights01();
  const auto wh = weights_half();
  const auto wn = weights_neg();
  long checks = 0, failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int dim : {2, 3, 4, 8}) {
    for (int i = 0; i < 500; ++i) {
      SplitMix64 rng((0xD1A0000ULL + static_cast<std::uint64_t>(dim)) ^
                     static_cast<std::uint64_t>(i * 2654435761ULL));
      const std::uint64_t seed_a = rng.next_u64();
      const std::uint64_t seed_b = rng.next_u64();
      const double lo_a = loguni(rng, 0.1, 1.0);
      const double hi_a = lo_a * loguni(rng, 1.2, 50.0);
      const double lo_b = loguni(rng, 0.1, 1.0);
      const double hi_b = lo_b * loguni(rng, 1.2, 50.0);
      GeneratedPd ga = gen_pd({dim, seed_a, lo_a, hi_a, false});
      GeneratedPd gb = gen_pd({dim, seed_b, lo_b, hi_b, false});
      const PositivePair pair(std::move(ga.matrix), std::move(gb.matrix),
                              0.5 * std::min(lo_a, lo_b));
      const double v = vgrid()[static_cast<size_t>(i) % vgrid().size()];
      const MeanParams params{0.0, v};
      auto run = [&](const InequalityReport& r) {
        ++checks;
        failures += !r.holds;
        worst = std::min(worst, r.margin + r.tol);
      };
      run(check_operator_refinement(OperatorSuite::OP_HERON, pair, params,
                                    w01[static_cast<size_t>(i) % w01.size()]));
      run(check_operator_refinement(OperatorSuite::OP_HEINZ_LOG, pair, params,
                                    wh[static_cast<size_t>(i) % wh.size()]));
      run(check_operator_refinement(OperatorSuite::OP_POWER_AG, pair, params,
                                    w01[static_cast<size_t>(i + 1) % w01.size()]));
      run(check_operator_refinement(OperatorSuite::OP_POWER_HG, pair, params,
                                    wn[static_cast<size_t>(i) % wn.size()]));
      for (double s : {0.1, 0.5, 1.0}) {
        run(check_operator_refinement(OperatorSuite::OP_ENTROPY, pair, params,
                                      w01[0], s));
      }
    }
  }
  const double secs = timer.seconds();
  std::ostringstream detail;
  detail << "dims {2,3,4,8} x 500 pairs, " << checks << " checks, " << failures
         << " failures, worst slack " << worst << ", " << secs << "s";
  report(3, "operator suites OP_HERON/OP_HEINZ_LOG/OP_POWER_AG/OP_POWER_HG/OP_ENTROPY",
         failures == 0 && secs < 300.0, detail.str());
}

// ---------------------------------------------------------------- criterion 4
double scalar_power_ag_margin(double a, double b, double v, const MonotoneWeight& g) {
  auto m = [&](double t) { return scalar_mean(MeanKind::POWER, a, b, {t, v}); };
  const auto img = integrate([&](double t) { return m(t) * g(t); }, 0.0, 1.0);
  const auto im = integrate(m, 0.0, 1.0);
  const auto ig = integrate([&](double t) { return g(t); }, 0.0, 1.0);
  const double lhs = scalar_mean(MeanKind::GEOM, a, b, {0.0, v}) +
                     4.0 / g.gap() * (img.value - im.value * ig.value);
  return scalar_mean(MeanKind::ARITH, a, b, {0.0, v}) - lhs;
}

double scalar_power_hg_margin(double a, double b, double v, const MonotoneWeight& g) {
  auto m = [&](double t) { return scalar_mean(MeanKind::POWER, a, b, {t, v}); };
  const auto img = integrate([&](double t) { return m(t) * g(t); }, -1.0, 0.0);
  const auto im = integrate(m, -1.0, 0.0);
  const auto ig = integrate([&](double t) { return g(t); }, -1.0, 0.0);
  const double lhs = scalar_mean(MeanKind::HARM, a, b, {0.0, v}) +
                     4.0 / g.gap() * (img.value - im.value * ig.value);
  return scalar_mean(MeanKind::GEOM, a, b, {0.0, v}) - lhs;
}

double scalar_entropy_margin(double a, double b, double s) {
  const double x = b / a;
  const auto integral = integrate(
      [&](double t) { return (2.0 * t - 1.0) * a * deformed_log(s * t, x); }, 0.0, 1.0);
  const double lhs = a * std::log(x) + 2.0 * integral.value;
  return a * deformed_log(s, x) - lhs;
}

void criterion_commuting_reduction() {
  const MonotoneWeight id01(WeightKind::IDENTITY, 0.0, 1.0);
  const MonotoneWeight idh(WeightKind::IDENTITY, 0.5, 1.0);
  const MonotoneWeight idn(WeightKind::IDENTITY, -1.0, 0.0);
  long failures = 0;
  double worst_rel = 0.0;
  for (int suite = 0; suite < 5; ++suite) {
    for (int i = 0; i < 200; ++i) {
      SplitMix64 rng((0xC0117ULL + static_cast<std::uint64_t>(suite)) ^
                     static_cast<std::uint64_t>(i * 97003ULL));
      const int dim = 2 + static_cast<int>(rng.next_u64() % 4);
      const std::uint64_t seed = rng.next_u64();
      InstanceConfig ca;
      ca.dim = dim;
      ca.seed = seed;
      ca.spectrum_lo = loguni(rng, 0.2, 0.8);
      ca.spectrum_hi = ca.spectrum_lo * loguni(rng, 1.5, 20.0);
      InstanceConfig cb = ca;
      cb.seed = seed ^ 0x5a5a5a5aULL;
      cb.spectrum_lo = loguni(rng, 0.2, 0.8);
      cb.spectrum_hi = cb.spectrum_lo * loguni(rng, 1.5, 20.0);
      const GeneratedCommutingPair cp = gen_commuting_pair(ca, cb);
      const double v = vgrid()[static_cast<size_t>(i) % vgrid().size()];
      const double s = (i % 3 == 0) ? 0.1 : (i % 3 == 1 ? 0.5 : 1.0);

      InequalityReport rop;
      std::vector<double> scalar_margins(static_cast<size_t>(dim));
      switch (suite) {
        case 0:
          rop = check_operator_refinement(OperatorSuite::OP_HERON, cp.pair, {0.0, v}, id01);
          for (int k = 0; k < dim; ++k) {
            scalar_margins[static_cast<size_t>(k)] =
                check_scalar_refinement(ScalarSuite::THM1, cp.eigenvalues_a(k),
                                        cp.eigenvalues_b(k), v, id01)
                    .margin;
          }
          break;
        case 1:
          rop = check_operator_refinement(OperatorSuite::OP_HEINZ_LOG, cp.pair, {0.0, 0.5},
                                          idh);
          for (int k = 0; k < dim; ++k) {
            scalar_margins[static_cast<size_t>(k)] =
                check_scalar_refinement(ScalarSuite::THM2, cp.eigenvalues_a(k),
                                        cp.eigenvalues_b(k), 0.5, idh)
                    .margin;
          }
          break;
        case 2:
          rop = check_operator_refinement(OperatorSuite::OP_POWER_AG, cp.pair, {0.0, v}, id01);
          for (int k = 0; k < dim; ++k) {
            scalar_margins[static_cast<size_t>(k)] = scalar_power_ag_margin(
                cp.eigenvalues_a(k), cp.eigenvalues_b(k), v, id01);
          }
          break;
        case 3:
          rop = check_operator_refinement(OperatorSuite::OP_POWER_HG, cp.pair, {0.0, v}, idn);
          for (int k = 0; k < dim; ++k) {
            scalar_margins[static_cast<size_t>(k)] = scalar_power_hg_margin(
                cp.eigenvalues_a(k), cp.eigenvalues_b(k), v, idn);
          }
          break;
        default:
          rop = check_operator_refinement(OperatorSuite::OP_ENTROPY, cp.pair, {0.0, v}, id01,
                                          s);
          for (int k = 0; k < dim; ++k) {
            scalar_margins[static_cast<size_t>(k)] =
                scalar_entropy_margin(cp.eigenvalues_a(k), cp.eigenvalues_b(k), s);
          }
          break;
      }
      std::sort(scalar_margins.begin(), scalar_margins.end());
      const double scale =
          1.0 + rop.extra("lhs_norm") + rop.extra("rhs_norm");
      for (int k = 0; k < dim; ++k) {
        const double op_eig = rop.extra("margin_eig_" + std::to_string(k));
        const double dev = std::abs(op_eig - scalar_margins[static_cast<size_t>(k)]);
        worst_rel = std::max(worst_rel, dev / scale);
        failures += dev > 1e-9 * scale;
      }
    }
  }
  std::ostringstream detail;
  detail << "5 suites x 200 commuting pairs, " << failures
         << " eigenvalue-wise deviations beyond 1e-9*norms, worst " << worst_rel
         << " relative";
  report(4, "commuting pairs reduce operator margins to scalar margins", failures == 0,
         detail.str());
}

// ---------------------------------------------------------------- criterion 5
void criterion_section4_sweep() {
  Timer timer;
  long failures = 0;
  // 1e4 (T, x) triples for check_thm51
  for (int i = 0; i < 10000; ++i) {
    SplitMix64 rng(0x51515151ULL ^ static_cast<std::uint64_t>(i));
    const int dim = 2 + static_cast<int>(rng.next_u64() % 5);
    const Matrix t = gen_complex(dim, rng.next_u64(), loguni(rng, 0.25, 4.0));
    const UnitVector x(gen_unit_vector(dim, rng.next_u64()));
    failures += !check_thm51(t, x).holds;
  }
  // 1e4 (T, x) pairs for the pointwise Kittaneh certificate: 100 T x 100 x
  for (int i = 0; i < 100; ++i) {
    SplitMix64 rng(0x717171ULL ^ static_cast<std::uint64_t>(i * 31ULL));
    const int dim = 2 + static_cast<int>(rng.next_u64() % 5);
    const Matrix t = gen_complex(dim, rng.next_u64(), loguni(rng, 0.25, 4.0));
    std::vector<UnitVector> xs;
    for (int k = 0; k < 100; ++k) xs.emplace_back(gen_unit_vector(dim, rng.next_u64()));
    failures += !check_kittaneh_refinement(t, xs).holds;
  }
  // 1e4 (A, B, x) for x3 + rem11
  for (int i = 0; i < 10000; ++i) {
    SplitMix64 rng(0x3333ULL ^ static_cast<std::uint64_t>(i * 17ULL));
    const int dim = 2 + static_cast<int>(rng.next_u64() % 5);
    GeneratedPd a = gen_pd({dim, rng.next_u64(), 0.25, 4.0, false});
    GeneratedPd b = gen_pd({dim, rng.next_u64(), 0.25, 4.0, false});
    const UnitVector x(gen_unit_vector(dim, rng.next_u64()));
    failures += !check_x3_and_rem11(a.matrix, b.matrix, x).holds;
  }
  // 1e5 quadruples for Lemma y1
  for (int i = 0; i < 100000; ++i) {
    SplitMix64 rng(0x1111ULL ^ static_cast<std::uint64_t>(i * 13ULL));
    failures += !lemma_y1(loguni(rng, 1e-2, 1e2), loguni(rng, 1e-2, 1e2),
                          loguni(rng, 1e-2, 1e2), loguni(rng, 1e-2, 1e2))
                     .holds;
  }
  // 1e4 instances for Theorem 13 and the operator Gruss remark, exact bounds
  for (int i = 0; i < 10000; ++i) {
    SplitMix64 rng(0x1313ULL ^ static_cast<std::uint64_t>(i * 29ULL));
    const int dim = 2 + static_cast<int>(rng.next_u64() % 7);
    GeneratedPd a = gen_pd({dim, rng.next_u64(), 0.6, 2.0, false});
    GeneratedPd b = gen_pd({dim, rng.next_u64(), 0.6, 2.0, false});
    const SpectralDecomposition ea = eigh(a.matrix);
    const SpectralDecomposition eb = eigh(b.matrix);
    const SpectrumBounds bounds{ea.min_eigenvalue(), ea.max_eigenvalue(),
                                eb.min_eigenvalue(), eb.max_eigenvalue()};
    const UnitVector x(gen_unit_vector(dim, rng.next_u64()));
    failures += !check_thm13(a.matrix, b.matrix, bounds, x).holds;
    failures += !check_gruss_operator(a.matrix, b.matrix, bounds, x).holds;
  }
  std::ostringstream detail;
  detail << "thm51 1e4, kittaneh 1e4 pointwise, x3/rem11 1e4, lemma_y1 1e5, "
         << "thm13+gruss_op 1e4, " << failures << " failures, " << timer.seconds() << "s";
  report(5, "final-section covariance sweep", failures == 0, detail.str());
}

// ---------------------------------------------------------------- criterion 6
void criterion_numerical_radius() {
  Matrix shift = Matrix::Zero(2, 2);
  shift(0, 1) = 1.0;
  const double omega_shift = numerical_radius(shift);
  const bool shift_ok = std::abs(omega_shift - 0.5) <= 1e-8;

  long normal_failures = 0;
  double worst_normal = 0.0;
  for (int i = 0; i < 100; ++i) {
    SplitMix64 rng(0x6060ULL ^ static_cast<std::uint64_t>(i * 41ULL));
    const int dim = 2 + static_cast<int>(rng.next_u64() % 5);
    const Matrix u = gen_unitary(dim, rng.next_u64());
    Vector eigs(dim);
    for (int k = 0; k < dim; ++k) eigs(k) = rng.complex_gaussian();
    const Matrix normal = u * eigs.asDiagonal() * u.adjoint();
    const double dev = std::abs(numerical_radius(normal) - operator_norm(normal));
    worst_normal = std::max(worst_normal, dev);
    normal_failures += dev > 1e-8 * (1.0 + operator_norm(normal));
  }

  long scaling_failures = 0;
  double worst_scaling = 0.0;
  for (int i = 0; i < 50; ++i) {
    SplitMix64 rng(0x6161ULL ^ static_cast<std::uint64_t>(i * 43ULL));
    const int dim = 2 + static_cast<int>(rng.next_u64() % 4);
    const Matrix t = gen_complex(dim, rng.next_u64(), loguni(rng, 0.3, 3.0));
    const double omega = numerical_radius(t);
    const double mag = loguni(rng, 0.05, 20.0);
    const Complex alpha = std::polar(mag, 6.28318530717958647692 * rng.uniform01());
    const double omega_scaled = numerical_radius(Matrix(alpha * t));
    const double rel = std::abs(omega_scaled - mag * omega) / (1.0 + mag * omega);
    worst_scaling = std::max(worst_scaling, rel);
    scaling_failures += rel > 1e-9;
  }
  std::ostringstream detail;
  detail << "omega(shift)=" << omega_shift << ", normal dev max " << worst_normal
         << " (100 cases), homogeneity rel dev max " << worst_scaling << " (50 cases)";
  report(6, "numerical radius: shift value, normal equality, homogeneity",
         shift_ok && normal_failures == 0 && scaling_failures == 0, detail.str());
}

// ---------------------------------------------------------------- criterion 7
void criterion_crossover() {
  CrossoverConfig cfg;
  cfg.lo = 1.0001;
  cfg.hi = 1e7;
  cfg.grid_points = 512;
  cfg.bisect_tol = 1e-11;
  const CrossoverReport rep = run_crossover(cfg);
  std::ostringstream detail;
  detail << "eq6 worst rel margin " << rep.eq6_worst_margin << ", eq7 worst rel margin "
         << rep.eq7_worst_margin << ", measured crossovers [";
  for (size_t i = 0; i < rep.crossovers.size(); ++i) {
    detail << (i ? ", " : "") << rep.crossovers[i];
  }
  detail << "] vs claim x > " << rep.claimed_threshold << " -> verdict " << rep.verdict
         << " (reported, not asserted)";
  report(7, "crossover explorer: eq6/eq7 hold, ordering measured",
         rep.eq6_holds && rep.eq7_holds, detail.str());
}

// ---------------------------------------------------------------- criterion 8
void criterion_determinism() {
  Timer timer;
  auto read = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  RunConfig cfg;
  cfg.suites = {"ALL"};
  cfg.dim = 4;
  cfg.trials = 100;
  cfg.seed = 1;
  std::ostringstream log;
  cfg.workers = 1;
  cfg.out_path = "/tmp/gruss_acc_run1.json";
  const int rc1 = run_suites(cfg, log);
  cfg.out_path = "/tmp/gruss_acc_run2.json";
  const int rc2 = run_suites(cfg, log);
  cfg.workers = 8;
  cfg.out_path = "/tmp/gruss_acc_run3.json";
  const int rc3 = run_suites(cfg, log);
  const std::string r1 = read("/tmp/gruss_acc_run1.json");
  const std::string r2 = read("/tmp/gruss_acc_run2.json");
  const std::string r3 = read("/tmp/gruss_acc_run3.json");
  std::remove("/tmp/gruss_acc_run1.json");
  std::remove("/tmp/gruss_acc_run2.json");
  std::remove("/tmp/gruss_acc_run3.json");
  const bool identical = !r1.empty() && r1 == r2 && r1 == r3;
  const bool clean = rc1 == kExitOk && rc2 == kExitOk && rc3 == kExitOk;
  std::ostringstream detail;
  detail << "run --suite ALL --dim 4 --trials 100 --seed 1: exit codes " << rc1 << "/" << rc2
         << "/" << rc3 << ", reports " << (identical ? "byte-identical" : "DIFFER")
         << " across reruns and workers 1 vs 8, " << timer.seconds() << "s";
  report(8, "deterministic byte-identical reports", identical && clean, detail.str());
}

}  // namespace

int main() {
  criterion_scalar_sweep();
  criterion_thm1_closed_form();
  criterion_operator_suites();
  criterion_commuting_reduction();
  criterion_section4_sweep();
  criterion_numerical_radius();
  criterion_crossover();
  criterion_determinism();
  std::printf("%d of 8 criteria failed\n", g_failures);
  return g_failures;
}
