#include "gruss/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gruss {

double InequalityReport::extra(const std::string& key) const {
  for (const auto& [k, v] : extras) {
    if (k == key) return v;
  }
  throw InvalidConfig("InequalityReport: no extra named " + key);
}

const char* to_string(ScalarSuite s) {
  switch (s) {
    case ScalarSuite::THM1: return "THM1";
    case ScalarSuite::CHAIN: return "CHAIN";
    case ScalarSuite::THM2: return "THM2";
    case ScalarSuite::COR3: return "COR3";
    case ScalarSuite::COR_GAMMA: return "COR_GAMMA";
  }
  return "?";
}

const char* to_string(OperatorSuite s) {
  switch (s) {
    case OperatorSuite::OP_HERON: return "OP_HERON";
    case OperatorSuite::OP_HEINZ_LOG: return "OP_HEINZ_LOG";
    case OperatorSuite::OP_POWER_AG: return "OP_POWER_AG";
    case OperatorSuite::OP_POWER_HG: return "OP_POWER_HG";
    case OperatorSuite::OP_ENTROPY: return "OP_ENTROPY";
  }
  return "?";
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void require_domain(const MonotoneWeight& g, double lo, double hi, const char* suite) {
  if (g.lo() != lo || g.hi() != hi) {
    throw InvalidConfig(std::string(suite) + ": weight domain [" + fmt(g.lo()) + "," +
                        fmt(g.hi()) + "] does not match required [" + fmt(lo) + "," +
                        fmt(hi) + "]");
  }
}

}  // namespace

InequalityReport check_gruss_base(const MonotoneWeight& f, const MonotoneWeight& g,
                                  double m, double M, double n, double N,
                                  const QuadratureConfig& qcfg) {
  if (f.lo() != g.lo() || f.hi() != g.hi()) {
    throw InvalidConfig("check_gruss_base: f and g must share a domain");
  }
  constexpr int kGrid = 1024;
  const double lo = f.lo(), hi = f.hi();
  for (int i = 0; i < kGrid; ++i) {
    const double t = lo + (hi - lo) * i / (kGrid - 1);
    const double fv = f(t), gv = g(t);
    const double sf = 1e-12 * (1.0 + std::abs(M) + std::abs(m));
    const double sg = 1e-12 * (1.0 + std::abs(N) + std::abs(n));
    if (fv < m - sf || fv > M + sf || gv < n - sg || gv > N + sg) {
      throw BoundsViolated("check_gruss_base: bounds do not enclose the weights at t = " +
                           fmt(t));
    }
  }
  const double len = hi - lo;
  const auto i_f = integrate([&](double t) { return f(t); }, lo, hi, qcfg);
  const auto i_g = integrate([&](double t) { return g(t); }, lo, hi, qcfg);
  const auto i_fg = integrate([&](double t) { return f(t) * g(t); }, lo, hi, qcfg);
  // normalized Cebysev functional
  const double functional = i_fg.value / len - (i_f.value / len) * (i_g.value / len);
  const double gruss_bound = 0.25 * (M - m) * (N - n);
  const double qerr = i_fg.error_estimate / len +
                      (i_f.error_estimate * std::abs(i_g.value) +
                       i_g.error_estimate * std::abs(i_f.value)) /
                          (len * len);

  InequalityReport rep;
  rep.suite_id = "GRUSS_BASE";
  rep.inputs_digest = "f=" + f.name() + ";g=" + g.name() + ";m=" + fmt(m) + ";M=" + fmt(M) +
                      ";n=" + fmt(n) + ";N=" + fmt(N);
  rep.quadrature_error = qerr;
  rep.tol = 1e-12 * (1.0 + std::abs(gruss_bound) + std::abs(functional)) + qerr;
  const double cheb_margin = functional;
  const double gruss_slack = gruss_bound - functional;
  rep.margin = std::min(cheb_margin, gruss_slack);
  rep.refinement_gain = cheb_margin;
  rep.holds = cheb_margin >= -rep.tol && gruss_slack >= -rep.tol;
  rep.extras = {{"cebysev_margin", cheb_margin},
                {"gruss_slack", gruss_slack},
                {"functional", functional},
                {"gruss_bound", gruss_bound}};
  return rep;
}

namespace suites_detail {

double cor3_refinement_term(double w) {
  if (std::abs(w) <= 0.5) {
    // 4 w^2 * sum_{m>=4} (w^{m-4}/m!) (m/8 - (1 - 2^{1-m})/2)
    double sum = 0.0;
    double wpow = 1.0;      // w^{m-4}
    double fact = 24.0;     // m!
    double twopow = 0.125;  // 2^{1-m}
    for (int m = 4; m <= 40; ++m) {
      const double coef = m / 8.0 - 0.5 * (1.0 - twopow);
      sum += wpow / fact * coef;
      wpow *= w;
      fact *= m + 1;
      twopow *= 0.5;
    }
    return 4.0 * w * w * sum;
  }
  const double e1 = std::expm1(w);
  const double eh = std::expm1(0.5 * w);
  return 4.0 * (w * e1 / 8.0 - 0.5 * eh * eh) / (w * w);
}

}  // namespace suites_detail

InequalityReport check_scalar_refinement(ScalarSuite suite, double a, double b, double v,
                                         const MonotoneWeight& g,
                                         const QuadratureConfig& qcfg) {
  detail::require_positive(a, b, "check_scalar_refinement");
  InequalityReport rep;
  rep.suite_id = to_string(suite);
  rep.inputs_digest =
      "a=" + fmt(a) + ";b=" + fmt(b) + ";v=" + fmt(v) + ";g=" + g.name();

  switch (suite) {
    case ScalarSuite::THM1: {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw InvalidConfig("THM1: v outside [0,1]");
      }
      require_domain(g, 0.0, 1.0, "THM1");
      const double gm = scalar_mean(MeanKind::GEOM, a, b, {0.0, v});
      const double am = scalar_mean(MeanKind::ARITH, a, b, {0.0, v});
      const double diff = am - gm;
      // F_{t,v} - F_{1/2,v} = (t - 1/2)(am - gm)
      const auto integral =
          integrate([&](double t) { return (t - 0.5) * diff * g(t); }, 0.0, 1.0, qcfg);
      const double scale = 4.0 / g.gap();
      const double refinement = scale * integral.value;
      const double lhs = gm + refinement;
      rep.quadrature_error = scale * integral.error_estimate;
      rep.tol = 1e-10 * (1.0 + std::abs(am)) + rep.quadrature_error;
      rep.margin = am - lhs;
      rep.refinement_gain = refinement;
      rep.holds = rep.margin >= -rep.tol && rep.refinement_gain >= -rep.tol;
      rep.extras = {{"lhs", lhs}, {"rhs", am}, {"unrefined_lhs", gm}};
      break;
    }
    case ScalarSuite::CHAIN: {
      require_domain(g, 0.0, 1.0, "CHAIN");
      const MeanParams half{0.0, 0.5};
      const double gm = scalar_mean(MeanKind::GEOM, a, b, half);
      const double am = scalar_mean(MeanKind::ARITH, a, b, half);
      const double f_half = 0.5 * (gm + am);
      const auto i_gf = integrate(
          [&](double t) { return g(t) * ((1.0 - t) * gm + t * am); }, 0.0, 1.0, qcfg);
      const auto i_g = integrate([&](double t) { return g(t); }, 0.0, 1.0, qcfg);
      const double mid = i_gf.value / i_g.value;
      const double qerr = i_gf.error_estimate / i_g.value +
                          std::abs(mid) * i_g.error_estimate / i_g.value;
      const double link1 = f_half - gm;
      const double link2 = mid - f_half;
      const double link3 = am - mid;
      rep.quadrature_error = qerr;
      rep.tol = 1e-10 * (1.0 + am) + qerr;
      rep.margin = std::min({link1, link2, link3});
      rep.refinement_gain = link2;
      rep.holds = link1 >= -rep.tol && link2 >= -rep.tol && link3 >= -rep.tol;
      rep.extras = {{"link_geom_heron", link1},
                    {"link_heron_weighted", link2},
                    {"link_weighted_arith", link3},
                    {"weighted_mean", mid}};
      break;
    }
    case ScalarSuite::THM2: {
      require_domain(g, 0.5, 1.0, "THM2");
      const MeanParams half{0.0, 0.5};
      const double gm = scalar_mean(MeanKind::GEOM, a, b, half);
      const double am = scalar_mean(MeanKind::ARITH, a, b, half);
      const double lg = log_mean(a, b);
      const auto i_gh = integrate(
          [&](double t) {
            return g(t) * scalar_mean(MeanKind::HEINZ, a, b, {t, 0.5});
          },
          0.5, 1.0, qcfg);
      const auto i_g = integrate([&](double t) { return g(t); }, 0.5, 1.0, qcfg);
      const double scale = 2.0 / g.gap();
      const double bracket = i_gh.value - lg * i_g.value;
      const double refinement = scale * bracket;
      const double lhs = gm + refinement;
      rep.quadrature_error =
          scale * (i_gh.error_estimate + lg * i_g.error_estimate);
      rep.tol = 1e-10 * (1.0 + am) + rep.quadrature_error;
      rep.margin = am - lhs;
      rep.refinement_gain = refinement;
      rep.holds = rep.margin >= -rep.tol && rep.refinement_gain >= -rep.tol;
      rep.extras = {{"lhs", lhs}, {"rhs", am}, {"log_mean", lg}};
      break;
    }
    case ScalarSuite::COR3: {
      const double x = b / a;
      const double w = std::log(x);
      const double term = suites_detail::cor3_refinement_term(w);
      const double lhs = std::sqrt(x) + term;
      const double rhs = 0.5 * (1.0 + x);
      rep.tol = 1e-10 * (1.0 + rhs);
      rep.margin = rhs - lhs;
      rep.refinement_gain = term;
      rep.holds = rep.margin >= -rep.tol && rep.refinement_gain >= -rep.tol;
      rep.extras = {{"x", x}, {"lhs", lhs}, {"rhs", rhs}};
      break;
    }
    case ScalarSuite::COR_GAMMA: {
      const MeanParams half{0.0, 0.5};
      const double gm = scalar_mean(MeanKind::GEOM, a, b, half);
      const double am = scalar_mean(MeanKind::ARITH, a, b, half);
      const double gamma = gamma_factor(a, b);
      const double lg = log_mean(a, b);
      const double lhs = gm + gamma * lg;
      rep.tol = 1e-10 * (1.0 + am);
      rep.margin = am - lhs;
      rep.refinement_gain = gamma * lg;
      rep.holds = rep.margin >= -rep.tol && rep.refinement_gain >= -rep.tol;
      rep.extras = {{"gamma", gamma}, {"log_mean", lg}, {"lhs", lhs}, {"rhs", am}};
      break;
    }
  }
  return rep;
}

namespace {

// spectral norm of a symmetrized raw matrix
double herm_norm(const Matrix& m) {
  return eigh(HermitianMatrix(m, 1e-8)).spectral_norm();
}

}  // namespace

InequalityReport check_operator_refinement(OperatorSuite suite, const PositivePair& pair,
                                           const MeanParams& params, const MonotoneWeight& g,
                                           double s, const QuadratureConfig& qcfg,
                                           double psd_coef) {
  validate(params);
  const double v = params.v;
  const PairCalculus calc(pair);

  InequalityReport rep;
  rep.suite_id = to_string(suite);
  rep.inputs_digest = "dim=" + std::to_string(pair.dim()) + ";v=" + fmt(v) +
                      ";g=" + g.name() + ";s=" + fmt(s);

  Matrix lhs, rhs;
  Matrix gain_term;
  double qerr = 0.0;

  switch (suite) {
    case OperatorSuite::OP_HERON: {
      require_domain(g, 0.0, 1.0, "OP_HERON");
      const Matrix gm = calc.congruence_raw(
          [&](double x) { return scalar_mean(MeanKind::GEOM, 1.0, x, params); });
      const Matrix am = calc.congruence_raw(
          [&](double x) { return scalar_mean(MeanKind::ARITH, 1.0, x, params); });
      const Matrix diff = am - gm;
      const auto integral = integrate(
          [&](double t) { return Matrix((t - 0.5) * g(t) * diff); }, 0.0, 1.0, qcfg);
      const double scale = 4.0 / g.gap();
      gain_term = scale * integral.value;
      lhs = gm + gain_term;
      rhs = am;
      qerr = scale * integral.error_estimate;
      break;
    }
    case OperatorSuite::OP_HEINZ_LOG: {
      require_domain(g, 0.5, 1.0, "OP_HEINZ_LOG");
      const MeanParams half{0.0, 0.5};
      const Matrix gm = calc.congruence_raw(
          [&](double x) { return scalar_mean(MeanKind::GEOM, 1.0, x, half); });
      const Matrix am = calc.congruence_raw(
          [&](double x) { return scalar_mean(MeanKind::ARITH, 1.0, x, half); });
      const Matrix lg = calc.congruence_raw([](double x) { return log_mean(1.0, x); });
      const auto i_gh = integrate(
          [&](double t) {
            return calc.congruence_raw(
                [&](double x) { return g(t) * scalar_mean(MeanKind::HEINZ, 1.0, x, {t, 0.5}); });
          },
          0.5, 1.0, qcfg);
      const auto i_g = integrate([&](double t) { return g(t); }, 0.5, 1.0, qcfg);
      const double scale = 2.0 / g.gap();
      gain_term = scale * (i_gh.value - i_g.value * lg);
      lhs = gm + gain_term;
      rhs = am;
      qerr = scale * (i_gh.error_estimate + herm_norm(lg) * i_g.error_estimate);

      // (B-A) S_0(A|B)^{-1} A is an equivalent closed form for the log
      // term only when A and B commute; report the deviation, never
      // assert it
      const HermitianMatrix s0 = relative_entropy(calc, 0.0);
      const SpectralDecomposition es0 = eigh(s0);
      double min_abs = std::abs(es0.eigenvalues(0));
      for (Eigen::Index i = 1; i < es0.dim(); ++i) {
        min_abs = std::min(min_abs, std::abs(es0.eigenvalues(i)));
      }
      if (min_abs > 1e-8 * (1.0 + es0.spectral_norm())) {
        RealVector inv = es0.eigenvalues.cwiseInverse();
        const Matrix s0_inv =
            es0.eigenvectors * inv.cast<Complex>().asDiagonal() * es0.eigenvectors.adjoint();
        const Matrix closed_form =
            (pair.B().matrix() - pair.A().matrix()) * s0_inv * pair.A().matrix();
        rep.extras.emplace_back("log_closed_form_defined", 1.0);
        rep.extras.emplace_back("log_closed_form_diff", (closed_form - lg).norm());
      } else {
        rep.extras.emplace_back("log_closed_form_defined", 0.0);
      }
      break;
    }
    case OperatorSuite::OP_POWER_AG: {
      require_domain(g, 0.0, 1.0, "OP_POWER_AG");
      auto power_at = [&](double t) {
        return calc.congruence_raw(
            [&](double x) { return scalar_mean(MeanKind::POWER, 1.0, x, {t, v}); });
      };
      const auto i_mg = integrate([&](double t) { return Matrix(g(t) * power_at(t)); },
                                  0.0, 1.0, qcfg);
      const auto i_m = integrate(power_at, 0.0, 1.0, qcfg);
      const auto i_g = integrate([&](double t) { return g(t); }, 0.0, 1.0, qcfg);
      const double scale = 4.0 / g.gap();
      gain_term = scale * (i_mg.value - i_m.value * i_g.value);
      lhs = calc.congruence_raw(
                [&](double x) { return scalar_mean(MeanKind::GEOM, 1.0, x, params); }) +
            gain_term;
      rhs = calc.congruence_raw(
          [&](double x) { return scalar_mean(MeanKind::ARITH, 1.0, x, params); });
      qerr = scale * (i_mg.error_estimate + i_m.error_estimate * std::abs(i_g.value) +
                      herm_norm(i_m.value) * i_g.error_estimate);
      break;
    }
    case OperatorSuite::OP_POWER_HG: {
      require_domain(g, -1.0, 0.0, "OP_POWER_HG");
      auto power_at = [&](double t) {
        return calc.congruence_raw(
            [&](double x) { return scalar_mean(MeanKind::POWER, 1.0, x, {t, v}); });
      };
      const auto i_mg = integrate([&](double t) { return Matrix(g(t) * power_at(t)); },
                                  -1.0, 0.0, qcfg);
      const auto i_m = integrate(power_at, -1.0, 0.0, qcfg);
      const auto i_g = integrate([&](double t) { return g(t); }, -1.0, 0.0, qcfg);
      const double scale = 4.0 / g.gap();
      gain_term = scale * (i_mg.value - i_m.value * i_g.value);
      lhs = calc.congruence_raw(
                [&](double x) { return scalar_mean(MeanKind::HARM, 1.0, x, params); }) +
            gain_term;
      rhs = calc.congruence_raw(
          [&](double x) { return scalar_mean(MeanKind::GEOM, 1.0, x, params); });
      qerr = scale * (i_mg.error_estimate + i_m.error_estimate * std::abs(i_g.value) +
                      herm_norm(i_m.value) * i_g.error_estimate);
      break;
    }
    case OperatorSuite::OP_ENTROPY: {
      if (!(s > 0.0 && s <= 1.0)) {
        throw InvalidConfig("OP_ENTROPY: s outside (0,1]");
      }
      const Matrix s0 = calc.congruence_raw([](double x) { return std::log(x); });
      Integrand<Matrix> f;
      f.lo = 0.0;
      f.hi = 1.0;
      f.evaluate = [&](double t) {
        return Matrix((2.0 * t - 1.0) *
                      calc.congruence_raw([&](double x) { return deformed_log(s * t, x); }));
      };
      f.value_at_lo = Matrix(-s0);  // limit of (2t-1) S_{st} as t -> 0
      const auto integral = integrate(f, 0.0, 1.0, qcfg);
      gain_term = 2.0 * integral.value;
      lhs = s0 + gain_term;
      rhs = calc.congruence_raw([&](double x) { return deformed_log(s, x); });
      qerr = 2.0 * integral.error_estimate;
      break;
    }
  }

  const double norm_l = herm_norm(lhs);
  const double norm_r = herm_norm(rhs);
  const double tol = psd_coef * (1.0 + norm_l + norm_r) + qerr;
  const LoewnerReport lw =
      loewner_leq(HermitianMatrix(lhs, 1e-8), HermitianMatrix(rhs, 1e-8), tol);

  rep.quadrature_error = qerr;
  rep.tol = tol;
  rep.margin = lw.min_eig_diff;
  rep.loewner = lw;
  rep.refinement_gain = eigh(HermitianMatrix(gain_term, 1e-8)).min_eigenvalue();
  rep.holds = lw.holds && rep.refinement_gain >= -tol;
  rep.extras.emplace_back("lhs_norm", norm_l);
  rep.extras.emplace_back("rhs_norm", norm_r);
  const SpectralDecomposition margin_sd = eigh(HermitianMatrix(Matrix(rhs - lhs), 1e-8));
  for (Eigen::Index i = 0; i < margin_sd.dim(); ++i) {
    rep.extras.emplace_back("margin_eig_" + std::to_string(i), margin_sd.eigenvalues(i));
  }
  return rep;
}

Eq67Record compare_eq6_eq7(double x) {
  if (!(x > 0.0)) {
    throw NonPositiveInput("compare_eq6_eq7: x must be positive");
  }
  Eq67Record rec;
  rec.x = x;
  if (x == 1.0) {
    rec.holds = true;
    return rec;
  }
  const double w = std::log(x);
  const double w2 = w * w;
  rec.lhs6 = w2 / (2.0 * (w2 + 4.0)) * log_mean(1.0, x);
  rec.lhs7 = w2 / 8.0 * std::sqrt(x);
  const double eh = std::expm1(0.5 * w);
  rec.rhs = 0.5 * eh * eh;  // (x+1)/2 - sqrt(x), cancellation-free
  rec.margin6 = rec.rhs - rec.lhs6;
  rec.margin7 = rec.rhs - rec.lhs7;
  const double tol = 1e-10 * (1.0 + std::abs(rec.rhs));
  rec.ordering = rec.lhs7 > rec.lhs6 ? 1 : (rec.lhs7 < rec.lhs6 ? -1 : 0);
  rec.holds = rec.margin6 >= -tol && rec.margin7 >= -tol;
  return rec;
}

std::vector<double> find_ordering_crossovers(double lo, double hi, int grid_points,
                                             double bisect_tol) {
  if (!(lo > 0.0) || !(lo < hi)) {
    throw InvalidConfig("find_ordering_crossovers: need 0 < lo < hi");
  }
  if (grid_points < 2) {
    throw InvalidConfig("find_ordering_crossovers: need grid_points >= 2");
  }
  if (!(bisect_tol > 0.0)) {
    throw InvalidConfig("find_ordering_crossovers: need bisect_tol > 0");
  }
  auto d = [](double x) {
    const Eq67Record r = compare_eq6_eq7(x);
    return r.lhs7 - r.lhs6;
  };
  const double llo = std::log(lo), lhi = std::log(hi);
  std::vector<double> roots;
  double prev_x = lo;
  double prev_d = d(lo);
  for (int i = 1; i < grid_points; ++i) {
    const double x = std::exp(llo + (lhi - llo) * i / (grid_points - 1));
    const double dx = d(x);
    if ((prev_d < 0.0 && dx > 0.0) || (prev_d > 0.0 && dx < 0.0)) {
      double la = std::log(prev_x), lb = std::log(x);
      double fa = prev_d;
      while ((lb - la) > bisect_tol) {
        const double lm = 0.5 * (la + lb);
        const double fm = d(std::exp(lm));
        if (fm == 0.0) {
          la = lb = lm;
          break;
        }
        if ((fa < 0.0) == (fm < 0.0)) {
          la = lm;
          fa = fm;
        } else {
          lb = lm;
        }
      }
      roots.push_back(std::exp(0.5 * (la + lb)));
    }
    prev_x = x;
    prev_d = dx;
  }
  return roots;
}

}  // namespace gruss
