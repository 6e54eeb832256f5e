#include "gruss/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gruss {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double quad_form(const Matrix& m, const Vector& x) {
  return std::real(x.dot(m * x));
}

Complex bilinear(const Matrix& m, const Vector& x) { return x.dot(m * x); }

void require_sandwich(const SpectralDecomposition& sd, double lo, double hi,
                      const char* label) {
  const double tol = 1e-9 * (1.0 + std::abs(lo) + std::abs(hi));
  if (sd.min_eigenvalue() < lo - tol || sd.max_eigenvalue() > hi + tol) {
    throw BoundsViolated(std::string(label) + ": spectrum [" + fmt(sd.min_eigenvalue()) +
                         "," + fmt(sd.max_eigenvalue()) + "] escapes [" + fmt(lo) + "," +
                         fmt(hi) + "]");
  }
}

}  // namespace

UnitVector::UnitVector(Vector v) : v_(std::move(v)) {
  if (v_.size() == 0) {
    throw InvalidConfig("UnitVector: empty vector");
  }
  if (std::abs(v_.norm() - 1.0) > 1e-12) {
    throw InvalidConfig("UnitVector: norm deviates from 1 by more than 1e-12");
  }
}

void SpectrumBounds::validate() const {
  if (!(m > 0.0 && M >= m && n > 0.0 && N >= n)) {
    throw InvalidConfig("SpectrumBounds: need 0 < m <= M and 0 < n <= N");
  }
}

double numerical_radius(const Matrix& t, int theta_grid, double refine_tol) {
  if (t.rows() != t.cols()) {
    throw DimensionMismatch("numerical_radius: matrix is not square");
  }
  if (t.rows() > 64) {
    throw InvalidConfig("numerical_radius: dimension capped at 64");
  }
  if (theta_grid < 8) {
    throw InvalidConfig("numerical_radius: theta_grid must be >= 8");
  }
  if (!(refine_tol > 0.0)) {
    throw InvalidConfig("numerical_radius: refine_tol must be > 0");
  }
  constexpr double kTwoPi = 6.28318530717958647692;
  auto height = [&](double theta) {
    const Complex phase = std::polar(1.0, theta);
    const Matrix h = 0.5 * (phase * t + std::conj(phase) * t.adjoint());
    return eigh(HermitianMatrix(h, 1e-8)).max_eigenvalue();
  };

  double best = -std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i < theta_grid; ++i) {
    const double val = height(kTwoPi * i / theta_grid);
    if (val > best) {
      best = val;
      best_i = i;
    }
  }
  // golden-section refinement on the bracketing grid interval
  const double step = kTwoPi / theta_grid;
  double lo = kTwoPi * best_i / theta_grid - step;
  double hi = lo + 2.0 * step;
  const double gr = 0.61803398874989484820;
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = height(x1), f2 = height(x2);
  best = std::max({best, f1, f2});
  while (hi - lo > refine_tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = height(x2);
      best = std::max(best, f2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = height(x1);
      best = std::max(best, f1);
    }
  }
  return best;
}

InequalityReport check_thm51(const Matrix& t, const UnitVector& x) {
  if (t.rows() != x.dim()) {
    throw DimensionMismatch("check_thm51: matrix/vector dimensions differ");
  }
  const HermitianMatrix p = abs_op(t);
  const HermitianMatrix q = abs_op(t.adjoint());
  const Vector& xv = x.vec();
  const Vector px = p.matrix() * xv;
  const Vector qx = q.matrix() * xv;
  const double mean_p = std::real(xv.dot(px));
  const double mean_q = std::real(xv.dot(qx));
  // <|T||T*|x, x>; |T||T*| is generally non-Hermitian, modulus taken as-is
  const Complex pq = xv.dot(p.matrix() * qx);
  const double lhs = std::abs(pq - mean_p * mean_q);
  const double txx = std::abs(bilinear(t, xv));
  const double rhs = px.norm() * qx.norm() - txx * txx;

  InequalityReport rep;
  rep.suite_id = "THM51";
  rep.inputs_digest = "dim=" + std::to_string(t.rows());
  const double tn = operator_norm(t);
  rep.tol = 1e-10 * (1.0 + tn * tn);
  rep.margin = rhs - lhs;
  rep.holds = rep.margin >= -rep.tol;
  rep.extras = {{"lhs", lhs}, {"rhs", rhs}, {"numerical_range_point", txx}};
  return rep;
}

InequalityReport check_kittaneh_refinement(const Matrix& t,
                                           const std::vector<UnitVector>& samples,
                                           bool compute_radius, int theta_grid) {
  if (samples.empty()) {
    throw InvalidConfig("check_kittaneh_refinement: empty sample list");
  }
  const HermitianMatrix p = abs_op(t);
  const HermitianMatrix q = abs_op(t.adjoint());
  // || |T|^2 + |T*|^2 || with the squares formed exactly as T*T and TT*
  const Matrix sum_sq = t.adjoint() * t + t * t.adjoint();
  const double rhs = 0.5 * eigh(HermitianMatrix(sum_sq, 1e-9)).spectral_norm();
  const double tn = operator_norm(t);
  const double tol = 1e-10 * (1.0 + tn * tn);

  double worst_margin = std::numeric_limits<double>::infinity();
  double min_cov = std::numeric_limits<double>::infinity();
  bool all_hold = true;
  for (const UnitVector& x : samples) {
    if (x.dim() != t.rows()) {
      throw DimensionMismatch("check_kittaneh_refinement: sample dimension mismatch");
    }
    const Vector& xv = x.vec();
    const double mean_p = quad_form(p.matrix(), xv);
    const double mean_q = quad_form(q.matrix(), xv);
    const Complex pq = xv.dot(p.matrix() * (q.matrix() * xv));
    const double cov = std::abs(pq - mean_p * mean_q);
    const double txx = std::abs(bilinear(t, xv));
    const double margin = rhs - (txx * txx + cov);
    worst_margin = std::min(worst_margin, margin);
    min_cov = std::min(min_cov, cov);
    all_hold = all_hold && margin >= -tol;
  }

  InequalityReport rep;
  rep.suite_id = "KITTANEH";
  rep.inputs_digest =
      "dim=" + std::to_string(t.rows()) + ";samples=" + std::to_string(samples.size());
  rep.tol = tol;
  rep.margin = worst_margin;
  rep.holds = all_hold;
  rep.extras = {{"pointwise_rhs", rhs}, {"min_sample_cov", min_cov}};
  if (compute_radius) {
    const double omega = numerical_radius(t, theta_grid);
    rep.extras.emplace_back("omega", omega);
    // sample-min overestimates the true infimum; informational only
    rep.extras.emplace_back("aggregate_lhs", omega * omega + min_cov);
    rep.extras.emplace_back("aggregate_rhs", rhs);
  }
  return rep;
}

InequalityReport check_x3_and_rem11(const HermitianMatrix& a, const HermitianMatrix& b,
                                    const UnitVector& x) {
  require_same_dim(a.matrix(), b.matrix(), "check_x3_and_rem11");
  if (a.dim() != x.dim()) {
    throw DimensionMismatch("check_x3_and_rem11: vector dimension mismatch");
  }
  if (eigh(a).min_eigenvalue() <= 0.0 || eigh(b).min_eigenvalue() <= 0.0) {
    throw DomainViolation("check_x3_and_rem11: A and B must be positive definite");
  }
  const Vector& xv = x.vec();
  const Vector ax = a.matrix() * xv;
  const Vector bx = b.matrix() * xv;
  const double alpha = std::real(xv.dot(ax));
  const double beta = std::real(xv.dot(bx));
  const double a2 = ax.squaredNorm();
  const double b2 = bx.squaredNorm();
  const Complex ab = ax.dot(bx);  // <ABx, x> = <Ax, Bx>
  const double abs_ab = std::abs(ab);

  const double root = std::sqrt(a2 * b2);
  const double x3_margin = root - (alpha * beta + std::abs(ab - alpha * beta));
  const double half_sum = 0.5 * (root + abs_ab);
  const double link1 = half_sum * half_sum - alpha * alpha * beta * beta;
  const double link2 = 0.5 * (a2 * b2 + abs_ab * abs_ab) - half_sum * half_sum;
  const double link3 = a2 * b2 - 0.5 * (a2 * b2 + abs_ab * abs_ab);

  InequalityReport rep;
  rep.suite_id = "X3_REM11";
  rep.inputs_digest = "dim=" + std::to_string(a.dim());
  const double tol2 = 1e-10 * (1.0 + root);
  const double tol4 = 1e-10 * (1.0 + a2 * b2);
  rep.tol = tol4;
  rep.margin = std::min({x3_margin, link1, link2, link3});
  rep.holds = x3_margin >= -tol2 && link1 >= -tol4 && link2 >= -tol4 && link3 >= -tol4;
  rep.extras = {{"x3_margin", x3_margin},
                {"chain_link1", link1},
                {"chain_link2", link2},
                {"chain_link3", link3},
                {"variance_a", a2 - alpha * alpha},
                {"variance_b", b2 - beta * beta}};
  return rep;
}

InequalityReport lemma_y1(double a, double b, double c, double d) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0 && d > 0.0)) {
    throw NonPositiveInput("lemma_y1: all four arguments must be positive");
  }
  const double ad = a * a * d * d;
  const double bc = b * b * c * c;
  const double lhs =
      0.5 * (ad - bc) * (ad - bc) / (ad + bc) + (a * a - b * b) * (c * c - d * d);
  const double rhs = (a * c - b * d) * (a * c - b * d);

  InequalityReport rep;
  rep.suite_id = "LEMMA_Y1";
  rep.inputs_digest =
      "a=" + fmt(a) + ";b=" + fmt(b) + ";c=" + fmt(c) + ";d=" + fmt(d);
  rep.tol = 1e-10 * (1.0 + (a * a + b * b) * (c * c + d * d));
  rep.margin = rhs - lhs;
  rep.holds = rep.margin >= -rep.tol;
  rep.extras = {{"lhs", lhs}, {"rhs", rhs}};
  return rep;
}

InequalityReport check_thm13(const HermitianMatrix& a, const HermitianMatrix& b,
                             const SpectrumBounds& bounds, const UnitVector& x) {
  bounds.validate();
  require_same_dim(a.matrix(), b.matrix(), "check_thm13");
  if (a.dim() != x.dim()) {
    throw DimensionMismatch("check_thm13: vector dimension mismatch");
  }
  require_sandwich(eigh(a), bounds.m, bounds.M, "check_thm13: A");
  require_sandwich(eigh(b), bounds.n, bounds.N, "check_thm13: B");

  const Vector& xv = x.vec();
  const Vector ax = a.matrix() * xv;
  const Vector bx = b.matrix() * xv;
  const double alpha = std::real(xv.dot(ax));
  const double beta = std::real(xv.dot(bx));
  const double lhs = std::abs(ax.dot(bx) - Complex(alpha * beta, 0.0));

  const double dm = bounds.M - bounds.m;
  const double dn = bounds.N - bounds.n;
  // C(A,x) = <(M-A)(A-m)x, x>, a PSD quadratic form; roundoff negatives clamp to 0
  const Vector am_x = ax - bounds.m * xv;
  const Vector ma_ax = bounds.M * am_x - a.matrix() * am_x;
  double c_a = std::real(xv.dot(ma_ax));
  const Vector bn_x = bx - bounds.n * xv;
  const Vector nb_bx = bounds.N * bn_x - b.matrix() * bn_x;
  double c_b = std::real(xv.dot(nb_bx));
  // the sandwich is enforced only up to its own slack, so the PSD form can
  // dip below -1e-12 by that much before it signals inconsistent bounds
  const double slack_a = 1e-9 * (1.0 + bounds.m + bounds.M) * (1.0 + dm);
  const double slack_b = 1e-9 * (1.0 + bounds.n + bounds.N) * (1.0 + dn);
  const double clamp_a = 1e-12 * (1.0 + 0.25 * dm * dm) + 4.0 * slack_a;
  const double clamp_b = 1e-12 * (1.0 + 0.25 * dn * dn) + 4.0 * slack_b;
  if (c_a < -clamp_a || c_b < -clamp_b) {
    throw BoundsViolated("check_thm13: covariance form negative beyond roundoff");
  }
  CovarianceTerms terms;
  terms.c_A = std::max(c_a, 0.0);
  terms.c_B = std::max(c_b, 0.0);

  const double num_half = dm * dm * terms.c_B - dn * dn * terms.c_A;
  const double den = 8.0 * (dm * dm * terms.c_B + dn * dn * terms.c_A);
  const double den_scale = 1e-14 * (1.0 + dm * dm * dn * dn);
  const double quotient = den < den_scale ? 0.0 : num_half * num_half / den;
  const double correction = std::sqrt(terms.c_A * terms.c_B) + quotient;
  const double bound = 0.25 * dm * dn - correction;

  InequalityReport rep;
  rep.suite_id = "THM13";
  rep.inputs_digest = "dim=" + std::to_string(a.dim()) + ";m=" + fmt(bounds.m) +
                      ";M=" + fmt(bounds.M) + ";n=" + fmt(bounds.n) + ";N=" + fmt(bounds.N);
  rep.tol = 1e-10 * (1.0 + bounds.M * bounds.N);
  rep.margin = bound - lhs;
  rep.refinement_gain = correction;  // how far the bound tightens under (M-m)(N-n)/4
  rep.holds = rep.margin >= -rep.tol;
  rep.extras = {{"lhs", lhs},
                {"bound", bound},
                {"plain_gruss_bound", 0.25 * dm * dn},
                {"c_A", terms.c_A},
                {"c_B", terms.c_B},
                {"c_A_raw", c_a},
                {"c_B_raw", c_b},
                {"quotient", quotient},
                {"correction_nonnegative", correction >= 0.0 ? 1.0 : 0.0}};
  return rep;
}

InequalityReport check_gruss_operator(const HermitianMatrix& a, const HermitianMatrix& b,
                                      const SpectrumBounds& bounds, const UnitVector& x) {
  bounds.validate();
  require_same_dim(a.matrix(), b.matrix(), "check_gruss_operator");
  if (a.dim() != x.dim()) {
    throw DimensionMismatch("check_gruss_operator: vector dimension mismatch");
  }
  const SpectralDecomposition ea = eigh(a);
  const SpectralDecomposition eb = eigh(b);
  require_sandwich(ea, bounds.m, bounds.M, "check_gruss_operator: A");
  require_sandwich(eb, bounds.n, bounds.N, "check_gruss_operator: B");

  const Vector& xv = x.vec();
  const Vector ax = a.matrix() * xv;
  const Vector bx = b.matrix() * xv;
  const double alpha = std::real(xv.dot(ax));
  const double beta = std::real(xv.dot(bx));
  const double lhs = std::abs(ax.dot(bx) - Complex(alpha * beta, 0.0));

  const double mid_a = 0.5 * (bounds.M + bounds.m);
  const double mid_b = 0.5 * (bounds.N + bounds.n);
  // ||A - mid I|| = max_i |lambda_i - mid|
  double na = 0.0, nb = 0.0;
  for (Eigen::Index i = 0; i < ea.dim(); ++i) {
    na = std::max(na, std::abs(ea.eigenvalues(i) - mid_a));
  }
  for (Eigen::Index i = 0; i < eb.dim(); ++i) {
    nb = std::max(nb, std::abs(eb.eigenvalues(i) - mid_b));
  }
  const double half_dm = 0.5 * (bounds.M - bounds.m);
  const double half_dn = 0.5 * (bounds.N - bounds.n);

  const double gruss_bound = half_dm * half_dn;  // (M-m)(N-n)/4
  const double link1 = na * nb - lhs;
  const double link2 = gruss_bound - na * nb;
  const double norm_bound_a = half_dm - na;
  const double norm_bound_b = half_dn - nb;

  InequalityReport rep;
  rep.suite_id = "GRUSS_OP";
  rep.inputs_digest = "dim=" + std::to_string(a.dim()) + ";m=" + fmt(bounds.m) +
                      ";M=" + fmt(bounds.M) + ";n=" + fmt(bounds.n) + ";N=" + fmt(bounds.N);
  rep.tol = 1e-10 * (1.0 + bounds.M * bounds.N);
  rep.margin = std::min({link1, link2, norm_bound_a, norm_bound_b});
  rep.holds = link1 >= -rep.tol && link2 >= -rep.tol && norm_bound_a >= -rep.tol &&
              norm_bound_b >= -rep.tol;
  rep.extras = {{"lhs", lhs},
                {"norm_product", na * nb},
                {"plain_gruss_bound", gruss_bound},
                {"link_norms", link1},
                {"link_gruss", link2}};
  return rep;
}

}  // namespace gruss
