#pragma once

#include <vector>

#include "gruss/hermitian.hpp"
#include "gruss/suites.hpp"

namespace gruss {

class UnitVector {
 public:
  explicit UnitVector(Vector v);  // requires | ||v|| - 1 | <= 1e-12
  const Vector& vec() const { return v_; }
  Eigen::Index dim() const { return v_.size(); }

 private:
  Vector v_;
};

struct SpectrumBounds {
  double m = 0.0;
  double M = 0.0;
  double n = 0.0;
  double N = 0.0;

  void validate() const;  // 0 < m <= M, 0 < n <= N
};

struct CovarianceTerms {
  double c_A = 0.0;  // <(M-A)(A-m)x, x>, clamped at 0 from below
  double c_B = 0.0;
};

// max over theta of lambda_max((e^{i theta} T + e^{-i theta} T*)/2), by grid
// scan plus golden-section refinement around the best grid angle.
double numerical_radius(const Matrix& t, int theta_grid = 720, double refine_tol = 1e-10);

// | <|T||T*|x,x> - <|T|x,x><|T*|x,x> |  <=  |||T|x|| |||T*|x|| - |<Tx,x>|^2
InequalityReport check_thm51(const Matrix& t, const UnitVector& x);

// Pointwise certificate |<Tx,x>|^2 + cov(x) <= (1/2) || |T|^2 + |T*|^2 ||
// for every sample; the aggregate omega^2 + min-sample covariance is
// reported informationally, never asserted. compute_radius disables the
// omega field for bulk sweeps.
InequalityReport check_kittaneh_refinement(const Matrix& t,
                                           const std::vector<UnitVector>& samples,
                                           bool compute_radius = true, int theta_grid = 720);

// (x3) and the three-link squared-mean chain for positive definite A, B.
InequalityReport check_x3_and_rem11(const HermitianMatrix& a, const HermitianMatrix& b,
                                    const UnitVector& x);

// (1/2)(a^2 d^2 - b^2 c^2)^2/(a^2 d^2 + b^2 c^2) + (a^2-b^2)(c^2-d^2) <= (ac-bd)^2
InequalityReport lemma_y1(double a, double b, double c, double d);

// Covariance bound with the Kantorovich-type correction; the correction
// quotient is defined as 0 on a degenerate denominator.
InequalityReport check_thm13(const HermitianMatrix& a, const HermitianMatrix& b,
                             const SpectrumBounds& bounds, const UnitVector& x);

// |<ABx,x> - <Ax,x><Bx,x>| <= ||A - mid_A I|| ||B - mid_B I|| <= (M-m)(N-n)/4,
// plus the two norm bounds themselves.
InequalityReport check_gruss_operator(const HermitianMatrix& a, const HermitianMatrix& b,
                                      const SpectrumBounds& bounds, const UnitVector& x);

}  // namespace gruss
