#pragma once

#include <functional>
#include <limits>
#include <string>

#include "gruss/types.hpp"

namespace gruss {

// n x n complex self-adjoint matrix, stored exactly symmetrized: after
// construction entry (i,j) is bit-exactly the conjugate of entry (j,i) and
// the diagonal is exactly real.
class HermitianMatrix {
 public:
  // Validates ||M - M*||_F <= tol_herm * (1 + ||M||_F), then symmetrizes.
  explicit HermitianMatrix(const Matrix& m, double tol_herm = 1e-12);

  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  double frobenius_norm() const { return m_.norm(); }

 private:
  Matrix m_;
};

// Real eigenvalues sorted ascending plus the unitary of column eigenvectors.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;

  Eigen::Index dim() const { return eigenvalues.size(); }
  double min_eigenvalue() const { return eigenvalues(0); }
  double max_eigenvalue() const { return eigenvalues(eigenvalues.size() - 1); }
  // max |lambda_i|, the spectral norm of the decomposed matrix
  double spectral_norm() const;
  Matrix reconstruct() const;
};

// Outcome of a Loewner-order comparison X <= Y.
struct LoewnerReport {
  double min_eig_diff = 0.0;  // smallest eigenvalue of Y - X
  double tol = 0.0;
  bool holds = false;
};

// Cyclic Jacobi eigendecomposition of a Hermitian matrix. Deterministic
// sweep order; identical input gives identical output. Throws NoConvergence
// if the off-diagonal mass has not collapsed after max_sweeps.
SpectralDecomposition eigh(const HermitianMatrix& h, int max_sweeps = 100);

// A scalar real function with a declared domain, lifted to Hermitian
// matrices through the spectral decomposition.
struct ScalarFunction {
  std::function<double(double)> fn;
  double domain_lo = -std::numeric_limits<double>::infinity();
  double domain_hi = std::numeric_limits<double>::infinity();
  std::string name = "f";
};

// U f(Lambda) U*. Eigenvalues within tol_dom of a domain boundary are
// clamped onto it; beyond that, DomainViolation. tol_dom < 0 selects the
// default 1e-12 * (1 + ||H||_2).
HermitianMatrix apply_function(const HermitianMatrix& h, const ScalarFunction& f,
                               double tol_dom = -1.0);
HermitianMatrix apply_function(const SpectralDecomposition& sd, const ScalarFunction& f,
                               double tol_dom = -1.0);

ScalarFunction fn_sqrt();
ScalarFunction fn_log();
ScalarFunction fn_pow(double p);  // domain (0,inf) for non-integer p
ScalarFunction fn_identity();

// X <= Y in the Loewner order, up to tol. tol < 0 selects the default
// 1e-9 * (1 + ||X||_2 + ||Y||_2).
LoewnerReport loewner_leq(const HermitianMatrix& x, const HermitianMatrix& y,
                          double tol = -1.0);

// |T| = (T*T)^{1/2}; positive semidefinite (tiny negative eigenvalues of
// T*T are clamped to zero before the square root).
HermitianMatrix abs_op(const Matrix& t);

// Largest singular value, sqrt(lambda_max(M*M)).
double operator_norm(const Matrix& m);

}  // namespace gruss
