#pragma once

#include <functional>

#include "gruss/hermitian.hpp"
#include "gruss/scalar_means.hpp"

namespace gruss {

// A pair of positive definite Hermitian matrices of equal dimension.
// Positivity (lambda_min >= min_eig_floor) is verified at construction and
// the spectral decompositions are cached for reuse.
class PositivePair {
 public:
  PositivePair(HermitianMatrix a, HermitianMatrix b, double min_eig_floor = 1e-10);

  const HermitianMatrix& A() const { return a_; }
  const HermitianMatrix& B() const { return b_; }
  double min_eig_floor() const { return floor_; }
  const SpectralDecomposition& eig_A() const { return eig_a_; }
  const SpectralDecomposition& eig_B() const { return eig_b_; }
  Eigen::Index dim() const { return a_.dim(); }

 private:
  HermitianMatrix a_, b_;
  double floor_;
  SpectralDecomposition eig_a_, eig_b_;
};

// One A^{+/-1/2} factorization serving every mean of the pair: holds
// W = A^{1/2} U_C and the eigenvalues of C = A^{-1/2} B A^{-1/2}, so that
// A^{1/2} h(C) A^{1/2} = W h(mu) W* costs one matrix product per call.
class PairCalculus {
 public:
  explicit PairCalculus(const PositivePair& pair);

  const RealVector& c_eigenvalues() const { return mu_; }

  // A^{1/2} h(C) A^{1/2} as a raw matrix (summable); h is applied to the
  // eigenvalues of C.
  template <class H>
  Matrix congruence_raw(H&& h) const {
    const Eigen::Index n = mu_.size();
    Matrix scaled = w_;
    for (Eigen::Index j = 0; j < n; ++j) {
      scaled.col(j) *= Complex(h(mu_(j)), 0.0);
    }
    return scaled * w_.adjoint();
  }

  HermitianMatrix congruence(const std::function<double(double)>& h) const;

 private:
  Matrix w_;       // A^{1/2} U_C
  RealVector mu_;  // eigenvalues of C, ascending
};

// The operator mean of the pair: A^{1/2} m(1, C) A^{1/2} with the scalar
// kernel m = scalar_mean(kind, 1, x, params). POWER at t = 0 is the
// geometric mean (the analytic limit).
HermitianMatrix op_mean(MeanKind kind, const PositivePair& pair, const MeanParams& params);
HermitianMatrix op_mean(MeanKind kind, const PairCalculus& calc, const MeanParams& params);

// Tsallis relative operator entropy A^{1/2} ln_p(C) A^{1/2}; p below 1e-8
// evaluates the p = 0 (matrix logarithm) branch.
HermitianMatrix relative_entropy(const PositivePair& pair, double p);
HermitianMatrix relative_entropy(const PairCalculus& calc, double p);

// A^{1/2} f(C) A^{1/2} with f(x) = (x-1)/ln x, f(1) = 1; the operator
// logarithmic mean in functional-calculus form.
HermitianMatrix log_mean_op(const PositivePair& pair);
HermitianMatrix log_mean_op(const PairCalculus& calc);

}  // namespace gruss
