#include "gruss/operator_means.hpp"

#include <cmath>

namespace gruss {

PositivePair::PositivePair(HermitianMatrix a, HermitianMatrix b, double min_eig_floor)
    : a_(std::move(a)), b_(std::move(b)), floor_(min_eig_floor),
      eig_a_(eigh(a_)), eig_b_(eigh(b_)) {
  require_same_dim(a_.matrix(), b_.matrix(), "PositivePair");
  if (eig_a_.min_eigenvalue() < floor_) {
    throw DomainViolation("PositivePair: lambda_min(A) = " +
                          std::to_string(eig_a_.min_eigenvalue()) + " below floor " +
                          std::to_string(floor_));
  }
  if (eig_b_.min_eigenvalue() < floor_) {
    throw DomainViolation("PositivePair: lambda_min(B) = " +
                          std::to_string(eig_b_.min_eigenvalue()) + " below floor " +
                          std::to_string(floor_));
  }
}

PairCalculus::PairCalculus(const PositivePair& pair) {
  const SpectralDecomposition& ea = pair.eig_A();
  const Eigen::Index n = ea.dim();
  RealVector root(n), inv_root(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lam = ea.eigenvalues(i);
    if (!(lam > 0.0)) {
      throw DomainViolation("PairCalculus: A lost positivity numerically");
    }
    root(i) = std::sqrt(lam);
    inv_root(i) = 1.0 / root(i);
  }
  const Matrix a_half =
      ea.eigenvectors * root.cast<Complex>().asDiagonal() * ea.eigenvectors.adjoint();
  const Matrix a_inv_half =
      ea.eigenvectors * inv_root.cast<Complex>().asDiagonal() * ea.eigenvectors.adjoint();
  Matrix c = a_inv_half * pair.B().matrix() * a_inv_half;
  const SpectralDecomposition ec = eigh(HermitianMatrix(c, 1e-9));
  w_ = a_half * ec.eigenvectors;
  mu_ = ec.eigenvalues;
}

HermitianMatrix PairCalculus::congruence(const std::function<double(double)>& h) const {
  return HermitianMatrix(congruence_raw(h), 1e-9);
}

HermitianMatrix op_mean(MeanKind kind, const PairCalculus& calc, const MeanParams& params) {
  validate(params);
  return calc.congruence(
      [kind, &params](double x) { return scalar_mean(kind, 1.0, x, params); });
}

HermitianMatrix op_mean(MeanKind kind, const PositivePair& pair, const MeanParams& params) {
  return op_mean(kind, PairCalculus(pair), params);
}

HermitianMatrix relative_entropy(const PairCalculus& calc, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidConfig("relative_entropy: p = " + std::to_string(p) + " outside [0,1]");
  }
  if (p < 1e-8) {
    return calc.congruence([](double x) {
      if (!(x > 0.0)) throw NonPositiveInput("relative_entropy: non-positive eigenvalue");
      return std::log(x);
    });
  }
  return calc.congruence([p](double x) { return deformed_log(p, x); });
}

HermitianMatrix relative_entropy(const PositivePair& pair, double p) {
  return relative_entropy(PairCalculus(pair), p);
}

HermitianMatrix log_mean_op(const PairCalculus& calc) {
  return calc.congruence([](double x) { return log_mean(1.0, x); });
}

HermitianMatrix log_mean_op(const PositivePair& pair) {
  return log_mean_op(PairCalculus(pair));
}

}  // namespace gruss
