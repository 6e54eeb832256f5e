#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace gruss {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Error hierarchy. Everything numerical throws one of these; the CLI maps
// them onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An eigenvalue (or scalar argument) falls outside a function's domain.
class DomainViolation : public Error {
 public:
  using Error::Error;
};

// Scalar mean/entropy kernels require strictly positive arguments.
class NonPositiveInput : public DomainViolation {
 public:
  using DomainViolation::DomainViolation;
};

// Iterative scheme exhausted its cap (Jacobi sweeps, quadrature doublings).
class NoConvergence : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

// Spectral sandwich mI <= A <= MI failed where a checker requires it.
class BoundsViolated : public Error {
 public:
  using Error::Error;
};

inline void require_same_dim(const Matrix& x, const Matrix& y, const char* where) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw DimensionMismatch(std::string(where) + ": dimension mismatch (" +
                            std::to_string(x.rows()) + "x" + std::to_string(x.cols()) + " vs " +
                            std::to_string(y.rows()) + "x" + std::to_string(y.cols()) + ")");
  }
}

inline bool all_finite(const Matrix& m) {
  return m.allFinite();
}

}  // namespace gruss
