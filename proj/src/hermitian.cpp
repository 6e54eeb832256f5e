#include "gruss/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace gruss {

HermitianMatrix::HermitianMatrix(const Matrix& m, double tol_herm) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("HermitianMatrix: matrix is not square");
  }
  if (m.rows() == 0) {
    throw InvalidConfig("HermitianMatrix: empty matrix");
  }
  if (!all_finite(m)) {
    throw InvalidConfig("HermitianMatrix: non-finite entries");
  }
  const double dev = (m - m.adjoint()).norm();
  if (dev > tol_herm * (1.0 + m.norm())) {
    throw DomainViolation("HermitianMatrix: not self-adjoint, ||M - M*||_F = " +
                          std::to_string(dev));
  }
  const Eigen::Index n = m.rows();
  m_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m_(i, i) = Complex(m(i, i).real(), 0.0);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m_(i, j) = v;
      m_(j, i) = std::conj(v);
    }
  }
}

double SpectralDecomposition::spectral_norm() const {
  return std::max(std::abs(eigenvalues(0)), std::abs(eigenvalues(eigenvalues.size() - 1)));
}

Matrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

namespace {

double offdiag_sq(const Matrix& a) {
  double s = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      s += std::norm(a(i, j));
    }
  }
  return s;
}

}  // namespace

SpectralDecomposition eigh(const HermitianMatrix& h, int max_sweeps) {
  const Eigen::Index n = h.dim();
  Matrix a = h.matrix();
  Matrix v = Matrix::Identity(n, n);

  if (n > 1) {
    const double scale_sq = std::max(1.0, a.squaredNorm());
    const double stop_sq = 1e-28 * scale_sq;
    bool converged = offdiag_sq(a) <= stop_sq;
    int sweep = 0;
    while (!converged) {
      if (sweep++ >= max_sweeps) {
        throw NoConvergence("eigh: cyclic Jacobi did not converge in " +
                            std::to_string(max_sweeps) + " sweeps");
      }
      for (Eigen::Index p = 0; p < n - 1; ++p) {
        for (Eigen::Index q = p + 1; q < n; ++q) {
          const Complex apq = a(p, q);
          const double mag = std::abs(apq);
          if (mag == 0.0) continue;
          const double app = a(p, p).real();
          const double aqq = a(q, q).real();
          const Complex phase = apq / mag;
          const double tau = (aqq - app) / (2.0 * mag);
          double t;
          if (tau >= 0.0) {
            t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
          } else {
            t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
          }
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          const Complex sd = s * std::conj(phase);  // right-multiply factor
          const Complex sdc = s * phase;            // left-multiply factor

          // columns: A <- A J with J(p,p)=c, J(q,p)=-s*conj(phase), J(p,q)=s, J(q,q)=c*conj(phase)
          for (Eigen::Index i = 0; i < n; ++i) {
            const Complex aip = a(i, p);
            const Complex aiq = a(i, q);
            a(i, p) = c * aip - sd * aiq;
            a(i, q) = s * aip + c * std::conj(phase) * aiq;
          }
          // rows: A <- J* A
          for (Eigen::Index j = 0; j < n; ++j) {
            const Complex apj = a(p, j);
            const Complex aqj = a(q, j);
            a(p, j) = c * apj - sdc * aqj;
            a(q, j) = s * apj + c * phase * aqj;
          }
          // exact zero on the annihilated pair, real diagonal
          a(p, q) = Complex(0.0, 0.0);
          a(q, p) = Complex(0.0, 0.0);
          a(p, p) = Complex(a(p, p).real(), 0.0);
          a(q, q) = Complex(a(q, q).real(), 0.0);

          for (Eigen::Index i = 0; i < n; ++i) {
            const Complex vip = v(i, p);
            const Complex viq = v(i, q);
            v(i, p) = c * vip - sd * viq;
            v(i, q) = s * vip + c * std::conj(phase) * viq;
          }
        }
      }
      converged = offdiag_sq(a) <= stop_sq;
    }
  }

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });

  SpectralDecomposition sd;
  sd.eigenvalues.resize(n);
  sd.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    sd.eigenvalues(k) = a(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]).real();
    sd.eigenvectors.col(k) = v.col(order[static_cast<size_t>(k)]);
  }
  return sd;
}

HermitianMatrix apply_function(const SpectralDecomposition& sd, const ScalarFunction& f,
                               double tol_dom) {
  if (tol_dom < 0.0) tol_dom = 1e-12 * (1.0 + sd.spectral_norm());
  const Eigen::Index n = sd.dim();
  RealVector fx(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double lam = sd.eigenvalues(i);
    if (lam < f.domain_lo) {
      if (lam >= f.domain_lo - tol_dom) {
        lam = f.domain_lo;
      } else {
        throw DomainViolation("apply_function(" + f.name + "): eigenvalue " +
                              std::to_string(lam) + " below domain bound " +
                              std::to_string(f.domain_lo));
      }
    } else if (lam > f.domain_hi) {
      if (lam <= f.domain_hi + tol_dom) {
        lam = f.domain_hi;
      } else {
        throw DomainViolation("apply_function(" + f.name + "): eigenvalue " +
                              std::to_string(lam) + " above domain bound " +
                              std::to_string(f.domain_hi));
      }
    }
    fx(i) = f.fn(lam);
    if (!std::isfinite(fx(i))) {
      throw DomainViolation("apply_function(" + f.name + "): non-finite value at eigenvalue " +
                            std::to_string(lam));
    }
  }
  Matrix out = sd.eigenvectors * fx.cast<Complex>().asDiagonal() * sd.eigenvectors.adjoint();
  return HermitianMatrix(out, 1e-10);
}

HermitianMatrix apply_function(const HermitianMatrix& h, const ScalarFunction& f,
                               double tol_dom) {
  return apply_function(eigh(h), f, tol_dom);
}

ScalarFunction fn_sqrt() {
  return {[](double x) { return std::sqrt(x); }, 0.0,
          std::numeric_limits<double>::infinity(), "sqrt"};
}

ScalarFunction fn_log() {
  ScalarFunction f;
  f.fn = [](double x) { return std::log(x); };
  f.domain_lo = std::numeric_limits<double>::min();  // strictly positive
  f.name = "log";
  return f;
}

ScalarFunction fn_pow(double p) {
  ScalarFunction f;
  f.fn = [p](double x) { return std::pow(x, p); };
  if (p == std::floor(p) && p >= 0.0) {
    f.domain_lo = -std::numeric_limits<double>::infinity();
  } else if (p == std::floor(p)) {
    f.domain_lo = std::numeric_limits<double>::min();
  } else if (p > 0.0) {
    f.domain_lo = 0.0;
  } else {
    f.domain_lo = std::numeric_limits<double>::min();
  }
  f.name = "pow(" + std::to_string(p) + ")";
  return f;
}

ScalarFunction fn_identity() {
  return {[](double x) { return x; }, -std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity(), "id"};
}

LoewnerReport loewner_leq(const HermitianMatrix& x, const HermitianMatrix& y, double tol) {
  require_same_dim(x.matrix(), y.matrix(), "loewner_leq");
  const HermitianMatrix diff(y.matrix() - x.matrix(), 1e-9);
  const SpectralDecomposition sd = eigh(diff);
  LoewnerReport rep;
  rep.min_eig_diff = sd.min_eigenvalue();
  if (tol < 0.0) {
    const double nx = eigh(x).spectral_norm();
    const double ny = eigh(y).spectral_norm();
    tol = 1e-9 * (1.0 + nx + ny);
  }
  rep.tol = tol;
  rep.holds = rep.min_eig_diff >= -tol;
  return rep;
}

HermitianMatrix abs_op(const Matrix& t) {
  if (t.rows() != t.cols()) {
    throw DimensionMismatch("abs_op: matrix is not square");
  }
  if (!all_finite(t)) {
    throw InvalidConfig("abs_op: non-finite entries");
  }
  const Matrix tt = t.adjoint() * t;
  const HermitianMatrix h(tt, 1e-9);
  SpectralDecomposition sd = eigh(h);
  // T*T is PSD in exact arithmetic; clamp roundoff negatives onto 0
  RealVector fx(sd.dim());
  for (Eigen::Index i = 0; i < sd.dim(); ++i) {
    fx(i) = std::sqrt(std::max(sd.eigenvalues(i), 0.0));
  }
  Matrix out = sd.eigenvectors * fx.cast<Complex>().asDiagonal() * sd.eigenvectors.adjoint();
  return HermitianMatrix(out, 1e-10);
}

double operator_norm(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("operator_norm: matrix is not square");
  }
  const Matrix mm = m.adjoint() * m;
  const SpectralDecomposition sd = eigh(HermitianMatrix(mm, 1e-9));
  return std::sqrt(std::max(sd.max_eigenvalue(), 0.0));
}

}  // namespace gruss
