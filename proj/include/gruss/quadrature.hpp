#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "gruss/types.hpp"

namespace gruss {

struct QuadratureConfig {
  int nodes_per_panel = 16;
  int initial_panels = 4;
  int max_doublings = 12;
  double atol = 1e-11;
  double rtol = 1e-10;

  void validate() const {
    if (nodes_per_panel < 1 || initial_panels < 1 || max_doublings < 0 ||
        !(atol > 0.0) || !(rtol > 0.0)) {
      throw InvalidConfig("QuadratureConfig: counts must be positive and tolerances > 0");
    }
  }
};

template <class T>
struct QuadratureResult {
  T value;
  double error_estimate = 0.0;  // Frobenius/absolute gap between the last two refinements
  int panels = 0;               // panel count of the returned (finer) result
};

// Scalar- or matrix-valued integrand with optional explicit values at the
// interval endpoints, for integrands defined only on the open interval
// (removable singularities; the caller knows the analytic limit).
template <class T>
struct Integrand {
  std::function<T(double)> evaluate;
  std::optional<T> value_at_lo;
  std::optional<T> value_at_hi;
  double lo = 0.0;
  double hi = 1.0;

  T operator()(double t) const {
    if (t == lo && value_at_lo) return *value_at_lo;
    if (t == hi && value_at_hi) return *value_at_hi;
    return evaluate(t);
  }
};

namespace quad_detail {

// Gauss-Legendre nodes (ascending, on [-1,1]) and weights, computed once
// per order by Newton iteration on the Legendre recurrence.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_rule(int n);

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Matrix& m) { return m.norm(); }

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Matrix& m) { return m.allFinite(); }

inline void symmetrize_if_matrix(double&) {}
inline void symmetrize_if_matrix(Matrix& m) { m = 0.5 * (m + m.adjoint()).eval(); }

}  // namespace quad_detail

// Composite Gauss-Legendre over [lo, hi]; the panel count doubles until the
// gap between successive refinements is at or below atol + rtol*|result|.
// Returns the finer result; matrix results are symmetrized after summation.
template <class F>
auto integrate(F&& f, double lo, double hi, const QuadratureConfig& cfg = {})
    -> QuadratureResult<std::decay_t<decltype(f(lo))>> {
  using T = std::decay_t<decltype(f(lo))>;
  cfg.validate();
  if (!(lo < hi)) {
    throw InvalidConfig("integrate: requires lo < hi");
  }
  const auto& rule = quad_detail::gauss_rule(cfg.nodes_per_panel);

  auto composite = [&](int panels) -> T {
    const double h = (hi - lo) / panels;
    bool first = true;
    T acc{};
    for (int p = 0; p < panels; ++p) {
      const double a = lo + p * h;
      const double mid = a + 0.5 * h;
      const double half = 0.5 * h;
      for (int k = 0; k < cfg.nodes_per_panel; ++k) {
        const double t = mid + half * rule.nodes[static_cast<size_t>(k)];
        T val = f(t);
        if (!quad_detail::is_finite(val)) {
          throw DomainViolation("integrate: non-finite integrand value at t = " +
                                std::to_string(t));
        }
        const double w = half * rule.weights[static_cast<size_t>(k)];
        if (first) {
          acc = w * val;
          first = false;
        } else {
          acc += w * val;
        }
      }
    }
    return acc;
  };

  int panels = cfg.initial_panels;
  T coarse = composite(panels);
  for (int d = 0; d < cfg.max_doublings; ++d) {
    panels *= 2;
    T fine = composite(panels);
    const double gap = quad_detail::magnitude(static_cast<T>(fine - coarse));
    if (gap <= cfg.atol + cfg.rtol * quad_detail::magnitude(fine)) {
      quad_detail::symmetrize_if_matrix(fine);
      return {std::move(fine), gap, panels};
    }
    coarse = std::move(fine);
  }
  throw NoConvergence("integrate: tolerance unmet after " +
                      std::to_string(cfg.max_doublings) + " doublings");
}

template <class T>
QuadratureResult<T> integrate(const Integrand<T>& f, double lo, double hi,
                              const QuadratureConfig& cfg = {}) {
  return integrate([&f](double t) { return f(t); }, lo, hi, cfg);
}

}  // namespace gruss
