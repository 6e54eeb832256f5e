#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gruss/operator_means.hpp"
#include "gruss/quadrature.hpp"
#include "gruss/weights.hpp"

namespace gruss {

// One refinement theorem checked on one instance. margin is the slack of
// the binding inequality (scalar gap, or Loewner min_eig_diff); holds is
// margin >= -tol with tol coupling the scale-aware slack and the quadrature
// error additively.
struct InequalityReport {
  std::string suite_id;
  std::string inputs_digest;
  double margin = 0.0;
  double tol = 0.0;
  double refinement_gain = 0.0;
  double quadrature_error = 0.0;
  bool holds = false;
  std::optional<LoewnerReport> loewner;
  std::vector<std::pair<std::string, double>> extras;

  double extra(const std::string& key) const;
};

enum class ScalarSuite { THM1, CHAIN, THM2, COR3, COR_GAMMA };
enum class OperatorSuite { OP_HERON, OP_HEINZ_LOG, OP_POWER_AG, OP_POWER_HG, OP_ENTROPY };

const char* to_string(ScalarSuite s);
const char* to_string(OperatorSuite s);

// Cebysev / Gruss functional of two same-monotone weights on a shared
// domain: verifies T(f,g) >= 0 and T(f,g) <= (M-m)(N-n)/4 for the
// normalized functional T.
InequalityReport check_gruss_base(const MonotoneWeight& f, const MonotoneWeight& g,
                                  double m, double M, double n, double N,
                                  const QuadratureConfig& qcfg = {});

// Scalar refinement checkers. THM1 uses v and a [0,1] weight; CHAIN uses a
// [0,1] weight at v = 1/2; THM2 uses a [1/2,1] weight; COR3 and COR_GAMMA
// are closed forms and ignore g (pass any weight).
InequalityReport check_scalar_refinement(ScalarSuite suite, double a, double b, double v,
                                         const MonotoneWeight& g,
                                         const QuadratureConfig& qcfg = {});

// Operator refinement checkers; both sides are built with matrix-valued
// quadrature and compared in the Loewner order with tolerance
// psd_coef*(1 + ||LHS||_2 + ||RHS||_2) + quadrature error. s is used only
// by OP_ENTROPY (whose weight is fixed to 2t); the g argument must match
// the suite's domain ([0,1], [1/2,1] or [-1,0]).
InequalityReport check_operator_refinement(OperatorSuite suite, const PositivePair& pair,
                                           const MeanParams& params, const MonotoneWeight& g,
                                           double s = 0.5, const QuadratureConfig& qcfg = {},
                                           double psd_coef = 1e-9);

// The two one-variable lower bounds on (x+1)/2 - sqrt(x) and their mutual
// ordering; both bounds are asserted individually, the ordering is only
// recorded.
struct Eq67Record {
  double x = 1.0;
  double lhs6 = 0.0;
  double lhs7 = 0.0;
  double rhs = 0.0;
  double margin6 = 0.0;
  double margin7 = 0.0;
  int ordering = 0;  // sign(lhs7 - lhs6)
  bool holds = false;
};

Eq67Record compare_eq6_eq7(double x);

// Sign changes of lhs7(x) - lhs6(x) on a log-spaced grid, refined by
// bisection to relative width bisect_tol. Empty when no sign change.
std::vector<double> find_ordering_crossovers(double lo, double hi, int grid_points,
                                             double bisect_tol);

namespace suites_detail {
// Refinement term of the closed-form corollary at x = e^w; Taylor series
// for |w| <= 0.5 (the direct form loses all digits near w = 0), direct
// evaluation otherwise.
double cor3_refinement_term(double w);
}

}  // namespace gruss
