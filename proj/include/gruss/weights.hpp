#pragma once

#include <string>

#include "gruss/types.hpp"

namespace gruss {

// The fixed, named family of non-decreasing weight functions used by the
// refinement checkers. POWER carries an exponent k > 0.
enum class WeightKind { IDENTITY, AFFINE, POWER, EXP };

const char* to_string(WeightKind k);

class MonotoneWeight {
 public:
  // Non-decreasingness is checked on a 1024-point grid at construction.
  // require_strict additionally demands g(hi) > g(lo); the refinement
  // theorems divide by that gap. A waived check admits numerically
  // constant weights for the plain Cebysev/Gruss checker.
  MonotoneWeight(WeightKind kind, double lo, double hi, double exponent = 2.0,
                 bool require_strict = true);

  double operator()(double t) const;
  WeightKind kind() const { return kind_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double exponent() const { return exponent_; }
  double g_lo() const { return g_lo_; }
  double g_hi() const { return g_hi_; }
  double gap() const { return g_hi_ - g_lo_; }

  // e.g. "pow2[0,1]"
  std::string name() const;

 private:
  WeightKind kind_;
  double lo_, hi_;
  double exponent_;
  double g_lo_, g_hi_;
};

}  // namespace gruss
