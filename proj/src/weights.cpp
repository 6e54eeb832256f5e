#include "gruss/weights.hpp"

#include <cmath>
#include <sstream>

namespace gruss {

const char* to_string(WeightKind k) {
  switch (k) {
    case WeightKind::IDENTITY: return "id";
    case WeightKind::AFFINE: return "affine";
    case WeightKind::POWER: return "pow";
    case WeightKind::EXP: return "exp";
  }
  return "?";
}

MonotoneWeight::MonotoneWeight(WeightKind kind, double lo, double hi, double exponent,
                               bool require_strict)
    : kind_(kind), lo_(lo), hi_(hi), exponent_(exponent) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidConfig("MonotoneWeight: invalid domain [" + std::to_string(lo) + "," +
                        std::to_string(hi) + "]");
  }
  if (kind == WeightKind::POWER && !(exponent > 0.0)) {
    throw InvalidConfig("MonotoneWeight: POWER exponent must be > 0");
  }
  constexpr int kGridPoints = 1024;
  double prev = 0.0;
  for (int i = 0; i < kGridPoints; ++i) {
    const double t = lo + (hi - lo) * i / (kGridPoints - 1);
    const double g = (*this)(t);
    if (!std::isfinite(g)) {
      throw InvalidConfig("MonotoneWeight(" + name() + "): non-finite value at t = " +
                          std::to_string(t));
    }
    if (i > 0 && g < prev - 1e-14 * (1.0 + std::abs(prev))) {
      throw InvalidConfig("MonotoneWeight(" + name() + "): not non-decreasing near t = " +
                          std::to_string(t));
    }
    prev = g;
  }
  g_lo_ = (*this)(lo);
  g_hi_ = (*this)(hi);
  if (require_strict && !(g_hi_ > g_lo_)) {
    throw InvalidConfig("MonotoneWeight(" + name() + "): g(hi) must exceed g(lo)");
  }
}

double MonotoneWeight::operator()(double t) const {
  switch (kind_) {
    case WeightKind::IDENTITY: return t;
    case WeightKind::AFFINE: return 2.0 * t;
    case WeightKind::POWER: return std::pow(t, exponent_);
    case WeightKind::EXP: return std::exp(t);
  }
  return 0.0;
}

std::string MonotoneWeight::name() const {
  std::ostringstream os;
  os << to_string(kind_);
  if (kind_ == WeightKind::POWER) {
    if (exponent_ == std::floor(exponent_)) {
      os << static_cast<long long>(exponent_);
    } else {
      os << exponent_;
    }
  }
  os << "[" << lo_ << "," << hi_ << "]";
  return os.str();
}

}  // namespace gruss
