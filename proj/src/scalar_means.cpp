#include "gruss/scalar_means.hpp"

#include <cmath>

namespace gruss {

const char* to_string(MeanKind k) {
  switch (k) {
    case MeanKind::ARITH: return "ARITH";
    case MeanKind::GEOM: return "GEOM";
    case MeanKind::HARM: return "HARM";
    case MeanKind::HERON: return "HERON";
    case MeanKind::HEINZ: return "HEINZ";
    case MeanKind::POWER: return "POWER";
  }
  return "?";
}

void validate(const MeanParams& p) {
  if (!(p.t >= -1.0 && p.t <= 1.0)) {
    throw InvalidConfig("MeanParams: t = " + std::to_string(p.t) + " outside [-1,1]");
  }
  if (!(p.v >= 0.0 && p.v <= 1.0)) {
    throw InvalidConfig("MeanParams: v = " + std::to_string(p.v) + " outside [0,1]");
  }
}

namespace detail {
void require_positive(double a, double b, const char* where) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw NonPositiveInput(std::string(where) + ": arguments must be positive, got a = " +
                           std::to_string(a) + ", b = " + std::to_string(b));
  }
}
}  // namespace detail

namespace {

double geometric(double a, double b, double v) {
  if (v == 0.0) return a;
  if (v == 1.0) return b;
  return a * std::exp(v * std::log(b / a));
}

double arithmetic(double a, double b, double v) { return (1.0 - v) * a + v * b; }

double harmonic(double a, double b, double v) {
  return 1.0 / ((1.0 - v) / a + v / b);
}

// a * ((1-v) + v * (b/a)^t)^(1/t), evaluated as exp(log1p(v*expm1(t*w))/t)
// with w = ln(b/a); stable for ratios up to 1e6 and beyond.
double power(double a, double b, double t, double v) {
  if (a == b) return a;
  if (v == 0.0) return a;
  if (v == 1.0) return b;
  const double w = std::log(b / a);
  if (std::abs(t) < 1e-6) {
    // second-order expansion of log1p(v*expm1(t*w))/t around t = 0
    const double c2 = 0.5 * v * (1.0 - v) * w * w;
    const double c3 = v * (1.0 - v) * (1.0 - 2.0 * v) * w * w * w / 6.0;
    return a * std::exp(v * w + t * (c2 + t * c3));
  }
  return a * std::exp(std::log1p(v * std::expm1(t * w)) / t);
}

}  // namespace

double scalar_mean(MeanKind kind, double a, double b, const MeanParams& params) {
  detail::require_positive(a, b, "scalar_mean");
  validate(params);
  switch (kind) {
    case MeanKind::ARITH: return arithmetic(a, b, params.v);
    case MeanKind::GEOM: return geometric(a, b, params.v);
    case MeanKind::HARM: return harmonic(a, b, params.v);
    case MeanKind::HERON:
      if (params.t < 0.0) {
        throw InvalidConfig("scalar_mean(HERON): t must lie in [0,1]");
      }
      return (1.0 - params.t) * geometric(a, b, params.v) +
             params.t * arithmetic(a, b, params.v);
    case MeanKind::HEINZ:
      if (params.t < 0.0) {
        throw InvalidConfig("scalar_mean(HEINZ): t must lie in [0,1]");
      }
      return 0.5 * (geometric(a, b, params.t) + geometric(a, b, 1.0 - params.t));
    case MeanKind::POWER: return power(a, b, params.t, params.v);
  }
  throw InvalidConfig("scalar_mean: unknown kind");
}

double log_mean(double a, double b) {
  detail::require_positive(a, b, "log_mean");
  if (a == b) return a;
  const double w = std::log(b / a);
  if (std::abs(w) < 1e-6) {
    return a * (1.0 + w * (0.5 + w / 6.0));
  }
  return a * std::expm1(w) / w;
}

double deformed_log(double s, double x) {
  if (!(x > 0.0)) {
    throw NonPositiveInput("deformed_log: x must be positive, got " + std::to_string(x));
  }
  if (!(s >= 0.0 && s <= 1.0)) {
    throw InvalidConfig("deformed_log: s = " + std::to_string(s) + " outside [0,1]");
  }
  const double w = std::log(x);
  if (s < 1e-6) {
    return w * (1.0 + s * w * (0.5 + s * w / 6.0));
  }
  return std::expm1(s * w) / s;
}

double gamma_factor(double a, double b) {
  detail::require_positive(a, b, "gamma_factor");
  const double w = std::log(b / a);
  const double w2 = w * w;
  return w2 / (2.0 * (w2 + 4.0));
}

}  // namespace gruss
