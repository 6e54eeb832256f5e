#pragma once

#include <string>

#include "gruss/types.hpp"

namespace gruss {

// Binary means of positive scalars. ARITH/GEOM/HARM are v-weighted and
// ignore t; HEINZ ignores v; HERON and POWER use both parameters.
enum class MeanKind { ARITH, GEOM, HARM, HERON, HEINZ, POWER };

const char* to_string(MeanKind k);

struct MeanParams {
  double t = 0.5;  // in [-1, 1]
  double v = 0.5;  // in [0, 1]
};

void validate(const MeanParams& p);

// Weighted mean of a, b > 0. POWER with |t| below 1e-6 is served by a
// second-order expansion around the geometric mean (the t -> 0 limit).
double scalar_mean(MeanKind kind, double a, double b, const MeanParams& params);

// (b - a) / (ln b - ln a), continuously extended by L(a, a) = a.
double log_mean(double a, double b);

// (x^s - 1) / s, continuously extended by ln x at s = 0.
double deformed_log(double s, double x);

// ln^2(b/a) / (2 (ln^2(b/a) + 4)); symmetric, in [0, 1/2).
double gamma_factor(double a, double b);

namespace detail {
void require_positive(double a, double b, const char* where);
}

}  // namespace gruss
