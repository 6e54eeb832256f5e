#pragma once

#include <cstdint>
#include <utility>

#include "gruss/hermitian.hpp"
#include "gruss/operator_means.hpp"

namespace gruss {

// Identifier of the generator recipe; embedded in every report so corpora
// stay comparable across builds.
inline constexpr const char* kPrngVersion = "splitmix64-v1";

// splitmix64: state += 0x9E3779B97F4A7C15, output mixed by two
// xor-shift-multiply rounds. Fixed here (never the platform default) so any
// corpus is a pure function of (version, seed).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform on (0, 1]: ((x >> 11) + 1) * 2^-53
  double uniform01() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller on the uniform stream; consumes two uniforms per pair.
  std::pair<double, double> gaussian_pair() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.28318530717958647692 * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

  Complex complex_gaussian() {
    auto [re, im] = gaussian_pair();
    return Complex(re, im);
  }

 private:
  std::uint64_t state_;
};

// Decorrelated substream for a named purpose within one logical seed.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t tag) {
  return SplitMix64(seed ^ (tag * 0xD2B74407B1CE6E93ULL));
}

struct InstanceConfig {
  int dim = 4;                     // in [1, 64]
  std::uint64_t seed = 0;
  double spectrum_lo = 0.5;        // > 0
  double spectrum_hi = 2.0;        // >= spectrum_lo
  bool include_endpoints = false;  // pin extreme eigenvalues onto the bounds

  void validate() const;
};

struct GeneratedPd {
  HermitianMatrix matrix;
  RealVector exact_eigenvalues;  // ascending; the oracle spectrum
};

// U diag(lambda) U* with U obtained by Gram-Schmidt on a seeded complex
// Gaussian matrix and lambda uniform in [spectrum_lo, spectrum_hi].
GeneratedPd gen_pd(const InstanceConfig& cfg);

struct GeneratedCommutingPair {
  PositivePair pair;
  RealVector eigenvalues_a;  // aligned: entry i belongs to the shared basis column i
  RealVector eigenvalues_b;
  Matrix basis;
};

// A and B share one seed-derived eigenbasis; identical configs give A = B.
GeneratedCommutingPair gen_commuting_pair(const InstanceConfig& cfg_a,
                                          const InstanceConfig& cfg_b);

Vector gen_unit_vector(int dim, std::uint64_t seed);
Matrix gen_complex(int dim, std::uint64_t seed, double scale = 1.0);

// Gram-Schmidt orthonormalization of a seeded Gaussian draw.
Matrix gen_unitary(int dim, std::uint64_t seed);

}  // namespace gruss
