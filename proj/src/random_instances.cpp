#include "gruss/random_instances.hpp"

#include <algorithm>
#include <cmath>

namespace gruss {

namespace {

constexpr std::uint64_t kTagBasis = 1;
constexpr std::uint64_t kTagSpectrum = 2;
constexpr std::uint64_t kTagVector = 3;
constexpr std::uint64_t kTagMatrix = 4;

Matrix seeded_gaussian(int dim, SplitMix64& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = rng.complex_gaussian();
    }
  }
  return g;
}

// Modified Gram-Schmidt; column order is fixed, so the result is a pure
// function of the input matrix.
Matrix orthonormalize(Matrix g) {
  const Eigen::Index n = g.cols();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < j; ++k) {
      const Complex proj = g.col(k).dot(g.col(j));
      g.col(j) -= proj * g.col(k);
    }
    const double nrm = g.col(j).norm();
    if (nrm < 1e-12) {
      throw NoConvergence("orthonormalize: degenerate Gaussian draw");
    }
    g.col(j) /= nrm;
  }
  return g;
}

RealVector draw_spectrum(const InstanceConfig& cfg, SplitMix64& rng) {
  RealVector lam(cfg.dim);
  for (int i = 0; i < cfg.dim; ++i) {
    lam(i) = rng.uniform(cfg.spectrum_lo, cfg.spectrum_hi);
  }
  if (cfg.include_endpoints) {
    Eigen::Index imin = 0, imax = 0;
    lam.minCoeff(&imin);
    lam.maxCoeff(&imax);
    if (cfg.dim >= 2 && imin == imax) imax = (imin + 1) % cfg.dim;
    lam(imin) = cfg.spectrum_lo;
    if (cfg.dim >= 2) lam(imax) = cfg.spectrum_hi;
  }
  return lam;
}

}  // namespace

void InstanceConfig::validate() const {
  if (dim < 1 || dim > 64) {
    throw InvalidConfig("InstanceConfig: dim " + std::to_string(dim) + " outside [1,64]");
  }
  if (!(spectrum_lo > 0.0) || !(spectrum_hi >= spectrum_lo) || !std::isfinite(spectrum_hi)) {
    throw InvalidConfig("InstanceConfig: need 0 < spectrum_lo <= spectrum_hi");
  }
}

GeneratedPd gen_pd(const InstanceConfig& cfg) {
  cfg.validate();
  SplitMix64 rng_basis = substream(cfg.seed, kTagBasis);
  SplitMix64 rng_spec = substream(cfg.seed, kTagSpectrum);
  const Matrix u = orthonormalize(seeded_gaussian(cfg.dim, rng_basis));
  RealVector lam = draw_spectrum(cfg, rng_spec);
  const Matrix m = u * lam.cast<Complex>().asDiagonal() * u.adjoint();
  RealVector sorted = lam;
  std::sort(sorted.begin(), sorted.end());
  return {HermitianMatrix(m, 1e-10), std::move(sorted)};
}

GeneratedCommutingPair gen_commuting_pair(const InstanceConfig& cfg_a,
                                          const InstanceConfig& cfg_b) {
  cfg_a.validate();
  cfg_b.validate();
  if (cfg_a.dim != cfg_b.dim) {
    throw InvalidConfig("gen_commuting_pair: dims differ");
  }
  SplitMix64 rng_basis = substream(cfg_a.seed, kTagBasis);
  const Matrix u = orthonormalize(seeded_gaussian(cfg_a.dim, rng_basis));
  SplitMix64 rng_a = substream(cfg_a.seed, kTagSpectrum);
  SplitMix64 rng_b = substream(cfg_b.seed, kTagSpectrum);
  RealVector la = draw_spectrum(cfg_a, rng_a);
  RealVector lb = draw_spectrum(cfg_b, rng_b);
  HermitianMatrix a(u * la.cast<Complex>().asDiagonal() * u.adjoint(), 1e-10);
  HermitianMatrix b(u * lb.cast<Complex>().asDiagonal() * u.adjoint(), 1e-10);
  const double floor = 0.5 * std::min(cfg_a.spectrum_lo, cfg_b.spectrum_lo);
  return {PositivePair(std::move(a), std::move(b), floor), std::move(la), std::move(lb), u};
}

Vector gen_unit_vector(int dim, std::uint64_t seed) {
  if (dim < 1) throw InvalidConfig("gen_unit_vector: dim must be >= 1");
  SplitMix64 rng = substream(seed, kTagVector);
  Vector x(dim);
  for (int i = 0; i < dim; ++i) x(i) = rng.complex_gaussian();
  const double nrm = x.norm();
  if (nrm < 1e-12) throw NoConvergence("gen_unit_vector: degenerate draw");
  return x / nrm;
}

Matrix gen_complex(int dim, std::uint64_t seed, double scale) {
  if (dim < 1) throw InvalidConfig("gen_complex: dim must be >= 1");
  SplitMix64 rng = substream(seed, kTagMatrix);
  return scale * seeded_gaussian(dim, rng);
}

Matrix gen_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw InvalidConfig("gen_unitary: dim must be >= 1");
  SplitMix64 rng = substream(seed, kTagBasis);
  return orthonormalize(seeded_gaussian(dim, rng));
}

}  // namespace gruss
