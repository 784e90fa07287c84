#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ramlab/densities.hpp"
#include "ramlab/histogram.hpp"

namespace ramlab {

/// Independent Bernoulli variables R_{d,p}, one per prime p <= Z, each equal
/// to 1 with probability rho_d(p).
class BernoulliFamily {
 public:
  /// Requires cutoff >= 2.
  BernoulliFamily(FamilySpec spec, std::uint64_t cutoff);

  const FamilySpec& spec() const noexcept { return spec_; }
  std::uint64_t cutoff() const noexcept { return cutoff_; }
  std::size_t size() const noexcept { return primes_.size(); }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }

  /// Exact rho_d(p_i).
  Rational probability(std::size_t i) const;
  /// rho_d(p_i) rounded once to extended precision.
  long double probability_value(std::size_t i) const { return values_[i]; }
  std::span<const long double> probability_values() const noexcept { return values_; }

 private:
  FamilySpec spec_;
  std::uint64_t cutoff_;
  std::vector<std::uint32_t> primes_;
  std::vector<long double> values_;
};

/// Law of R_d(Z) over counts 0..cap; mass that would land above cap is
/// accumulated in tail_mass.
struct ModelDistribution {
  std::uint64_t cap = 0;
  std::vector<long double> mass;
  long double tail_mass = 0;
};

enum class MomentSource { kModelExact, kModelSampled, kFields };

std::string to_string(MomentSource source);

/// raw[k] = E(R^k), central[k] = E((R - E R)^k), standardized[k] =
/// E((R - mu(X))^k) / mu(X)^(k/2). Vectors are indexed by k with entry 0
/// equal to 1; standardized is empty when X is unset.
struct MomentReport {
  MomentSource source = MomentSource::kModelExact;
  double X = 0;  // 0 when no normalizer applies
  std::uint64_t Z = 0;
  int k_max = 0;
  std::vector<long double> raw;
  std::vector<long double> central;
  std::vector<long double> standardized;
};

/// Sequential convolution over the primes in order. Requires cap >= 1.
ModelDistribution exact_distribution(const BernoulliFamily& family, std::uint64_t cap);

/// Moments via cumulants: Bernoulli cumulants come from the moment sequence
/// (every raw moment of Bernoulli(p) equals p), are summed over primes with
/// compensated summation, then turned back into moments. 1 <= k_max <= 12.
MomentReport exact_moments(const BernoulliFamily& family, int k_max);

/// exact_moments plus E((R - mu(X))^k) / mu(X)^(k/2), expanded binomially
/// around the shifted center. Requires X > e.
MomentReport standardized_moments(const BernoulliFamily& family, double X, int k_max);

/// Moments read off a (possibly truncated) distribution; used to cross-check
/// the cumulant route.
MomentReport distribution_moments(const ModelDistribution& dist, int k_max);

/// n draws of R_d(Z). Each Bernoulli outcome is a pure function of
/// (seed, draw index, prime index), so the histogram does not depend on the
/// worker count.
Histogram sample(const BernoulliFamily& family, std::uint64_t n, std::uint64_t seed, int workers = 0);

/// floor(X^(alpha_d / (2 k (beta_d + 1)))), at least 1. Exact for integral X.
std::uint64_t paper_cutoff(const FamilySpec& spec, double X, int k);

/// E((Y + shift)^k) = sum_j C(k, j) shift^(k-j) E(Y^j), with moments[j] = E(Y^j).
long double shifted_moment(std::span<const long double> moments, long double shift, int k);

}  // namespace ramlab
