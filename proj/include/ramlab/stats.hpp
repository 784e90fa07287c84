#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "ramlab/histogram.hpp"
#include "ramlab/model.hpp"
#include "ramlab/primes.hpp"

namespace ramlab {

/// (1/total) sum count(w) (w - mu(X))^k with mu(X) = log log X.
/// Rejects empty histograms and X <= e.
long double central_moment(const Histogram& h, int k, double X);

/// Counts the primes p <= Z dividing a discriminant with |D| <= bound, by
/// trial division over the primes up to min(Z, sqrt(bound)). Any Z >= bound
/// gives the full omega.
class TruncatedOmega {
 public:
  explicit TruncatedOmega(std::uint64_t Z, std::uint64_t bound = 1'000'000'000);

  std::uint64_t cutoff() const noexcept { return cutoff_; }
  int operator()(std::int64_t discriminant) const;

 private:
  std::uint64_t cutoff_;
  std::uint64_t bound_;
  std::vector<FastDivisor> divisors_;
};

/// Histogram of omega(K; Z) = #{p <= Z : p | D_K}.
Histogram truncated_omega(std::span<const FieldRecord> records, std::uint64_t Z);

struct MomentPair {
  long double fields = 0;  // (1/N) sum omega(K; Z)^k
  long double model = 0;   // E(R_d(Z)^k)
};

/// Field-side truncated raw moment next to the model's raw moment. The model
/// must have the records' degree and cutoff Z; 0 <= k <= 12.
MomentPair truncated_raw_moment(std::span<const FieldRecord> records, int degree, std::uint64_t Z, int k,
                                const BernoulliFamily& model);

/// Same comparison from an already computed omega(K; Z) histogram.
MomentPair truncated_raw_moment(const Histogram& truncated, int degree, std::uint64_t Z, int k,
                                const BernoulliFamily& model);

/// (1/total) sum count(w) w^k.
long double raw_moment(const Histogram& h, int k);

/// sum_j C(k, j) (-mu)^j raw[k - j], with raw[j] the j-th raw moment.
long double central_from_raw(std::span<const long double> raw, long double mu, int k);

/// Number of records with q | D_K; q must be squarefree.
std::uint64_t divisibility_count(std::span<const FieldRecord> records, std::uint64_t q);

/// omega histogram of a field sample with the Gaussian normalization
/// z(w) = (w - mu) / sqrt(mu).
struct StandardizedSample {
  double X = 0;
  double mu = 0;
  Histogram values;

  /// Requires X > e.
  static StandardizedSample from(const Histogram& h, double X);
  double z(int omega) const;
};

/// Standard normal CDF.
double normal_cdf(double z);

enum class KsConvention {
  /// sup over all real z; the empirical CDF is a step function jumping at
  /// each standardized atom, compared on both sides of every jump
  kAtoms,
  /// empirical CDF at w + 1/2 against Phi(z(w + 1/2)) for every integer w
  /// between the smallest and largest occupied bin (continuity correction)
  kHalfInteger,
};

const char* to_string(KsConvention convention);

/// Kolmogorov-Smirnov distance between the standardized sample and Phi.
double ks_distance(const StandardizedSample& sample, KsConvention convention = KsConvention::kAtoms);

struct EcdfPoint {
  double z = 0;
  double empirical = 0;
  double gaussian = 0;
};

/// (z, empirical CDF at z, Phi(z)) at every occupied atom.
std::vector<EcdfPoint> standardized_ecdf(const StandardizedSample& sample);

/// Moment report for field data: raw and central (about the sample mean)
/// moments of omega, and standardized[k] = M_k(X) / mu(X)^(k/2) where
/// M_k(X) = central_moment(h, k, X).
MomentReport field_moments(const Histogram& h, double X, std::uint64_t Z, int k_max);

}  // namespace ramlab
