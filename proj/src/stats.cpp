#include "ramlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ramlab/compensated.hpp"
#include "ramlab/densities.hpp"
#include "ramlab/errors.hpp"

namespace ramlab {

namespace {

long double binomial(int n, int k) {
  long double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void require_nonempty(const Histogram& h) {
  if (h.total == 0) throw DomainError("statistic of an empty histogram");
}

std::uint64_t magnitude(std::int64_t d) { return static_cast<std::uint64_t>(d < 0 ? -d : d); }

}  // namespace

long double raw_moment(const Histogram& h, int k) {
  require_nonempty(h);
  CompensatedSum acc;
  for (const auto& [w, count] : h.bins) acc.add(static_cast<long double>(count) * std::pow(static_cast<long double>(w), k));
  return acc.value() / static_cast<long double>(h.total);
}

long double central_moment(const Histogram& h, int k, double X) {
  require_nonempty(h);
  const long double mu = loglog_mean(X);
  CompensatedSum acc;
  for (const auto& [w, count] : h.bins) {
    acc.add(static_cast<long double>(count) * std::pow(static_cast<long double>(w) - mu, k));
  }
  return acc.value() / static_cast<long double>(h.total);
}

TruncatedOmega::TruncatedOmega(std::uint64_t Z, std::uint64_t bound) : cutoff_(Z), bound_(bound) {
  for (std::uint32_t p : primes_up_to(std::min(Z, isqrt(bound)))) divisors_.emplace_back(p);
}

int TruncatedOmega::operator()(std::int64_t discriminant) const {
  std::uint64_t n = magnitude(discriminant);
  if (n > bound_) throw DomainError("discriminant exceeds the factoring bound");
  int count = 0;
  for (const auto& div : divisors_) {
    const std::uint64_t p = div.value();
    if (p * p > n) break;
    if (div.divides(n)) {
      ++count;
      do n /= p;
      while (div.divides(n));
    }
  }
  // whatever is left is 1, a prime, or a product of primes above Z
  if (n > 1 && n <= cutoff_) ++count;
  return count;
}

Histogram truncated_omega(std::span<const FieldRecord> records, std::uint64_t Z) {
  Histogram h;
  h.label = "omega(K; Z), Z=" + std::to_string(Z);
  const TruncatedOmega count(Z);
  std::map<int, std::uint64_t> bins;
  for (const auto& r : records) ++bins[count(r.discriminant)];
  for (const auto& [w, c] : bins) h.add(w, c);
  return h;
}

MomentPair truncated_raw_moment(const Histogram& truncated, int degree, std::uint64_t Z, int k,
                                const BernoulliFamily& model) {
  if (model.spec().degree != degree) throw DomainError("model degree does not match the field family");
  if (model.cutoff() != Z) throw DomainError("model cutoff does not match Z");
  if (k < 0 || k > 12) throw DomainError("k must be in 0..12");
  if (k == 0) return {1, 1};
  const MomentReport exact = exact_moments(model, k);
  return {raw_moment(truncated, k), exact.raw[k]};
}

MomentPair truncated_raw_moment(std::span<const FieldRecord> records, int degree, std::uint64_t Z, int k,
                                const BernoulliFamily& model) {
  return truncated_raw_moment(truncated_omega(records, Z), degree, Z, k, model);
}

long double central_from_raw(std::span<const long double> raw, long double mu, int k) {
  long double acc = 0;
  for (int j = 0; j <= k; ++j) acc += binomial(k, j) * std::pow(-mu, j) * raw[k - j];
  return acc;
}

std::uint64_t divisibility_count(std::span<const FieldRecord> records, std::uint64_t q) {
  squarefree_prime_divisors(q);  // validates q
  const FastDivisor div(q);
  std::uint64_t hits = 0;
  for (const auto& r : records) hits += div.divides(magnitude(r.discriminant)) ? 1 : 0;
  return hits;
}

StandardizedSample StandardizedSample::from(const Histogram& h, double X) {
  StandardizedSample s;
  s.X = X;
  s.mu = loglog_mean(X);
  s.values = h;
  return s;
}

double StandardizedSample::z(int omega) const { return (omega - mu) / std::sqrt(mu); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

const char* to_string(KsConvention convention) {
  return convention == KsConvention::kAtoms ? "atoms" : "half-integer";
}

double ks_distance(const StandardizedSample& sample, KsConvention convention) {
  const Histogram& h = sample.values;
  require_nonempty(h);
  const double total = static_cast<double>(h.total);
  double worst = 0;
  if (convention == KsConvention::kAtoms) {
    std::uint64_t below = 0;
    for (const auto& [w, count] : h.bins) {
      if (count == 0) continue;
      const double phi = normal_cdf(sample.z(w));
      worst = std::max(worst, std::fabs(phi - below / total));
      below += count;
      worst = std::max(worst, std::fabs(phi - below / total));
    }
    return worst;
  }
  int lo = 0, hi = 0;
  bool any = false;
  for (const auto& [w, count] : h.bins) {
    if (count == 0) continue;
    if (!any) lo = w;
    hi = w;
    any = true;
  }
  std::uint64_t below = 0;
  for (int w = lo - 1; w <= hi; ++w) {
    below += h.count(w);
    const double phi = normal_cdf((w + 0.5 - sample.mu) / std::sqrt(sample.mu));
    worst = std::max(worst, std::fabs(phi - below / total));
  }
  return worst;
}

std::vector<EcdfPoint> standardized_ecdf(const StandardizedSample& sample) {
  require_nonempty(sample.values);
  std::vector<EcdfPoint> out;
  std::uint64_t below = 0;
  const double total = static_cast<double>(sample.values.total);
  for (const auto& [w, count] : sample.values.bins) {
    if (count == 0) continue;
    below += count;
    const double z = sample.z(w);
    out.push_back({z, below / total, normal_cdf(z)});
  }
  return out;
}

MomentReport field_moments(const Histogram& h, double X, std::uint64_t Z, int k_max) {
  require_nonempty(h);
  if (k_max < 1 || k_max > 12) throw DomainError("k_max must be in 1..12");
  MomentReport report;
  report.source = MomentSource::kFields;
  report.X = X;
  report.Z = Z;
  report.k_max = k_max;
  const long double mu = loglog_mean(X);
  report.raw.resize(static_cast<std::size_t>(k_max) + 1);
  report.central.resize(static_cast<std::size_t>(k_max) + 1);
  report.standardized.resize(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) report.raw[k] = raw_moment(h, k);
  const long double mean = report.raw[1];
  for (int k = 0; k <= k_max; ++k) {
    CompensatedSum acc;
    for (const auto& [w, count] : h.bins) acc.add(static_cast<long double>(count) * std::pow(w - mean, k));
    report.central[k] = acc.value() / static_cast<long double>(h.total);
    report.standardized[k] = central_moment(h, k, X) / std::pow(mu, k / 2.0L);
  }
  return report;
}

}  // namespace ramlab
