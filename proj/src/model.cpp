#include "ramlab/model.hpp"

#include <omp.h>

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "ramlab/compensated.hpp"
#include "ramlab/errors.hpp"
#include "ramlab/factor_sieve.hpp"
#include "ramlab/primes.hpp"

namespace ramlab {

namespace {

constexpr int kMaxMomentOrder = 12;

using BinomialTable = std::array<std::array<long double, kMaxMomentOrder + 1>, kMaxMomentOrder + 1>;

const BinomialTable& binomials() {
  static const BinomialTable table = [] {
    BinomialTable t{};
    for (int n = 0; n <= kMaxMomentOrder; ++n) {
      t[n][0] = 1;
      for (int j = 1; j <= n; ++j) t[n][j] = t[n - 1][j - 1] + (j < n ? t[n - 1][j] : 0);
    }
    return t;
  }();
  return table;
}

// Moments mu_0..mu_k from cumulants kappa_1..kappa_k:
// mu_n = sum_{j=1}^{n} C(n-1, j-1) kappa_j mu_{n-j}
std::vector<long double> moments_from_cumulants(std::span<const long double> kappa, int k_max) {
  const auto& C = binomials();
  std::vector<long double> mu(static_cast<std::size_t>(k_max) + 1, 0);
  mu[0] = 1;
  for (int n = 1; n <= k_max; ++n) {
    long double acc = 0;
    for (int j = 1; j <= n; ++j) acc += C[n - 1][j - 1] * kappa[j] * mu[n - j];
    mu[n] = acc;
  }
  return mu;
}

void check_k(int k_max) {
  if (k_max < 1 || k_max > kMaxMomentOrder) {
    throw DomainError("k_max must be in 1.." + std::to_string(kMaxMomentOrder) + ", got " + std::to_string(k_max));
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string to_string(MomentSource source) {
  switch (source) {
    case MomentSource::kModelExact: return "model-exact";
    case MomentSource::kModelSampled: return "model-sampled";
    case MomentSource::kFields: return "fields";
  }
  return "unknown";
}

BernoulliFamily::BernoulliFamily(FamilySpec spec, std::uint64_t cutoff) : spec_(std::move(spec)), cutoff_(cutoff) {
  if (cutoff < 2) throw DomainError("Bernoulli family needs cutoff Z >= 2");
  if (cutoff > 1'000'000'000ULL) throw DomainError("cutoff beyond 10^9 is not supported");
  FamilySpec::of(spec_.degree);  // validates degree
  primes_ = primes_up_to(cutoff);
  values_.resize(primes_.size());
  for (std::size_t i = 0; i < primes_.size(); ++i) values_[i] = local_density_value(spec_.degree, primes_[i]);
}

Rational BernoulliFamily::probability(std::size_t i) const { return local_density(spec_, primes_.at(i)); }

ModelDistribution exact_distribution(const BernoulliFamily& family, std::uint64_t cap) {
  if (cap < 1) throw DomainError("distribution cap must be >= 1");
  ModelDistribution dist;
  dist.cap = cap;
  dist.mass.assign(cap + 1, 0);
  dist.mass[0] = 1;
  std::uint64_t reached = 0;  // highest count with nonzero mass
  for (long double p : family.probability_values()) {
    const long double q = 1 - p;
    dist.tail_mass += dist.mass[cap] * p;
    const std::uint64_t top = std::min(cap, reached + 1);
    for (std::uint64_t k = top; k >= 1; --k) dist.mass[k] = dist.mass[k] * q + dist.mass[k - 1] * p;
    dist.mass[0] *= q;
    reached = top;
    long double total = dist.tail_mass;
    for (std::uint64_t k = 0; k <= reached; ++k) total += dist.mass[k];
    if (std::fabs(total - 1) > 1e-12L) throw InvariantError("distribution mass drifted from 1");
  }
  return dist;
}

MomentReport exact_moments(const BernoulliFamily& family, int k_max) {
  check_k(k_max);
  const auto& C = binomials();
  std::array<CompensatedSum, kMaxMomentOrder + 1> sums{};
  std::array<long double, kMaxMomentOrder + 1> kappa{};
  for (long double p : family.probability_values()) {
    // Bernoulli: every raw moment equals p
    for (int n = 1; n <= k_max; ++n) {
      long double acc = p;
      for (int j = 1; j < n; ++j) acc -= C[n - 1][j - 1] * kappa[j] * p;
      kappa[n] = acc;
      sums[n].add(acc);
    }
  }
  std::vector<long double> total(static_cast<std::size_t>(k_max) + 1, 0);
  for (int n = 1; n <= k_max; ++n) total[n] = sums[n].value();

  MomentReport report;
  report.source = MomentSource::kModelExact;
  report.Z = family.cutoff();
  report.k_max = k_max;
  report.raw = moments_from_cumulants(total, k_max);
  total[1] = 0;
  report.central = moments_from_cumulants(total, k_max);
  return report;
}

long double shifted_moment(std::span<const long double> moments, long double shift, int k) {
  const auto& C = binomials();
  long double acc = 0;
  long double power = 1;  // shift^(k-j), built from j = k downwards
  for (int j = k; j >= 0; --j) {
    acc += C[k][j] * power * moments[j];
    power *= shift;
  }
  return acc;
}

MomentReport standardized_moments(const BernoulliFamily& family, double X, int k_max) {
  const double mu = loglog_mean(X);
  MomentReport report = exact_moments(family, k_max);
  report.X = X;
  const long double shift = report.raw[1] - mu;  // R - mu = (R - mean) + shift
  report.standardized.assign(static_cast<std::size_t>(k_max) + 1, 0);
  for (int k = 0; k <= k_max; ++k) {
    report.standardized[k] = shifted_moment(report.central, shift, k) / std::pow(static_cast<long double>(mu), k / 2.0L);
  }
  return report;
}

MomentReport distribution_moments(const ModelDistribution& dist, int k_max) {
  check_k(k_max);
  MomentReport report;
  report.k_max = k_max;
  report.raw.assign(static_cast<std::size_t>(k_max) + 1, 0);
  for (std::uint64_t n = 0; n < dist.mass.size(); ++n) {
    long double power = 1;
    for (int k = 0; k <= k_max; ++k) {
      report.raw[k] += dist.mass[n] * power;
      power *= static_cast<long double>(n);
    }
  }
  const long double mean = report.raw[1];
  report.central.assign(static_cast<std::size_t>(k_max) + 1, 0);
  for (std::uint64_t n = 0; n < dist.mass.size(); ++n) {
    long double power = 1;
    for (int k = 0; k <= k_max; ++k) {
      report.central[k] += dist.mass[n] * power;
      power *= static_cast<long double>(n) - mean;
    }
  }
  return report;
}

Histogram sample(const BernoulliFamily& family, std::uint64_t n, std::uint64_t seed, int workers) {
  if (n == 0) throw DomainError("sample size must be >= 1");
  const auto values = family.probability_values();
  std::vector<std::uint64_t> thresholds(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    thresholds[i] = static_cast<std::uint64_t>(std::ldexp(values[i], 64));
  }
  const std::uint64_t seed_key = splitmix64(seed);
  std::vector<std::uint64_t> counts(values.size() + 1, 0);
  const int nthreads = resolve_workers(workers);
#pragma omp parallel num_threads(nthreads)
  {
    std::vector<std::uint64_t> local(values.size() + 1, 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t draw = 0; draw < static_cast<std::int64_t>(n); ++draw) {
      // SplitMix64 stream keyed by (seed, draw), indexed by prime position
      const std::uint64_t key = splitmix64(seed_key ^ splitmix64(static_cast<std::uint64_t>(draw)));
      std::uint64_t hits = 0;
      std::uint64_t state = key;
      for (std::uint64_t t : thresholds) {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        z ^= z >> 31;
        hits += z < t;
      }
      ++local[hits];
    }
#pragma omp critical
    for (std::size_t k = 0; k < local.size(); ++k) counts[k] += local[k];
  }
  Histogram h;
  h.label = "model sample d=" + std::to_string(family.spec().degree) + " Z=" + std::to_string(family.cutoff()) +
            " n=" + std::to_string(n) + " seed=" + std::to_string(seed);
  for (std::size_t k = 0; k < counts.size(); ++k) h.add(static_cast<int>(k), counts[k]);
  return h;
}

std::uint64_t paper_cutoff(const FamilySpec& spec, double X, int k) {
  if (!(X >= 2)) throw DomainError("paper_cutoff requires X >= 2");
  if (k < 1) throw DomainError("paper_cutoff requires k >= 1");
  const Rational exponent = spec.alpha / (2 * k * (spec.beta + 1));
  const BigInt num = boost::multiprecision::numerator(exponent);
  const BigInt den = boost::multiprecision::denominator(exponent);
  const double e = static_cast<double>(exponent);
  auto z = static_cast<std::uint64_t>(std::floor(std::pow(X, e)));
  if (X == std::floor(X) && X < 1e18) {
    // exact: largest z with z^den <= X^num
    const BigInt x(static_cast<std::uint64_t>(X));
    const auto xn = boost::multiprecision::pow(x, static_cast<unsigned>(num));
    auto fits = [&](std::uint64_t cand) {
      return boost::multiprecision::pow(BigInt(cand), static_cast<unsigned>(den)) <= xn;
    };
    while (z > 0 && !fits(z)) --z;
    while (fits(z + 1)) ++z;
  }
  return std::max<std::uint64_t>(z, 1);
}

}  // namespace ramlab
