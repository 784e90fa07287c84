#include "ramlab/quadfields.hpp"

#include <algorithm>

#include "ramlab/densities.hpp"
#include "ramlab/errors.hpp"
#include "ramlab/factor_sieve.hpp"
#include "ramlab/primes.hpp"

namespace ramlab {

namespace {

bool positive_fundamental(std::uint64_t n, bool odd_square) {
  if (odd_square) return false;
  return n % 4 == 1 || n % 16 == 8 || n % 16 == 12;
}

bool negative_fundamental(std::uint64_t n, bool odd_square) {
  if (odd_square) return false;
  return n % 4 == 3 || n % 16 == 4 || n % 16 == 8;
}

}  // namespace

std::uint64_t enumerate_fundamental_discriminants(std::uint64_t X, const RecordSink& sink, int workers,
                                                  std::uint64_t segment_size) {
  if (X < 3) throw DomainError("enumerate_fundamental_discriminants requires X >= 3");
  if (X > 1'000'000'000ULL) throw DomainError("X beyond 10^9 is not supported");
  if (segment_size < 1024) throw DomainError("segment_size must be at least 2^10");
  const auto primes = primes_up_to(isqrt(X) + 1);
  const std::uint64_t count = X - 2;  // n = 3..X
  const std::uint64_t segments = (count + segment_size - 1) / segment_size;
  std::uint64_t emitted = 0;
  const int nthreads = resolve_workers(workers);
#pragma omp parallel num_threads(nthreads)
  {
    std::vector<std::uint32_t> scratch(segment_size);
    std::vector<std::uint8_t> omega(segment_size);
    std::vector<std::uint8_t> odd_square(segment_size);
    std::vector<FieldRecord> batch;
#pragma omp for ordered schedule(dynamic, 1) reduction(+ : emitted)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(segments); ++s) {
      const std::uint64_t lo = 3 + static_cast<std::uint64_t>(s) * segment_size;
      const std::uint64_t len = std::min<std::uint64_t>(segment_size, X + 1 - lo);
      SegmentOutputs out{std::span(omega.data(), len), {}, std::span(odd_square.data(), len)};
      factor_segment(lo, primes, out, scratch);
      batch.clear();
      for (std::uint64_t i = 0; i < len; ++i) {
        const std::uint64_t n = lo + i;
        const bool odd_sq = odd_square[i] != 0;
        if (positive_fundamental(n, odd_sq)) {
          batch.push_back({static_cast<std::int64_t>(n), omega[i], true});
        }
        if (negative_fundamental(n, odd_sq)) {
          batch.push_back({-static_cast<std::int64_t>(n), omega[i], true});
        }
      }
      emitted += batch.size();
#pragma omp ordered
      sink(batch);
    }
  }
  return emitted;
}

std::vector<FieldRecord> fundamental_discriminants(std::uint64_t X) {
  std::vector<FieldRecord> out;
  enumerate_fundamental_discriminants(X, [&](std::span<const FieldRecord> batch) {
    out.insert(out.end(), batch.begin(), batch.end());
  });
  return out;
}

double quadratic_divisibility_ratio(std::uint64_t X, std::uint64_t q, int workers) {
  squarefree_prime_divisors(q);  // validates q
  const FastDivisor divisor(q);
  std::uint64_t hits = 0;
  const std::uint64_t total = enumerate_fundamental_discriminants(
      X,
      [&](std::span<const FieldRecord> batch) {
        for (const auto& r : batch) {
          const auto magnitude = static_cast<std::uint64_t>(r.discriminant < 0 ? -r.discriminant : r.discriminant);
          hits += divisor.divides(magnitude) ? 1 : 0;
        }
      },
      workers);
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace ramlab
