#include "ramlab/factor_sieve.hpp"

#include <omp.h>

#include <algorithm>

#include "ramlab/errors.hpp"
#include "ramlab/primes.hpp"

namespace ramlab {

void factor_segment(std::uint64_t lo, std::span<const std::uint32_t> small_primes,
                    const SegmentOutputs& out, std::span<std::uint32_t> scratch) {
  const std::size_t len = std::max({out.omega.size(), out.square_prime.size(), out.odd_square.size()});
  if (len == 0) return;
  if (scratch.size() < len) throw InvariantError("factor_segment: scratch too small");
  const std::uint64_t hi = lo + len;  // exclusive

  // scratch[i] accumulates the product of the prime powers found so far
  std::fill_n(scratch.begin(), len, 1u);
  const bool want_omega = !out.omega.empty();
  if (want_omega) std::fill(out.omega.begin(), out.omega.end(), 0);
  if (!out.square_prime.empty()) std::fill(out.square_prime.begin(), out.square_prime.end(), 0);
  if (!out.odd_square.empty()) std::fill(out.odd_square.begin(), out.odd_square.end(), 0);

  for (std::size_t idx = 0; idx < small_primes.size(); ++idx) {
    const std::uint64_t p = small_primes[idx];
    if (p * p >= hi) break;
    std::uint64_t first = (lo + p - 1) / p * p;
    for (std::uint64_t m = first; m < hi; m += p) {
      const std::size_t i = m - lo;
      scratch[i] *= static_cast<std::uint32_t>(p);
      if (want_omega) ++out.omega[i];
    }
    const std::uint64_t sq = p * p;
    first = (lo + sq - 1) / sq * sq;
    for (std::uint64_t m = first; m < hi; m += sq) {
      const std::size_t i = m - lo;
      if (!out.square_prime.empty() && out.square_prime[i] == 0) {
        out.square_prime[i] = static_cast<std::uint16_t>(idx + 1);
      }
      if (!out.odd_square.empty() && p != 2) out.odd_square[i] = 1;
    }
    for (std::uint64_t power = sq; power < hi; power *= p) {
      first = (lo + power - 1) / power * power;
      for (std::uint64_t m = first; m < hi; m += power) scratch[m - lo] *= static_cast<std::uint32_t>(p);
      if (power > hi / p) break;
    }
  }

  if (want_omega) {
    for (std::size_t i = 0; i < len; ++i) {
      const std::uint64_t n = lo + i;
      if (n > 1 && scratch[i] != n) ++out.omega[i];
    }
  }
}

int resolve_workers(int workers) {
  if (workers < 0) throw ConfigError("worker count must be >= 1");
  return workers == 0 ? omp_get_max_threads() : workers;
}

FactorTable::FactorTable(std::uint64_t limit, std::uint64_t segment_size, int workers)
    : limit_(limit),
      primes_(primes_up_to(isqrt(limit) + 1)),
      omega_(limit + 1, 0),
      square_prime_(limit + 1, 0) {
  if (limit > 4'000'000'000ULL) throw DomainError("FactorTable limit too large");
  if (segment_size < 1024) throw DomainError("segment size must be at least 1024");
  if (primes_.size() >= 65535) throw DomainError("FactorTable limit too large for 16-bit prime slots");
  const std::uint64_t count = limit + 1;
  const std::uint64_t segments = (count + segment_size - 1) / segment_size;
  const int nthreads = resolve_workers(workers);
#pragma omp parallel num_threads(nthreads)
  {
    std::vector<std::uint32_t> scratch(segment_size);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(segments); ++s) {
      const std::uint64_t lo = static_cast<std::uint64_t>(s) * segment_size;
      const std::uint64_t len = std::min<std::uint64_t>(segment_size, count - lo);
      SegmentOutputs out{
          std::span(omega_).subspan(lo, len),
          std::span(square_prime_).subspan(lo, len),
          {},
      };
      factor_segment(lo, primes_, out, scratch);
    }
  }
}

}  // namespace ramlab
