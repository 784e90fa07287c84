#include "ramlab/intsieve.hpp"

#include <array>
#include <string>
#include <vector>

#include "ramlab/errors.hpp"
#include "ramlab/factor_sieve.hpp"
#include "ramlab/primes.hpp"

namespace ramlab {

namespace {

// omega(n) <= 9 for n < 6469693230
constexpr std::size_t kMaxOmega = 16;

Histogram to_histogram(const std::array<std::uint64_t, kMaxOmega>& counts, std::uint64_t X) {
  Histogram h;
  h.label = "integers 2..X, X=" + std::to_string(X);
  for (std::size_t w = 0; w < counts.size(); ++w) h.add(static_cast<int>(w), counts[w]);
  return h;
}

void check_range(std::uint64_t X) {
  if (X < 2) throw DomainError("omega_histogram requires X >= 2");
  if (X > 4'000'000'000ULL) throw DomainError("omega_histogram: X beyond supported range");
}

}  // namespace

int omega_of(std::uint64_t n) {
  if (n == 0) throw DomainError("omega_of(0) is undefined");
  int count = 0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    ++count;
    while (n % p == 0) n /= p;
  }
  return count + (n > 1 ? 1 : 0);
}

Histogram omega_histogram(std::uint64_t X, std::uint64_t segment_size, int workers) {
  check_range(X);
  if (segment_size < 1024) throw DomainError("segment_size must be at least 2^10");
  const auto primes = primes_up_to(isqrt(X) + 1);
  const std::uint64_t count = X - 1;  // n = 2..X
  const std::uint64_t segments = (count + segment_size - 1) / segment_size;
  std::array<std::uint64_t, kMaxOmega> totals{};
  const int nthreads = resolve_workers(workers);
#pragma omp parallel num_threads(nthreads)
  {
    std::vector<std::uint32_t> scratch(segment_size);
    std::vector<std::uint8_t> omega(segment_size);
    std::array<std::uint64_t, kMaxOmega> local{};
#pragma omp for schedule(dynamic, 1) nowait
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(segments); ++s) {
      const std::uint64_t lo = 2 + static_cast<std::uint64_t>(s) * segment_size;
      const std::uint64_t len = std::min<std::uint64_t>(segment_size, X + 1 - lo);
      std::span<std::uint8_t> slot(omega.data(), len);
      factor_segment(lo, primes, SegmentOutputs{slot, {}, {}}, scratch);
      for (std::uint8_t w : slot) ++local[w];
    }
#pragma omp critical
    for (std::size_t w = 0; w < kMaxOmega; ++w) totals[w] += local[w];
  }
  return to_histogram(totals, X);
}

Histogram omega_histogram_reference(std::uint64_t X) {
  check_range(X);
  const auto primes = primes_up_to(X);
  std::vector<std::uint8_t> counter(X + 1, 0);
  for (std::uint64_t p : primes) {
    for (std::uint64_t m = p; m <= X; m += p) ++counter[m];
  }
  std::array<std::uint64_t, kMaxOmega> totals{};
  for (std::uint64_t n = 2; n <= X; ++n) ++totals[counter[n]];
  return to_histogram(totals, X);
}

}  // namespace ramlab
