#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ramlab {

/// Output slots for factor_segment. Any span may be empty to skip it;
/// non-empty spans must cover the whole segment.
struct SegmentOutputs {
  /// omega(n), number of distinct prime factors
  std::span<std::uint8_t> omega;
  /// 1 + index into the prime list of the smallest p with p^2 | n, or 0
  std::span<std::uint16_t> square_prime;
  /// non-zero iff p^2 | n for some odd prime p
  std::span<std::uint8_t> odd_square;
};

/// Sieves the segment [lo, lo + len) where len is the common span length.
/// small_primes must contain every prime up to sqrt(lo + len - 1); scratch
/// must have at least len entries. Each prime p marks its multiples and
/// its prime-power multiples; the single prime factor above sqrt(n), if
/// any, is detected from the leftover cofactor.
void factor_segment(std::uint64_t lo, std::span<const std::uint32_t> small_primes,
                    const SegmentOutputs& out, std::span<std::uint32_t> scratch);

/// Resolves a worker count: 0 means the OpenMP default.
int resolve_workers(int workers);

/// omega and square-divisor data for every n <= limit, built once and
/// shared read-only.
class FactorTable {
 public:
  FactorTable(std::uint64_t limit, std::uint64_t segment_size = 1u << 20, int workers = 0);

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }

  int omega(std::uint64_t n) const { return omega_[n]; }
  bool squarefree(std::uint64_t n) const { return square_prime_[n] == 0; }

  /// Calls fn(p) for every prime p with p^2 | n, ascending.
  template <class Fn>
  void for_each_square_prime(std::uint64_t n, Fn&& fn) const {
    while (n > 1) {
      const std::uint16_t slot = square_prime_[n];
      if (slot == 0) return;
      const std::uint64_t p = primes_[slot - 1];
      fn(p);
      do n /= p;
      while (n % p == 0);
    }
  }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> primes_;
  std::vector<std::uint8_t> omega_;
  std::vector<std::uint16_t> square_prime_;
};

}  // namespace ramlab
