#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ramlab {

/// All primes p <= limit, ascending. Odd-only bit sieve.
std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

/// Deterministic for all 64-bit inputs.
bool is_prime(std::uint64_t n);

std::uint64_t isqrt(std::uint64_t n);

/// Exact divisibility test by a fixed odd or even divisor using a modular
/// inverse instead of a hardware division.
class FastDivisor {
 public:
  FastDivisor() = default;
  explicit FastDivisor(std::uint64_t divisor);

  std::uint64_t value() const noexcept { return divisor_; }

  bool divides(std::uint64_t n) const noexcept {
    const std::uint64_t odd_part = n >> shift_;
    return (n & low_mask_) == 0 && odd_part * inverse_ <= limit_;
  }

 private:
  std::uint64_t divisor_ = 1;
  std::uint64_t inverse_ = 1;
  std::uint64_t limit_ = ~0ULL;
  std::uint64_t low_mask_ = 0;
  unsigned shift_ = 0;
};

}  // namespace ramlab
