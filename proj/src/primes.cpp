#include "ramlab/primes.hpp"

#include <bit>
#include <algorithm>
#include <cmath>

namespace ramlab {

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  out.push_back(2);
  // bit i represents the odd number 2i+1
  const std::uint64_t half = (limit - 1) / 2 + 1;
  std::vector<std::uint64_t> composite((half + 63) / 64, 0);
  for (std::uint64_t i = 1; i < half; ++i) {
    if (composite[i >> 6] >> (i & 63) & 1) continue;
    const std::uint64_t p = 2 * i + 1;
    out.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t j = (p * p) / 2; j < half; j += p) {
      composite[j >> 6] |= 1ULL << (j & 63);
    }
  }
  return out;
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t isqrt(std::uint64_t n) {
  constexpr std::uint64_t kMax = 0xFFFFFFFFULL;
  auto r = std::min(kMax, static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n))));
  while (r > 0 && r * r > n) --r;
  while (r < kMax && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

FastDivisor::FastDivisor(std::uint64_t divisor) : divisor_(divisor) {
  shift_ = static_cast<unsigned>(std::countr_zero(divisor));
  low_mask_ = (shift_ == 0) ? 0 : ((1ULL << shift_) - 1);
  const std::uint64_t odd = divisor >> shift_;
  // Newton iteration for the inverse of odd mod 2^64
  std::uint64_t inv = odd;
  for (int i = 0; i < 6; ++i) inv *= 2 - odd * inv;
  inverse_ = inv;
  limit_ = ~0ULL / odd;
}

}  // namespace ramlab
