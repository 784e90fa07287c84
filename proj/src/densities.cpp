#include "ramlab/densities.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <string>

#include "ramlab/errors.hpp"
#include "ramlab/primes.hpp"

namespace ramlab {

namespace {

// Coefficients of 1 + c1 p^-1 + c2 p^-2 + ... per degree.
std::span<const unsigned> series_coefficients(int degree) {
  static constexpr unsigned d2[] = {1, 1};
  static constexpr unsigned d3[] = {1, 1, 1};
  static constexpr unsigned d4[] = {1, 1, 2, 1};
  static constexpr unsigned d5[] = {1, 1, 2, 2, 1};
  switch (degree) {
    case 2: return d2;
    case 3: return d3;
    case 4: return d4;
    case 5: return d5;
    default: throw DomainError("degree must be 2, 3, 4 or 5, got " + std::to_string(degree));
  }
}

}  // namespace

FamilySpec FamilySpec::of(int degree) {
  switch (degree) {
    case 2: return {2, Rational(1, 2), Rational(-1, 2)};
    case 3: return {3, Rational(1, 6), Rational(2, 3)};
    case 4: return {4, Rational(1, 240), Rational(9, 10)};
    case 5: return {5, Rational(1, 200), Rational(1)};
    default: throw DomainError("degree must be 2, 3, 4 or 5, got " + std::to_string(degree));
  }
}

Rational local_density(const FamilySpec& spec, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  const auto coeffs = series_coefficients(spec.degree);
  Rational series = 0;
  Rational inv_power = 1;
  const Rational inv_p(1, p);
  for (unsigned c : coeffs) {
    series += c * inv_power;
    inv_power *= inv_p;
  }
  return 1 - 1 / series;
}

std::vector<std::uint64_t> squarefree_prime_divisors(std::uint64_t q) {
  if (q == 0) throw DomainError("q must be a positive squarefree integer, got 0");
  std::vector<std::uint64_t> out;
  std::uint64_t rest = q;
  for (std::uint64_t p = 2; p * p <= rest; p += (p == 2 ? 1 : 2)) {
    if (rest % p != 0) continue;
    rest /= p;
    if (rest % p == 0) throw NotSquarefreeError(q, p);
    out.push_back(p);
  }
  if (rest > 1) out.push_back(rest);
  return out;
}

Rational density(const FamilySpec& spec, std::uint64_t q) {
  Rational result = 1;
  for (std::uint64_t p : squarefree_prime_divisors(q)) result *= local_density(spec, p);
  return result;
}

long double local_density_value(int degree, std::uint64_t p) {
  using u128 = unsigned __int128;
  const auto coeffs = series_coefficients(degree);
  // rho = (N - p^n) / N with N = sum c_i p^(n-i)
  u128 total = 0;
  for (unsigned c : coeffs) total = total * p + c;
  u128 lead = 1;
  for (std::size_t i = 1; i < coeffs.size(); ++i) lead *= p;
  return static_cast<long double>(total - lead) / static_cast<long double>(total);
}

BigInt gaussian_moment(unsigned k) {
  if (k % 2 == 1) return 0;
  // (k-1)!! = k! / (2^(k/2) (k/2)!)
  BigInt r = 1;
  for (unsigned j = 1; j < k; j += 2) r *= j;
  return r;
}

double loglog_mean(double X) {
  if (!(X > std::numbers::e)) {
    throw DomainError("log log X requires X > e, got " + std::to_string(X));
  }
  return std::log(std::log(X));
}

}  // namespace ramlab
