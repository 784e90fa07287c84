#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace ramlab {

using BigInt = boost::multiprecision::cpp_int;
/// Always held in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// A degree d in {2,3,4,5} together with its error exponent alpha_d and
/// q-exponent beta_d from the power-saving field count.
struct FamilySpec {
  int degree = 3;
  Rational alpha;
  Rational beta;

  /// Throws DomainError unless degree is 2, 3, 4 or 5.
  static FamilySpec of(int degree);

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

/// rho_d(p) = 1 - 1/(1 + p^-1 + ... ), the density of degree-d fields whose
/// discriminant is divisible by the prime p. Rejects non-prime p.
Rational local_density(const FamilySpec& spec, std::uint64_t p);

/// Multiplicative extension of local_density to squarefree q.
/// q == 0 is a DomainError; a repeated prime raises NotSquarefreeError.
Rational density(const FamilySpec& spec, std::uint64_t q);

/// rho_d(p) as an extended-precision real. Numerator and denominator are
/// formed exactly in 128-bit integers before the single rounding step, so
/// this agrees with local_density to long double precision. No primality
/// check; used in hot loops over a prime table.
long double local_density_value(int degree, std::uint64_t p);

/// Distinct prime factors of a squarefree q, ascending. Trial division up
/// to sqrt(q).
std::vector<std::uint64_t> squarefree_prime_divisors(std::uint64_t q);

/// k-th moment of the standard Gaussian: k!/(2^(k/2) (k/2)!) for even k,
/// zero for odd k.
BigInt gaussian_moment(unsigned k);

/// mu(X) = log log X. Requires X > e.
double loglog_mean(double X);

}  // namespace ramlab
