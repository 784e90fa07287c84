#pragma once

#include <array>
#include <compare>
#include <cstdint>

namespace ramlab {

using Int128 = __int128;

/// a x^3 + b x^2 y + c x y^2 + d y^3
struct CubicForm {
  std::int64_t a = 0, b = 0, c = 0, d = 0;

  friend auto operator<=>(const CubicForm&, const CubicForm&) = default;
};

/// Integral 2x2 matrix acting on forms by the twisted action
/// f |-> det(g)^-1 f((x, y) g), where (x, y) g = (m00 x + m10 y, m01 x + m11 y).
struct Unimodular {
  std::int64_t m00 = 1, m01 = 0, m10 = 0, m11 = 1;

  std::int64_t det() const { return m00 * m11 - m01 * m10; }
};

/// Covariant quadratic form P x^2 + Q x y + R y^2 with
/// P = b^2 - 3ac, Q = bc - 9ad, R = c^2 - 3bd and Q^2 - 4PR = -3 disc(f).
struct Hessian {
  Int128 P = 0, Q = 0, R = 0;
};

/// 18abcd + b^2c^2 - 4ac^3 - 4b^3d - 27a^2d^2, evaluated in 128 bits.
Int128 form_discriminant_wide(const CubicForm& f);

/// Same value; throws DomainError if it does not fit in 64 bits.
std::int64_t form_discriminant(const CubicForm& f);

Hessian hessian(const CubicForm& f);

/// Twisted GL2(Z) action. Throws DomainError unless det(g) = +-1 and the
/// result fits in 64-bit coefficients.
CubicForm transform(const CubicForm& f, const Unimodular& g);

/// f(x, y) at an integral point, exactly.
Int128 evaluate(const CubicForm& f, std::int64_t x, std::int64_t y);

/// True iff f has no rational root (and hence no linear factor over Q).
bool is_irreducible(const CubicForm& f);

/// True iff f is the chosen representative of its GL2(Z) class among forms
/// of nonzero discriminant:
///   disc < 0: with theta the real root of f(x, 1) and
///             f = (x - theta y)(a x^2 + B x y + C y^2), require a > 0 and
///             0 < B < a < C (all decided by exact integer sign tests);
///   disc > 0: the Hessian satisfies |Q| <= P <= R and a > 0; when the
///             Hessian is strictly inside that region Q > 0 as well,
///             otherwise f is the lexicographically largest (a, b, c, d)
///             among equivalent forms with reduced Hessian.
/// Only meaningful for irreducible f.
bool is_reduced(const CubicForm& f);

/// Canonical representative of the class of an irreducible form. Throws
/// DomainError for reducible input.
CubicForm reduce(const CubicForm& f);

/// Whether the cubic ring attached to f is maximal at the prime p: false iff
/// f vanishes mod p, or its multiple root mod p can be moved to (1 : 0)
/// with a = 0 (mod p^2). Primes with p^2 not dividing disc(f) return true.
bool is_maximal_at(const CubicForm& f, std::uint64_t p);

/// is_maximal_at over every prime whose square divides disc(f).
bool is_maximal(const CubicForm& f);

namespace detail {

/// Maximality test at p assuming p^2 | disc(f) is already known.
bool maximal_at_ramified(const CubicForm& f, std::uint64_t p);

/// All 2x2 matrices with entries in {-1, 0, 1} and determinant +-1.
const std::array<Unimodular, 40>& small_unimodular();

}  // namespace detail

}  // namespace ramlab
