#include "ramlab/cubic_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ramlab/errors.hpp"
#include "ramlab/primes.hpp"

namespace ramlab {

namespace {

using Poly3 = std::array<Int128, 4>;  // coefficients of x^3, x^2 y, x y^2, y^3

std::int64_t narrow(Int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw DomainError("cubic form coefficient overflows 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

Int128 floor_div(Int128 num, Int128 den) {
  Int128 q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

// Projective-root tables: has_root[l][((a*l+b)*l+c)*l+d] for small primes l.
struct RootTables {
  static constexpr std::array<int, 6> primes{2, 3, 5, 7, 11, 13};
  std::array<std::vector<std::uint8_t>, 6> has_root;

  RootTables() {
    for (std::size_t k = 0; k < primes.size(); ++k) {
      const int l = primes[k];
      has_root[k].assign(static_cast<std::size_t>(l * l * l * l), 0);
      for (int a = 0; a < l; ++a)
        for (int b = 0; b < l; ++b)
          for (int c = 0; c < l; ++c)
            for (int d = 0; d < l; ++d) {
              bool root = (a == 0);  // the point (1 : 0)
              for (int x = 0; x < l && !root; ++x) root = ((a * x * x * x + b * x * x + c * x + d) % l) == 0;
              has_root[k][static_cast<std::size_t>(((a * l + b) * l + c) * l + d)] = root;
            }
    }
  }
};

const RootTables& root_tables() {
  static const RootTables tables;
  return tables;
}

int mod_small(std::int64_t v, int l) {
  const int r = static_cast<int>(v % l);
  return r < 0 ? r + l : r;
}

long double eval_real(const CubicForm& f, long double x) {
  return ((static_cast<long double>(f.a) * x + f.b) * x + f.c) * x + f.d;
}

// Real roots of f(x, 1) for a != 0, each refined by bisection on a monotone piece.
std::vector<long double> real_roots(const CubicForm& f) {
  const long double a = f.a, b = f.b, c = f.c, d = f.d;
  const long double bound = 1 + std::max({std::fabs(b), std::fabs(c), std::fabs(d)}) / std::fabs(a);
  std::vector<long double> cuts{-bound};
  const long double disc = 4 * b * b - 12 * a * c;  // of the derivative
  if (disc > 0) {
    const long double s = std::sqrt(disc);
    long double x1 = (-2 * b - s) / (6 * a), x2 = (-2 * b + s) / (6 * a);
    if (x1 > x2) std::swap(x1, x2);
    cuts.push_back(x1);
    cuts.push_back(x2);
  }
  cuts.push_back(bound);
  std::vector<long double> roots;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    long double lo = cuts[i], hi = cuts[i + 1];
    long double flo = eval_real(f, lo), fhi = eval_real(f, hi);
    if (flo == 0) {
      roots.push_back(lo);
      continue;
    }
    if ((flo < 0) == (fhi < 0)) continue;
    for (int it = 0; it < 200 && hi - lo > 0; ++it) {
      const long double mid = (lo + hi) / 2;
      if (mid == lo || mid == hi) break;
      const long double fm = eval_real(f, mid);
      if ((fm < 0) == (flo < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    roots.push_back((lo + hi) / 2);
  }
  for (std::size_t i = 1; i + 1 < cuts.size(); ++i) roots.push_back(cuts[i]);
  return roots;
}

bool hessian_reduced(const Hessian& h) {
  const Int128 absq = h.Q < 0 ? -h.Q : h.Q;
  return absq <= h.P && h.P <= h.R;
}

bool hessian_interior(const Hessian& h) {
  const Int128 absq = h.Q < 0 ? -h.Q : h.Q;
  return h.Q != 0 && absq < h.P && h.P < h.R;
}

CubicForm boundary_canonical(const CubicForm& f) {
  CubicForm best = f;
  for (const auto& g : detail::small_unimodular()) {
    const CubicForm h = transform(f, g);
    if (hessian_reduced(hessian(h)) && h > best) best = h;
  }
  return best;
}

// Exact sign tests for disc < 0, a > 0, with B, C as in is_reduced.
bool neg_B_positive(const CubicForm& f) {
  return static_cast<Int128>(f.b) * f.c - static_cast<Int128>(f.a) * f.d > 0;
}
bool neg_B_below_a(const CubicForm& f) {
  const Int128 u = static_cast<Int128>(f.a) - f.b;
  return u * u + static_cast<Int128>(f.c) * u + static_cast<Int128>(f.a) * f.d > 0;
}
bool neg_B_above_minus_a(const CubicForm& f) {
  const Int128 u = static_cast<Int128>(f.a) + f.b;
  return -u * u - static_cast<Int128>(f.c) * u + static_cast<Int128>(f.a) * f.d < 0;
}
bool neg_C_above_a(const CubicForm& f) {
  const Int128 a = f.a, b = f.b, c = f.c, d = f.d;
  return d * d - a * a + a * c - b * d > 0;
}

constexpr Unimodular kSwap{0, -1, 1, 0};  // (x, y) -> (y, -x)
constexpr Unimodular kNegate{-1, 0, 0, -1};
constexpr Unimodular kFlip{1, 0, 0, -1};

Unimodular translation(std::int64_t t) { return {1, 0, t, 1}; }  // (x, y) -> (x + t y, y)

CubicForm reduce_negative(CubicForm f) {
  for (int iter = 0; iter < 10000; ++iter) {
    if (f.a < 0) f = transform(f, kNegate);
    // theta is the unique real root; B = b + a theta
    const auto roots = real_roots(f);
    long double theta = roots.empty() ? 0 : roots.front();
    for (long double r : roots) {
      if (std::fabs(eval_real(f, r)) < std::fabs(eval_real(f, theta))) theta = r;
    }
    const long double B = f.b + f.a * theta;
    auto t = static_cast<std::int64_t>(std::llround(-B / (2.0L * f.a)));
    CubicForm g = transform(f, translation(t));
    for (int fix = 0; fix < 64 && !(neg_B_above_minus_a(g) && neg_B_below_a(g)); ++fix) {
      t += neg_B_below_a(g) ? 1 : -1;
      g = transform(f, translation(t));
    }
    if (!(neg_B_above_minus_a(g) && neg_B_below_a(g))) throw InvariantError("reduce: translation step failed");
    f = g;
    if (neg_C_above_a(f)) {
      if (!neg_B_positive(f)) f = transform(transform(f, kFlip), kNegate);
      return f;
    }
    f = transform(f, kSwap);
  }
  throw InvariantError("reduce: no convergence for negative discriminant");
}

CubicForm reduce_positive(CubicForm f) {
  for (int iter = 0; iter < 10000; ++iter) {
    Hessian h = hessian(f);
    const Int128 t = floor_div(h.P - h.Q, 2 * h.P);
    if (t != 0) {
      f = transform(f, translation(narrow(t)));
      h = hessian(f);
    }
    if (h.R < h.P) {
      f = transform(f, kSwap);
      continue;
    }
    if (hessian_interior(h)) {
      if (h.Q < 0) f = transform(f, kFlip);
      if (f.a < 0) f = transform(f, kNegate);
      return f;
    }
    return boundary_canonical(f);
  }
  throw InvariantError("reduce: no convergence for positive discriminant");
}

}  // namespace

Int128 form_discriminant_wide(const CubicForm& f) {
  const Int128 a = f.a, b = f.b, c = f.c, d = f.d;
  return 18 * a * b * c * d + b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d;
}

std::int64_t form_discriminant(const CubicForm& f) {
  const Int128 D = form_discriminant_wide(f);
  if (D > std::numeric_limits<std::int64_t>::max() || D < std::numeric_limits<std::int64_t>::min()) {
    throw DomainError("discriminant overflows 64 bits");
  }
  return static_cast<std::int64_t>(D);
}

Hessian hessian(const CubicForm& f) {
  const Int128 a = f.a, b = f.b, c = f.c, d = f.d;
  return {b * b - 3 * a * c, b * c - 9 * a * d, c * c - 3 * b * d};
}

CubicForm transform(const CubicForm& f, const Unimodular& g) {
  const std::int64_t det = g.det();
  if (det != 1 && det != -1) throw DomainError("transform requires determinant +-1");
  // X = m00 x + m10 y, Y = m01 x + m11 y
  const std::array<Int128, 2> X{g.m00, g.m10};
  const std::array<Int128, 2> Y{g.m01, g.m11};
  auto mul3 = [](const std::array<Int128, 2>& u, const std::array<Int128, 2>& v,
                 const std::array<Int128, 2>& w) {
    Poly3 out{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) out[i + j + k] += u[i] * v[j] * w[k];
    return out;
  };
  const Poly3 xxx = mul3(X, X, X), xxy = mul3(X, X, Y), xyy = mul3(X, Y, Y), yyy = mul3(Y, Y, Y);
  Poly3 sum{};
  for (int i = 0; i < 4; ++i) {
    sum[i] = f.a * xxx[i] + f.b * xxy[i] + f.c * xyy[i] + f.d * yyy[i];
    if (det == -1) sum[i] = -sum[i];
  }
  return {narrow(sum[0]), narrow(sum[1]), narrow(sum[2]), narrow(sum[3])};
}

Int128 evaluate(const CubicForm& f, std::int64_t x, std::int64_t y) {
  const Int128 X = x, Y = y;
  return f.a * X * X * X + f.b * X * X * Y + f.c * X * Y * Y + f.d * Y * Y * Y;
}

bool is_irreducible(const CubicForm& f) {
  if (f.a == 0 || f.d == 0) return false;
  const auto& tables = root_tables();
  for (std::size_t k = 0; k < RootTables::primes.size(); ++k) {
    const int l = RootTables::primes[k];
    const auto index = static_cast<std::size_t>(
        ((mod_small(f.a, l) * l + mod_small(f.b, l)) * l + mod_small(f.c, l)) * l + mod_small(f.d, l));
    if (!tables.has_root[k][index]) return true;
  }
  // Rational roots r/s have s | a; test the integers nearest to s * theta.
  const std::int64_t abs_a = f.a < 0 ? -f.a : f.a;
  const auto roots = real_roots(f);
  for (std::int64_t s = 1; s <= abs_a; ++s) {
    if (abs_a % s != 0) continue;
    for (long double theta : roots) {
      const auto r0 = static_cast<std::int64_t>(std::llround(theta * s));
      for (std::int64_t r = r0 - 1; r <= r0 + 1; ++r) {
        if (evaluate(f, r, s) == 0) return false;
      }
    }
  }
  return true;
}

bool is_reduced(const CubicForm& f) {
  if (f.a <= 0) return false;
  const Int128 D = form_discriminant_wide(f);
  if (D < 0) return neg_B_positive(f) && neg_B_below_a(f) && neg_C_above_a(f);
  if (D == 0) return false;
  const Hessian h = hessian(f);
  if (!hessian_reduced(h)) return false;
  if (hessian_interior(h)) return h.Q > 0;
  return boundary_canonical(f) == f;
}

CubicForm reduce(const CubicForm& f) {
  if (!is_irreducible(f)) throw DomainError("reduce requires an irreducible form");
  return form_discriminant_wide(f) < 0 ? reduce_negative(f) : reduce_positive(f);
}

namespace detail {

const std::array<Unimodular, 40>& small_unimodular() {
  static const std::array<Unimodular, 40> all = [] {
    std::array<Unimodular, 40> out{};
    std::size_t n = 0;
    for (int m00 = -1; m00 <= 1; ++m00)
      for (int m01 = -1; m01 <= 1; ++m01)
        for (int m10 = -1; m10 <= 1; ++m10)
          for (int m11 = -1; m11 <= 1; ++m11) {
            const int det = m00 * m11 - m01 * m10;
            if (det == 1 || det == -1) out[n++] = {m00, m01, m10, m11};
          }
    return out;
  }();
  return all;
}

bool maximal_at_ramified(const CubicForm& f, std::uint64_t p) {
  const auto P = static_cast<Int128>(p);
  auto mod = [&](Int128 v, Int128 m) {
    Int128 r = v % m;
    return r < 0 ? r + m : r;
  };
  if (mod(f.a, P) == 0 && mod(f.b, P) == 0 && mod(f.c, P) == 0 && mod(f.d, P) == 0) return false;
  // multiple root at (1 : 0)
  if (mod(f.a, P) == 0 && mod(f.b, P) == 0) return mod(f.a, P * P) != 0;
  // multiple root (r : 1): f(r, 1) = f_x(r, 1) = 0 mod p
  const Int128 a = mod(f.a, P), b = mod(f.b, P), c = mod(f.c, P), d = mod(f.d, P);
  for (Int128 r = 0; r < P; ++r) {
    if (mod(((a * r + b) * r + c) * r + d, P) != 0) continue;
    if (mod((3 * a * r + 2 * b) * r + c, P) != 0) continue;
    // move the root to (1 : 0); the new leading coefficient is f(r, 1)
    return mod(evaluate(f, static_cast<std::int64_t>(r), 1), P * P) != 0;
  }
  throw InvariantError("maximality test: no multiple root mod p although p^2 | disc");
}

}  // namespace detail

bool is_maximal_at(const CubicForm& f, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  const Int128 D = form_discriminant_wide(f);
  const Int128 sq = static_cast<Int128>(p) * p;
  if (D % sq != 0) return true;
  return detail::maximal_at_ramified(f, p);
}

bool is_maximal(const CubicForm& f) {
  Int128 D = form_discriminant_wide(f);
  if (D == 0) return false;
  if (D < 0) D = -D;
  for (std::uint64_t p = 2; static_cast<Int128>(p) * p <= D; ++p) {
    if (D % p != 0) continue;
    int k = 0;
    while (D % p == 0) {
      D /= p;
      ++k;
    }
    if (k >= 2 && !detail::maximal_at_ramified(f, p)) return false;
  }
  return true;
}

}  // namespace ramlab
