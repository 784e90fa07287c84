#include "cubic_oracle.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace oracle {

namespace {

using Wide = __int128;

Wide gcd_wide(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// small exact fraction; the sizes met at desk scale stay far below 2^120
struct Rat {
  Wide num = 0;
  Wide den = 1;

  Rat() = default;
  Rat(std::int64_t n) : num(n) {}
  Rat(Wide n, Wide d) : num(n), den(d) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const Wide g = gcd_wide(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend Rat operator+(const Rat& a, const Rat& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Rat operator-(const Rat& a, const Rat& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend Rat operator*(const Rat& a, const Rat& b) { return {a.num * b.num, a.den * b.den}; }
  Rat& operator+=(const Rat& b) { return *this = *this + b; }
  Rat& operator/=(std::int64_t k) { return *this = Rat(num, den * k); }
};

Wide numerator(const Rat& r) { return r.num; }
Wide denominator(const Rat& r) { return r.den; }
using Vec = std::array<Rat, 3>;
using Mat = std::array<std::array<Rat, 3>, 3>;

std::vector<std::int64_t> small_primes(std::int64_t limit) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 2; n <= limit; ++n) {
    bool prime = true;
    for (std::int64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(n);
  }
  return out;
}

// prime -> exponent
std::map<std::int64_t, int> factor(std::int64_t n) {
  std::map<std::int64_t, int> out;
  n = std::llabs(n);
  for (std::int64_t d = 2; d * d <= n; ++d) {
    while (n % d == 0) {
      ++out[d];
      n /= d;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = a % m, s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t k = r0 / r1;
    std::tie(r0, r1) = std::pair(r1, r0 - k * r1);
    std::tie(s0, s1) = std::pair(s1, s0 - k * s1);
  }
  return (s0 % m + m) % m;
}

Mat multiply(const Mat& a, const Mat& b) {
  Mat c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// multiplication-by-element matrix in the power basis 1, t, t^2
Mat regular(const Vec& e, std::int64_t p, std::int64_t q, std::int64_t r) {
  // column j holds t^j * t expressed in the power basis
  Mat C{};
  C[1][0] = 1;
  C[2][1] = 1;
  C[0][2] = -r;
  C[1][2] = -q;
  C[2][2] = -p;
  Mat I{};
  for (int i = 0; i < 3; ++i) I[i][i] = 1;
  const Mat C2 = multiply(C, C);
  Mat M{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M[i][j] = e[0] * I[i][j] + e[1] * C[i][j] + e[2] * C2[i][j];
  return M;
}

bool integral(const Vec& e, std::int64_t p, std::int64_t q, std::int64_t r) {
  const Mat M = regular(e, p, q, r);
  const Rat tr = M[0][0] + M[1][1] + M[2][2];
  const Rat e2 = M[0][0] * M[1][1] - M[0][1] * M[1][0] + M[0][0] * M[2][2] - M[0][2] * M[2][0] +
                 M[1][1] * M[2][2] - M[1][2] * M[2][1];
  const Rat det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                  M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                  M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
  return denominator(tr) == 1 && denominator(e2) == 1 && denominator(det) == 1;
}

bool has_integer_root(std::int64_t p, std::int64_t q, std::int64_t r) {
  if (r == 0) return true;
  const std::int64_t m = std::llabs(r);
  for (std::int64_t d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    for (std::int64_t x : {d, -d}) {
      if (((x + p) * x + q) * x + r == 0) return true;
    }
  }
  return false;
}

int roots_mod(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t l) {
  int count = 0;
  for (std::int64_t x = 0; x < l; ++x) {
    std::int64_t v = ((x + p) % l * x % l + q) % l * x % l + r;
    if (((v % l) + l) % l == 0) ++count;
  }
  return count;
}

}  // namespace

std::int64_t polynomial_discriminant(std::int64_t p, std::int64_t q, std::int64_t r) {
  return p * p * q * q - 4 * q * q * q - 4 * p * p * p * r + 18 * p * q * r - 27 * r * r;
}

std::int64_t field_discriminant(std::int64_t p, std::int64_t q, std::int64_t r) {
  std::int64_t disc = polynomial_discriminant(p, q, r);
  if (disc == 0) throw std::invalid_argument("repeated root");
  std::array<Vec, 3> basis{};
  for (int i = 0; i < 3; ++i) basis[i][i] = 1;
  for (const auto& [l, exponent] : factor(disc)) {
    if (exponent < 2) continue;
    for (;;) {
      if (disc % (l * l) != 0) break;
      bool grown = false;
      // candidates c in F_l^3 up to scaling (first nonzero entry 1) whose
      // combination has trace divisible by l
      std::array<std::int64_t, 3> t{};
      for (int j = 0; j < 3; ++j) {
        const Rat tr = 3 * basis[j][0] - p * basis[j][1] + (p * p - 2 * q) * basis[j][2];
        t[j] = static_cast<std::int64_t>((numerator(tr) % l + l) % l);
      }
      int pivot = -1;
      for (int j = 0; j < 3; ++j) {
        if (t[j] != 0) pivot = j;
      }
      const std::int64_t pivot_inv = pivot < 0 ? 0 : inverse_mod(t[pivot], l);
      for (std::int64_t u = 0; u < l && !grown; ++u) {
        for (std::int64_t v = 0; v < l && !grown; ++v) {
          for (std::int64_t w = 0; w < (pivot < 0 ? l : 1) && !grown; ++w) {
            std::array<std::int64_t, 3> c{};
            if (pivot < 0) {
              c = {u, v, w};
            } else {
              std::array<std::int64_t, 2> free{u, v};
              std::int64_t sum = 0;
              for (int j = 0, f = 0; j < 3; ++j) {
                if (j == pivot) continue;
                c[j] = free[f++];
                sum += c[j] * t[j];
              }
              c[pivot] = (l - sum % l) % l * pivot_inv % l;
            }
            int lead = 0;
            while (lead < 3 && c[lead] == 0) ++lead;
            if (lead == 3 || c[lead] != 1) continue;
            Vec beta{};
            for (int j = 0; j < 3; ++j)
              for (int i = 0; i < 3; ++i) beta[i] += Rat(c[j]) * basis[j][i];
            for (auto& x : beta) x /= l;
            if (integral(beta, p, q, r)) {
              basis[lead] = beta;
              disc /= l * l;
              grown = true;
            }
          }
        }
      }
      if (!grown) break;
    }
  }
  return disc;
}

std::vector<OracleField> cubic_fields_by_polynomials(std::int64_t X, double box_scale) {
  // Hunter: some integral non-rational element has trace in {-1, 0, 1} and
  // T2 <= 1/3 + (4/3)^(1/2) (X/3)^(1/2)
  const double t2 = (1.0 / 3.0 + std::sqrt(4.0 / 3.0) * std::sqrt(X / 3.0)) * box_scale + 1;
  const auto q_max = static_cast<std::int64_t>(std::ceil(t2));
  const auto r_max = static_cast<std::int64_t>(std::ceil(std::pow(t2 / 3.0, 1.5)));
  const auto primes = small_primes(400);

  struct Candidate {
    OracleField field;
    std::int64_t poly_disc;
    std::vector<int> signature;
  };
  std::map<std::int64_t, std::vector<Candidate>> groups;

  for (std::int64_t p = -1; p <= 1; ++p) {
    for (std::int64_t q = -q_max; q <= q_max; ++q) {
      for (std::int64_t r = -r_max; r <= r_max; ++r) {
        const std::int64_t dp = polynomial_discriminant(p, q, r);
        if (dp == 0 || has_integer_root(p, q, r)) continue;
        std::int64_t max_index = 1;
        for (const auto& [l, e] : factor(dp)) {
          for (int i = 0; i < e / 2; ++i) max_index *= l;
        }
        if (std::llabs(dp) / (max_index * max_index) > X) continue;
        const std::int64_t dk = field_discriminant(p, q, r);
        if (std::llabs(dk) > X) continue;
        Candidate cand{{dk, p, q, r}, dp, {}};
        for (std::int64_t l : primes) cand.signature.push_back(dp % l == 0 ? -1 : roots_mod(p, q, r, l));
        auto& group = groups[dk];
        bool known = false;
        for (const auto& rep : group) {
          bool same = true;
          for (std::size_t i = 0; i < primes.size() && same; ++i) {
            if (rep.signature[i] >= 0 && cand.signature[i] >= 0 && rep.signature[i] != cand.signature[i]) {
              same = false;
            }
          }
          if (same) {
            known = true;
            break;
          }
        }
        if (!known) group.push_back(std::move(cand));
      }
    }
  }
  std::vector<OracleField> out;
  for (const auto& [d, group] : groups) {
    for (const auto& c : group) out.push_back(c.field);
  }
  return out;
}

}  // namespace oracle
