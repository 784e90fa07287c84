#include "ramlab/cubicfields.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "ramlab/errors.hpp"
#include "ramlab/factor_sieve.hpp"
#include "ramlab/primes.hpp"

namespace ramlab {

namespace {

Int128 floor_div(Int128 num, Int128 den) {
  Int128 q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

Int128 ceil_div(Int128 num, Int128 den) { return -floor_div(-num, den); }

struct Block {
  bool positive;
  std::int64_t a;
  std::int64_t b;
};

std::vector<Block> make_blocks(std::uint64_t X) {
  const double x = static_cast<double>(X);
  const double root4 = std::pow(x, 0.25);
  std::vector<Block> blocks;
  // disc < 0: a <= (16X/27)^(1/4); b = B - a theta with |theta + B/2a| <= (X/3)^(1/4)/a
  const double T = std::pow(x / 3.0, 0.25);
  const auto amax_neg = static_cast<std::int64_t>(std::pow(16.0 * x / 27.0, 0.25)) + 1;
  for (std::int64_t a = 1; a <= amax_neg; ++a) {
    const auto blo = static_cast<std::int64_t>(std::floor(-T - a / 2.0)) - 1;
    const auto bhi = static_cast<std::int64_t>(std::ceil(T + 1.5 * a)) + 1;
    for (std::int64_t b = blo; b <= bhi; ++b) blocks.push_back({false, a, b});
  }
  // disc > 0: reduced Hessian gives P <= sqrt(D), a <= sqrt(8/27) X^(1/4),
  // and every root within 1/2 + 4/sqrt(3) X^(1/4)/a of the origin.
  const auto amax_pos = static_cast<std::int64_t>(std::sqrt(8.0 / 27.0) * root4) + 1;
  for (std::int64_t a = 1; a <= amax_pos; ++a) {
    const auto bound = static_cast<std::int64_t>(std::ceil(1.5 * a + 12.0 / std::sqrt(3.0) * root4)) + 2;
    for (std::int64_t b = -bound; b <= bound; ++b) blocks.push_back({true, a, b});
  }
  return blocks;
}

// Candidate d values for disc < 0 and fixed (a, b, c), already clipped by the
// linear reduction inequalities and |disc| <= X.
template <class Visit>
void negative_block(std::uint64_t X, std::int64_t a, std::int64_t b, Visit&& visit) {
  const double x = static_cast<double>(X);
  const double T = std::pow(x / 3.0, 0.25);
  const double Cmax = std::cbrt(16.0 * x / (27.0 * a));
  const auto cmin = static_cast<std::int64_t>(std::floor(a / 2.0 - T)) - 1;
  const auto cmax = static_cast<std::int64_t>(std::ceil(Cmax + T + a / 2.0)) + 1;
  const Int128 A = a, B = b;
  const long double a2x54 = 54.0L * a * a;
  for (std::int64_t c = cmin; c <= cmax; ++c) {
    const Int128 C = c;
    // bc - ad > 0
    Int128 dhi = floor_div(B * C - 1, A);
    // (a-b)^2 + c(a-b) + ad > 0
    const Int128 K = (A - B) * (A - B) + C * (A - B);
    Int128 dlo = floor_div(-K, A) + 1;
    // disc(d) = -27a^2 d^2 + B1 d + C0 >= -X
    const Int128 B1 = 18 * A * B * C - 4 * B * B * B;
    const Int128 C0 = B * B * C * C - 4 * A * C * C * C;
    const long double b1 = static_cast<long double>(B1);
    const long double outer = b1 * b1 + 108.0L * a * a * (static_cast<long double>(C0) + x);
    if (outer < 0) continue;
    const long double so = std::sqrt(outer);
    dlo = std::max<Int128>(dlo, static_cast<Int128>(std::floor((b1 - so) / a2x54)) - 1);
    dhi = std::min<Int128>(dhi, static_cast<Int128>(std::ceil((b1 + so) / a2x54)) + 1);
    if (dlo > dhi) continue;
    // skip the middle stretch where disc >= 0
    Int128 gap_lo = dhi + 1, gap_hi = dhi;
    const long double inner = b1 * b1 + 108.0L * a * a * static_cast<long double>(C0);
    if (inner >= 0) {
      const long double si = std::sqrt(inner);
      gap_lo = static_cast<Int128>(std::ceil((b1 - si) / a2x54)) + 1;
      gap_hi = static_cast<Int128>(std::floor((b1 + si) / a2x54)) - 1;
    }
    for (Int128 d = dlo; d <= dhi; ++d) {
      if (d >= gap_lo && d <= gap_hi) {
        d = gap_hi;
        continue;
      }
      const Int128 D = (B1 + (-27) * A * A * d) * d + C0;
      if (D >= 0 || D < -static_cast<Int128>(X)) continue;
      // C > a
      if (d * d - A * A + A * C - B * d <= 0) continue;
      visit(CubicForm{a, b, c, static_cast<std::int64_t>(d)}, D);
    }
  }
}

template <class Visit>
void positive_block(std::uint64_t X, std::int64_t a, std::int64_t b, Visit&& visit) {
  const Int128 sqrtX = static_cast<Int128>(isqrt(X));
  const Int128 A = a, B = b;
  const Int128 cmin = ceil_div(B * B - sqrtX, 3 * A);
  const Int128 cmax = floor_div(B * B - 1, 3 * A);
  const Int128 X3 = 3 * static_cast<Int128>(X);
  for (Int128 C = cmin; C <= cmax; ++C) {
    const Int128 P = B * B - 3 * A * C;
    // |Q| <= P with Q = bc - 9ad
    Int128 dlo = ceil_div(B * C - P, 9 * A);
    Int128 dhi = floor_div(B * C + P, 9 * A);
    // P <= R <= (3X + P^2) / 4P with R = c^2 - 3bd
    const Int128 Rmax = (X3 + P * P) / (4 * P);
    if (B > 0) {
      dhi = std::min(dhi, floor_div(C * C - P, 3 * B));
      dlo = std::max(dlo, ceil_div(C * C - Rmax, 3 * B));
    } else if (B < 0) {
      dlo = std::max(dlo, ceil_div(C * C - P, 3 * B));
      dhi = std::min(dhi, floor_div(C * C - Rmax, 3 * B));
    } else if (C * C < P || C * C > Rmax) {
      continue;
    }
    for (Int128 d = dlo; d <= dhi; ++d) {
      const Int128 Q = B * C - 9 * A * d;
      const Int128 R = C * C - 3 * B * d;
      if (R < P || (Q < 0 ? -Q : Q) > P) continue;
      const Int128 D3 = 4 * P * R - Q * Q;
      if (D3 > X3) continue;
      const Int128 D = D3 / 3;
      const CubicForm f{a, b, static_cast<std::int64_t>(C), static_cast<std::int64_t>(d)};
      const bool interior = Q != 0 && (Q < 0 ? -Q : Q) < P && P < R;
      if (interior ? Q < 0 : !is_reduced(f)) continue;
      visit(f, D);
    }
  }
}

// Runs every block, calling per_form(form, disc, out) for irreducible reduced
// forms and handing each block's output to emit() in block order.
template <class Out, class PerForm, class Emit>
void run_blocks(std::uint64_t X, int workers, PerForm&& per_form, Emit&& emit) {
  const auto blocks = make_blocks(X);
  const int nthreads = resolve_workers(workers);
#pragma omp parallel num_threads(nthreads)
  {
    std::vector<Out> out;
    std::uint64_t forms = 0;
#pragma omp for ordered schedule(dynamic, 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(blocks.size()); ++i) {
      out.clear();
      forms = 0;
      const Block& blk = blocks[static_cast<std::size_t>(i)];
      auto visit = [&](const CubicForm& f, Int128 D) {
        if (!is_irreducible(f)) return;
        ++forms;
        per_form(f, D, out);
      };
      if (blk.positive) {
        positive_block(X, blk.a, blk.b, visit);
      } else {
        negative_block(X, blk.a, blk.b, visit);
      }
#pragma omp ordered
      emit(std::span<const Out>(out), forms);
    }
  }
}

}  // namespace

bool is_perfect_square(std::int64_t n) {
  if (n < 0) return false;
  const std::uint64_t r = isqrt(static_cast<std::uint64_t>(n));
  return r * r == static_cast<std::uint64_t>(n);
}

std::uint64_t enumerate_reduced_forms(std::uint64_t X, const FormSink& sink, int workers) {
  if (X > 1'000'000'000ULL) throw DomainError("X beyond 10^9 is not supported");
  std::uint64_t total = 0;
  run_blocks<CubicForm>(
      X, workers, [](const CubicForm& f, Int128, std::vector<CubicForm>& out) { out.push_back(f); },
      [&](std::span<const CubicForm> batch, std::uint64_t forms) {
        total += forms;
        if (!batch.empty()) sink(batch);
      });
  return total;
}

CubicSummary enumerate_cubic_fields(std::uint64_t X, const RecordSink& sink, const CubicOptions& options) {
  if (X < 23) throw DomainError("enumerate_cubic_fields requires X >= 23");
  if (X > 1'000'000'000ULL) throw DomainError("X beyond 10^9 is not supported");
  std::unique_ptr<FactorTable> owned;
  const FactorTable* table = options.table;
  if (table == nullptr || table->limit() < X) {
    owned = std::make_unique<FactorTable>(X, 1u << 20, options.workers);
    table = owned.get();
  }
  CubicSummary summary;
  summary.histogram.label = "cubic fields |D| <= " + std::to_string(X);
  std::uint64_t next_report = 1'000'000;
  run_blocks<FieldRecord>(
      X, options.workers,
      [&](const CubicForm& f, Int128 D, std::vector<FieldRecord>& out) {
        const auto disc = static_cast<std::int64_t>(D);
        const auto magnitude = static_cast<std::uint64_t>(disc < 0 ? -disc : disc);
        bool maximal = true;
        table->for_each_square_prime(magnitude, [&](std::uint64_t p) {
          if (maximal && !detail::maximal_at_ramified(f, p)) maximal = false;
        });
        if (!maximal) return;
        const bool cyclic = is_perfect_square(disc);
        if (options.only == GaloisFilter::kS3 && cyclic) return;
        if (options.only == GaloisFilter::kCyclic && !cyclic) return;
        out.push_back({disc, static_cast<std::uint8_t>(table->omega(magnitude)), cyclic});
      },
      [&](std::span<const FieldRecord> batch, std::uint64_t forms) {
        summary.forms += forms;
        summary.fields += batch.size();
        for (const auto& r : batch) summary.histogram.add(r.omega);
        if (sink && !batch.empty()) sink(batch);
        if (options.progress && summary.forms >= next_report) {
          options.progress(summary.forms);
          while (next_report <= summary.forms) next_report += 1'000'000;
        }
      });
  return summary;
}

std::vector<FieldRecord> cubic_fields(std::uint64_t X, GaloisFilter only) {
  std::vector<FieldRecord> out;
  CubicOptions options;
  options.only = only;
  enumerate_cubic_fields(
      X, [&](std::span<const FieldRecord> batch) { out.insert(out.end(), batch.begin(), batch.end()); },
      options);
  return out;
}

}  // namespace ramlab
