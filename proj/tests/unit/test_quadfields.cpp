#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <random>

#include "ramlab/densities.hpp"
#include "ramlab/errors.hpp"
#include "ramlab/intsieve.hpp"
#include "ramlab/quadfields.hpp"

using namespace ramlab;

namespace {

bool squarefree(std::int64_t n) {
  n = std::llabs(n);
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

bool fundamental(std::int64_t D) {
  const std::int64_t r = ((D % 4) + 4) % 4;
  if (r == 1) return D != 1 && squarefree(D);
  if (r != 0) return false;
  const std::int64_t m = D / 4;
  const std::int64_t mr = ((m % 4) + 4) % 4;
  return (mr == 2 || mr == 3) && squarefree(m);
}

// |D| ascending, positive first
std::vector<std::int64_t> brute_force(std::int64_t X) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 2; n <= X; ++n) {
    if (fundamental(n)) out.push_back(n);
    if (fundamental(-n)) out.push_back(-n);
  }
  return out;
}

std::vector<std::int64_t> discs(const std::vector<FieldRecord>& records) {
  std::vector<std::int64_t> out;
  for (const auto& r : records) out.push_back(r.discriminant);
  return out;
}

}  // namespace

TEST_SUITE("quadfields") {
  TEST_CASE("X = 20") {
    const auto records = fundamental_discriminants(20);
    CHECK(discs(records) == std::vector<std::int64_t>{-3, -4, 5, -7, 8, -8, -11, 12, 13, -15, 17, -19, -20});
    CHECK(records.size() == 13);
    std::uint64_t threes = 0;
    for (const auto& r : records) threes += r.discriminant % 3 == 0;
    CHECK(threes == 3);
    CHECK(quadratic_divisibility_ratio(20, 3) == doctest::Approx(3.0 / 13));
    CHECK(quadratic_divisibility_ratio(20, 1) == 1.0);
    CHECK(quadratic_divisibility_ratio(20, 2) == doctest::Approx(5.0 / 13));
    CHECK_THROWS_AS(quadratic_divisibility_ratio(20, 4), NotSquarefreeError);
    CHECK_THROWS_AS(fundamental_discriminants(2), DomainError);
  }

  TEST_CASE("against the definition up to 20000") {
    const auto records = fundamental_discriminants(20000);
    CHECK(discs(records) == brute_force(20000));
    for (const auto& r : records) {
      CHECK(r.omega == omega_of(static_cast<std::uint64_t>(std::llabs(r.discriminant))));
      CHECK(r.is_cyclic);
    }
  }

  TEST_CASE("invariants and sampled omega at 10^6") {
    const auto records = fundamental_discriminants(1'000'000);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10000; ++i) {
      const auto& r = records[rng() % records.size()];
      REQUIRE(r.omega == omega_of(static_cast<std::uint64_t>(std::llabs(r.discriminant))));
    }
    for (const auto& r : records) {
      const std::int64_t D = r.discriminant;
      const std::int64_t mod4 = ((D % 4) + 4) % 4;
      REQUIRE((mod4 == 0 || mod4 == 1));
      REQUIRE(D != 1);
      if (mod4 == 0) REQUIRE(squarefree(D / 4));
      for (std::int64_t p : {3, 5, 7, 11, 13}) REQUIRE(D % (p * p) != 0);
    }
  }

  TEST_CASE("segment and worker invariance, monotone counts") {
    std::vector<std::int64_t> base;
    enumerate_fundamental_discriminants(
        500000, [&](std::span<const FieldRecord> b) { for (const auto& r : b) base.push_back(r.discriminant); }, 1,
        1 << 20);
    for (std::uint64_t seg : {1ULL << 10, 1ULL << 14}) {
      for (int workers : {1, 4, 8}) {
        std::vector<std::int64_t> got;
        const auto n = enumerate_fundamental_discriminants(
            500000, [&](std::span<const FieldRecord> b) { for (const auto& r : b) got.push_back(r.discriminant); },
            workers, seg);
        CHECK(n == got.size());
        CHECK(got == base);
      }
    }
    std::uint64_t previous = 0;
    for (std::uint64_t X : {1000ULL, 10000ULL, 100000ULL}) {
      const auto n = fundamental_discriminants(X).size();
      CHECK(n > previous);
      previous = n;
    }
  }
}
