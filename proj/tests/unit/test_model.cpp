#include <doctest.h>

#include <cmath>

#include "ramlab/errors.hpp"
#include "ramlab/model.hpp"
#include "ramlab/primes.hpp"
#include "ramlab/stats.hpp"

using namespace ramlab;

namespace {

// Poisson-binomial law convolved in exact rationals
std::vector<Rational> rational_law(int d, std::uint64_t Z) {
  std::vector<Rational> law{1};
  for (std::uint32_t p : primes_up_to(Z)) {
    const Rational rho = local_density(FamilySpec::of(d), p);
    std::vector<Rational> next(law.size() + 1);
    for (std::size_t k = 0; k < law.size(); ++k) {
      next[k] += law[k] * (1 - rho);
      next[k + 1] += law[k] * rho;
    }
    law = std::move(next);
  }
  return law;
}

double as_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("bernoulli family") {
    const BernoulliFamily fam(FamilySpec::of(3), 100);
    CHECK(fam.size() == 25);
    CHECK(fam.primes().front() == 2);
    CHECK(fam.primes().back() == 97);
    for (std::size_t i = 0; i < fam.size(); ++i) {
      CHECK(fam.probability(i) == local_density(FamilySpec::of(3), fam.primes()[i]));
      CHECK(fam.probability(i) > 0);
      CHECK(fam.probability(i) < 1);
    }
    CHECK_THROWS_AS(BernoulliFamily(FamilySpec::of(3), 1), DomainError);
  }

  TEST_CASE("small distributions") {
    const auto d2 = FamilySpec::of(2);
    auto dist = exact_distribution(BernoulliFamily(d2, 2), 4);
    CHECK(dist.mass.size() == 5);
    CHECK(static_cast<double>(dist.mass[0]) == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(static_cast<double>(dist.mass[1]) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(dist.mass[2] == 0);
    CHECK(dist.tail_mass == 0);

    dist = exact_distribution(BernoulliFamily(d2, 3), 4);
    CHECK(static_cast<double>(dist.mass[2]) == doctest::Approx(1.0 / 12).epsilon(1e-15));

    dist = exact_distribution(BernoulliFamily(FamilySpec::of(3), 100), 1);
    CHECK(dist.tail_mass > 0);
    long double total = dist.tail_mass;
    for (auto m : dist.mass) total += m;
    CHECK(std::fabs(static_cast<double>(total - 1)) < 1e-12);
    CHECK_THROWS_AS(exact_distribution(BernoulliFamily(d2, 3), 0), DomainError);
  }

  TEST_CASE("distribution against exact rational convolution") {
    for (int d = 2; d <= 5; ++d) {
      const auto law = rational_law(d, 60);
      const auto dist = exact_distribution(BernoulliFamily(FamilySpec::of(d), 60), 64);
      for (std::size_t k = 0; k < law.size(); ++k) {
        CHECK(static_cast<double>(dist.mass[k]) == doctest::Approx(as_double(law[k])).epsilon(1e-14));
      }
      CHECK(dist.tail_mass == 0);
    }
  }

  TEST_CASE("exact moments, hand values") {
    const auto report = exact_moments(BernoulliFamily(FamilySpec::of(2), 3), 4);
    CHECK(report.source == MomentSource::kModelExact);
    CHECK(report.Z == 3);
    CHECK(static_cast<double>(report.raw[1]) == doctest::Approx(7.0 / 12).epsilon(1e-15));
    CHECK(static_cast<double>(report.central[2]) == doctest::Approx(59.0 / 144).epsilon(1e-15));
    CHECK(static_cast<double>(report.raw[2]) == doctest::Approx(7.0 / 12 + 2.0 / 12).epsilon(1e-15));
    CHECK(std::fabs(static_cast<double>(report.central[1])) < 1e-15);
    CHECK_THROWS_AS(exact_moments(BernoulliFamily(FamilySpec::of(2), 3), 0), DomainError);
    CHECK_THROWS_AS(exact_moments(BernoulliFamily(FamilySpec::of(2), 3), 13), DomainError);
  }

  TEST_CASE("exact moments against rational law") {
    for (int d = 2; d <= 5; ++d) {
      const auto law = rational_law(d, 60);
      const auto report = exact_moments(BernoulliFamily(FamilySpec::of(d), 60), 8);
      for (int k = 1; k <= 8; ++k) {
        Rational m = 0;
        for (std::size_t j = 0; j < law.size(); ++j) {
          BigInt power = 1;
          for (int i = 0; i < k; ++i) power *= j;
          m += law[j] * Rational(power);
        }
        CHECK(static_cast<double>(report.raw[k]) == doctest::Approx(as_double(m)).epsilon(1e-13));
      }
    }
  }

  TEST_CASE("two moment routes agree") {
    for (int d = 2; d <= 5; ++d) {
      const BernoulliFamily fam(FamilySpec::of(d), 3000);
      const auto a = exact_moments(fam, 6);
      const auto b = distribution_moments(exact_distribution(fam, fam.size()), 6);
      for (int k = 1; k <= 6; ++k) {
        CHECK(std::fabs(static_cast<double>(a.raw[k] - b.raw[k])) < 1e-9);
        CHECK(std::fabs(static_cast<double>(a.central[k] - b.central[k])) < 1e-9);
      }
    }
  }

  TEST_CASE("standardized moments") {
    const BernoulliFamily fam(FamilySpec::of(3), 10000);
    const auto s = standardized_moments(fam, 1e4, 4);
    CHECK(s.X == 1e4);
    CHECK(s.standardized.size() == 5);
    const long double mu = std::log(std::log(1e4L));
    // k = 2 by hand: (variance + (mean - mu)^2) / mu
    const long double shift = s.raw[1] - mu;
    CHECK(static_cast<double>(s.standardized[2]) ==
          doctest::Approx(static_cast<double>((s.central[2] + shift * shift) / mu)).epsilon(1e-12));
    CHECK_THROWS_AS(standardized_moments(fam, 2.0, 4), DomainError);
  }

  TEST_CASE("shifted moment expansion") {
    // Y uniform on {0, 1, 2}
    const std::vector<long double> m{1, 1, 5.0L / 3, 3};
    CHECK(static_cast<double>(shifted_moment(m, -1, 2)) == doctest::Approx(2.0 / 3));
    CHECK(static_cast<double>(shifted_moment(m, 2, 3)) == doctest::Approx((8 + 27 + 64) / 3.0));
  }

  TEST_CASE("paper cutoff") {
    CHECK(paper_cutoff(FamilySpec::of(3), 1e8, 4) == 1);
    CHECK(paper_cutoff(FamilySpec::of(2), 1e8, 1) == 10000);
    CHECK(paper_cutoff(FamilySpec::of(2), 1e8, 2) == 100);
    CHECK(paper_cutoff(FamilySpec::of(2), 99999999, 1) == 9999);
    for (int d = 2; d <= 5; ++d) CHECK(paper_cutoff(FamilySpec::of(d), 2, 50) == 1);
  }

  TEST_CASE("sampling") {
    const BernoulliFamily single(FamilySpec::of(2), 2);
    CHECK(sample(single, 1, 99).total == 1);
    CHECK_THROWS_AS(sample(single, 0, 1), DomainError);

    const std::uint64_t n = 1'000'000;
    const auto h = sample(single, n, 42);
    const double sd = std::sqrt(n * (1.0 / 3) * (2.0 / 3));
    CHECK(std::fabs(h.count(1) - n / 3.0) < 5 * sd);
    CHECK(h.count(0) + h.count(1) == n);
  }

  TEST_CASE("sample determinism across workers") {
    const BernoulliFamily fam(FamilySpec::of(4), 500);
    const auto one = sample(fam, 20000, 1234, 1);
    CHECK(sample(fam, 20000, 1234, 2) == one);
    CHECK(sample(fam, 20000, 1234, 8) == one);
    CHECK_FALSE(sample(fam, 20000, 1235, 1) == one);
  }

  TEST_CASE("sampled mean within five standard errors") {
    const BernoulliFamily fam(FamilySpec::of(3), 1000);
    const std::uint64_t n = 200'000;
    const auto exact = exact_moments(fam, 2);
    const auto h = sample(fam, n, 2024);
    const double se = std::sqrt(static_cast<double>(exact.central[2]) / n);
    CHECK(std::fabs(static_cast<double>(raw_moment(h, 1) - exact.raw[1])) < 5 * se);
  }
}
