#include <doctest.h>

#include <cmath>

#include "dpbloom/budget.hpp"
#include "dpbloom/calibration.hpp"
#include "dpbloom/error.hpp"

using namespace dpbloom;

TEST_CASE("per-bit probabilities at epsilon0 = 0.25") {
  const PrivacyBudget b = PrivacyBudget::from_epsilon0(0.25, 32, 3, 5);
  const double e = std::exp(0.25);
  CHECK(b.keep_prob == doctest::Approx(e / (e + 1.0)).epsilon(1e-14));
  CHECK(b.keep_prob == doctest::Approx(0.5621765008).epsilon(1e-9));
  CHECK(b.flip_prob == doctest::Approx(1.0 / (e + 1.0)).epsilon(1e-14));

  // full derivation path reaching the same split: N = 4 at this delta
  const PrivacyBudget derived = derive_budget(1.0, 0.5, 32, 3, 5);
  CHECK(derived.big_n == 4);
  CHECK(derived.epsilon0 == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(derived.keep_prob == doctest::Approx(0.5621765008).epsilon(1e-9));
}

TEST_CASE("budget invariants hold across a grid") {
  for (double epsilon : {0.1, 0.5, 1.0, 2.0, 8.0}) {
    for (double delta : {0.01, 0.05, 0.2}) {
      const PrivacyBudget b = derive_budget(epsilon, delta, 64, 4, 10);
      CHECK(std::abs(b.keep_prob + b.flip_prob - 1.0) <= 1e-12);
      CHECK(b.keep_prob >= 0.5);
      CHECK(b.keep_prob / b.flip_prob ==
            doctest::Approx(std::exp(b.epsilon0)).epsilon(1e-9));
      CHECK(b.epsilon0 * b.big_n == doctest::Approx(epsilon).epsilon(1e-12));
      CHECK(b.big_n >= 1);
      CHECK(b.big_n <= 2 * 4);
    }
  }
}

TEST_CASE("derive_budget consumes the W quantile") {
  const double delta = 0.05;
  const PrivacyBudget b = derive_budget(1.0, delta, 32, 3, 5);
  const uint32_t n = quantile_n(dist_w(32, 3, 5), delta);
  CHECK(b.big_n == n);
  CHECK(b.epsilon0 == doctest::Approx(1.0 / n).epsilon(1e-15));
}

TEST_CASE("flip probability vanishes as epsilon grows") {
  double prev = 1.0;
  for (double epsilon : {1.0, 4.0, 16.0, 64.0, 256.0}) {
    const PrivacyBudget b = derive_budget(epsilon, 0.05, 64, 4, 10);
    CHECK(b.flip_prob < prev);
    prev = b.flip_prob;
  }
  CHECK(prev < 1e-10);
}

TEST_CASE("budget rejects invalid global parameters") {
  CHECK_THROWS_AS(derive_budget(0.0, 0.05, 32, 3, 5), DomainError);
  CHECK_THROWS_AS(derive_budget(-1.0, 0.05, 32, 3, 5), DomainError);
  CHECK_THROWS_AS(derive_budget(1.0, 0.0, 32, 3, 5), DomainError);
  CHECK_THROWS_AS(derive_budget(1.0, 1.0, 32, 3, 5), DomainError);
  CHECK_THROWS_AS(PrivacyBudget::from_epsilon0(-0.5, 32, 3, 5), DomainError);
}

TEST_CASE("random-guess baseline budget is a fair coin") {
  const PrivacyBudget b = PrivacyBudget::from_epsilon0(0.0, 1024, 4, 100);
  CHECK(b.keep_prob == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b.flip_prob == doctest::Approx(0.5).epsilon(1e-15));
}
