#include <doctest.h>

#include <cmath>

#include "dpbloom/calibration.hpp"
#include "dpbloom/error.hpp"
#include "support/exact_calibration.hpp"

using namespace dpbloom;

TEST_CASE("dist_y: k=1 is a point mass") {
  for (uint64_t m : {2ull, 10ull, 65536ull}) {
    const YDistribution y = dist_y(m, 1);
    CHECK(y.prob(1) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("dist_y: m=4, k=2 closed form") {
  const YDistribution y = dist_y(4, 2);
  CHECK(y.prob(1) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(y.prob(2) == doctest::Approx(0.75).epsilon(1e-13));
}

TEST_CASE("dist_y: pmf[1] equals m^{1-k} in log space") {
  for (uint64_t m : {7ull, 64ull, 4096ull}) {
    for (uint32_t k : {2u, 3u, 5u, 8u}) {
      const YDistribution y = dist_y(m, k);
      const double expected = std::exp(-(static_cast<double>(k) - 1.0) *
                                       std::log(static_cast<double>(m)));
      CHECK(std::abs(y.prob(1) - expected) <= 1e-12);
    }
  }
}

TEST_CASE("dist_y: nonnegative and normalized on a grid") {
  for (uint64_t m : {2ull, 3ull, 17ull, 256ull, 65536ull}) {
    for (uint32_t k : {1u, 2u, 4u, 8u, 20u, 64u}) {
      const YDistribution y = dist_y(m, k);
      double sum = 0.0;
      for (uint32_t v = 1; v <= k; ++v) {
        CHECK(y.prob(v) >= 0.0);
        sum += y.prob(v);
      }
      CHECK(std::abs(sum - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("dist_y matches the exact rational recurrence up to m=64") {
  for (uint64_t m : {5ull, 16ull, 64ull}) {
    for (uint32_t k : {2u, 3u, 6u}) {
      const YDistribution y = dist_y(m, k);
      const auto exact = testing::exact_dist_y(m, k);
      for (uint32_t v = 1; v <= k; ++v)
        CHECK(std::abs(y.prob(v) - static_cast<double>(exact[v])) <= 1e-12);
    }
  }
}

TEST_CASE("dist_y rejects invalid parameters") {
  CHECK_THROWS_AS(dist_y(1, 2), DomainError);
  CHECK_THROWS_AS(dist_y(8, 0), DomainError);
  CHECK_THROWS_AS(dist_y(8, 65), DomainError);
}

TEST_CASE("dist_z_given_y: m=2, a=b=1 is fifty-fifty") {
  const ZConditional z = dist_z_given_y(2, 1);
  CHECK(z.prob(1, 1, 1) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(z.prob(1, 1, 2) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("dist_z_given_y: zero mass outside [max(a,b), min(a+b,m)]") {
  const ZConditional z = dist_z_given_y(16, 4);
  for (uint32_t a = 1; a <= 4; ++a)
    for (uint32_t b = 1; b <= 4; ++b) {
      for (uint32_t v = 0; v < std::max(a, b); ++v) CHECK(z.prob(a, b, v) == 0.0);
      for (uint32_t v = a + b + 1; v <= 10; ++v) CHECK(z.prob(a, b, v) == 0.0);
    }
}

TEST_CASE("dist_z_given_y: slices normalize and are symmetric") {
  for (uint64_t m : {4ull, 9ull, 100ull, 65536ull}) {
    for (uint32_t k : {1u, 3u, 6u}) {
      const ZConditional z = dist_z_given_y(m, k);
      const uint32_t top = z.feasible_max();
      for (uint32_t a = 1; a <= top; ++a)
        for (uint32_t b = 1; b <= top; ++b) {
          double sum = 0.0;
          for (uint32_t v = std::max(a, b); v <= a + b; ++v) {
            sum += z.prob(a, b, v);
            CHECK(z.prob(a, b, v) == doctest::Approx(z.prob(b, a, v)).epsilon(1e-12));
          }
          CHECK(std::abs(sum - 1.0) <= 1e-9);
        }
    }
  }
}

TEST_CASE("dist_z_given_y matches the exact rational form up to m=64") {
  for (uint64_t m : {6ull, 31ull, 64ull}) {
    for (uint32_t k : {2u, 4u}) {
      const ZConditional z = dist_z_given_y(m, k);
      for (uint32_t a = 1; a <= k; ++a)
        for (uint32_t b = 1; b <= k; ++b)
          for (uint32_t v = std::max(a, b); v <= a + b; ++v) {
            const double exact =
                static_cast<double>(testing::exact_dist_z(m, a, b, v));
            CHECK(std::abs(z.prob(a, b, v) - exact) <= 1e-12);
          }
    }
  }
}

TEST_CASE("dist_z_given_y: infeasible slices are rejected by name") {
  // k exceeds m, so conditioning on a = 3 distinct positions in a
  // 2-bit array is a zero-probability event.
  const ZConditional z = dist_z_given_y(2, 3);
  CHECK(z.feasible_max() == 2);
  CHECK_THROWS_AS(z.prob(3, 1, 3), CalibrationError);
  CHECK_THROWS_WITH_AS(z.slice(1, 3), doctest::Contains("a=1, b=3"), CalibrationError);
  CHECK(z.prob(2, 2, 2) > 0.0);
}

TEST_CASE("dist_w: dataset of one has p0 = 1 and mass pinned to n2") {
  const WDistribution w = dist_w(32, 3, 1);
  CHECK(w.p0 == 1.0);
  CHECK(w.pmf[0] > 0.0);  // both elements can hash to identical positions
  double sum = 0.0;
  for (double p : w.pmf) sum += p;
  CHECK(std::abs(sum - 1.0) <= 1e-9);
}

TEST_CASE("dist_w: p0 follows (1 - 1/m)^{(|A|-1)k}") {
  const WDistribution w = dist_w(64, 4, 10);
  CHECK(w.p0 == doctest::Approx(std::pow(1.0 - 1.0 / 64.0, 9.0 * 4.0)).epsilon(1e-12));
  CHECK(w.p0 > 0.0);
  CHECK(w.p0 < 1.0);
}

TEST_CASE("dist_w: normalized with monotone cdf on a grid") {
  for (uint64_t m : {2ull, 32ull, 1024ull}) {
    for (uint32_t k : {1u, 3u, 5u}) {
      for (uint64_t a : {1ull, 2ull, 20ull}) {
        const WDistribution w = dist_w(m, k, a);
        CHECK(w.pmf.size() == 2 * k + 1);
        double prev = 0.0;
        for (size_t i = 0; i < w.cdf.size(); ++i) {
          CHECK(w.pmf[i] >= 0.0);
          CHECK(w.cdf[i] >= prev);
          prev = w.cdf[i];
        }
        CHECK(std::abs(w.cdf.back() - 1.0) <= 1e-9);
      }
    }
  }
}

TEST_CASE("dist_w matches the exact rational mixture up to m=64") {
  for (uint64_t m : {8ull, 33ull, 64ull}) {
    for (uint32_t k : {2u, 3u}) {
      for (uint64_t a : {1ull, 5ull}) {
        const WDistribution w = dist_w(m, k, a);
        const auto exact = testing::exact_dist_w(m, k, a);
        for (size_t i = 0; i < w.pmf.size(); ++i)
          CHECK(std::abs(w.pmf[i] - static_cast<double>(exact[i])) <= 1e-12);
      }
    }
  }
}

TEST_CASE("dist_w: mean never increases with dataset size") {
  for (uint64_t m : {32ull, 256ull}) {
    for (uint32_t k : {2u, 4u}) {
      double prev = dist_w(m, k, 1).mean();
      for (uint64_t a = 2; a <= 12; ++a) {
        const double mean = dist_w(m, k, a).mean();
        CHECK(mean <= prev + 1e-9);
        prev = mean;
      }
    }
  }
}

TEST_CASE("quantile_n: clamps to one when the mass sits at zero") {
  // |A| = 1 and m huge: W = 2k almost surely, but make delta big enough
  // that the quantile would be small. Build a synthetic distribution
  // with almost all mass at w = 0 instead.
  WDistribution dist;
  dist.m = 16;
  dist.k = 2;
  dist.dataset_size = 1;
  dist.pmf = {0.99, 0.005, 0.003, 0.001, 0.001};
  dist.cdf = {0.99, 0.995, 0.998, 0.999, 1.0};
  CHECK(quantile_n(dist, 0.05) == 1);  // raw quantile 0, clamped
  CHECK(quantile_n(dist, 0.004) == 2);
}

TEST_CASE("quantile_n: saturates at 2k for tiny delta") {
  const WDistribution w = dist_w(32, 3, 1);
  // mass at 2k is substantial for |A| = 1, so a tiny delta lands there
  CHECK(quantile_n(w, 1e-9) == 6);
}

TEST_CASE("quantile_n: monotone in delta and integer-consistent with rationals") {
  const WDistribution w = dist_w(32, 3, 5);
  const auto exact = testing::exact_dist_w(32, 3, 5);
  uint32_t prev = 2 * 3;
  for (double delta : {0.001, 0.01, 0.05, 0.1, 0.25, 0.5, 0.9}) {
    const uint32_t n = quantile_n(w, delta);
    CHECK(n <= prev);  // larger delta, smaller or equal quantile
    prev = n;
    CHECK(n == testing::exact_quantile(
                   exact, testing::Rational(delta * 1000.0) / 1000));
  }
  CHECK_THROWS_AS(quantile_n(w, 0.0), DomainError);
  CHECK_THROWS_AS(quantile_n(w, 1.0), DomainError);
}

TEST_CASE("dist_w_cached returns a stable shared table") {
  const auto a = dist_w_cached(128, 5, 20);
  const auto b = dist_w_cached(128, 5, 20);
  CHECK(a.get() == b.get());
  CHECK(a->pmf == dist_w(128, 5, 20).pmf);
}
