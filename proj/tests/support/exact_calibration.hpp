#pragma once

// Exact-rational twin of the calibration formulas, for cross-checking
// the double-precision implementation on small and mid-size m. Test
// support only; deliberately shares no code with the library path.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <vector>

namespace dpbloom::testing {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_choose(int64_t n, int64_t r) {
  if (r < 0 || r > n) return 0;
  BigInt result = 1;
  for (int64_t i = 0; i < r; ++i) {
    result *= (n - i);
    result /= (i + 1);
  }
  return result;
}

inline BigInt big_falling(int64_t n, int64_t r) {
  if (r < 0 || r > n) return 0;
  BigInt result = 1;
  for (int64_t i = 0; i < r; ++i) result *= (n - i);
  return result;
}

inline Rational big_pow(const Rational& base, uint64_t exponent) {
  Rational result = 1;
  for (uint64_t i = 0; i < exponent; ++i) result *= base;
  return result;
}

inline std::vector<Rational> exact_dist_y(uint64_t m, uint32_t k) {
  std::vector<Rational> pmf(k + 1, 0);
  BigInt mk = 1;
  for (uint32_t i = 0; i < k; ++i) mk *= m;
  for (uint32_t y = 1; y <= k; ++y) {
    BigInt yk = 1;
    for (uint32_t i = 0; i < k; ++i) yk *= y;
    Rational value = Rational(big_choose(static_cast<int64_t>(m), y) * yk, mk);
    for (uint32_t i = 1; i < y; ++i)
      value -= Rational(big_choose(static_cast<int64_t>(m) - i,
                                   static_cast<int64_t>(y) - i)) *
               pmf[i];
    pmf[y] = value;
  }
  return pmf;
}

// Pr[|Z| = z | a, b] for z in [max(a,b), min(a+b, m)].
inline Rational exact_dist_z(uint64_t m, uint32_t a, uint32_t b, uint32_t z) {
  const uint32_t hi = std::max(a, b);
  const uint32_t lo = std::min(a, b);
  if (z < hi || z > std::min<uint64_t>(a + b, m)) return 0;
  const uint32_t t = z - hi;
  if (t > lo) return 0;
  const BigInt numerator = big_choose(lo, t) *
                           big_falling(static_cast<int64_t>(m) - hi, t) *
                           big_falling(hi, static_cast<int64_t>(lo) - t);
  return Rational(numerator, big_falling(static_cast<int64_t>(m), lo));
}

// Exact law of "w of j tracked bins still empty" after `balls` uniform
// throws into m bins.
inline Rational exact_occupancy(uint32_t j, uint32_t w, uint64_t balls, uint64_t m) {
  if (balls == 0) return w == j ? 1 : 0;
  Rational sum = 0;
  for (uint32_t i = 0; i + w <= j; ++i) {
    const Rational term =
        Rational(big_choose(j - w, i)) *
        big_pow(Rational(static_cast<int64_t>(m) - (w + i), static_cast<int64_t>(m)),
                balls);
    sum += (i % 2 == 0) ? term : -term;
  }
  return Rational(big_choose(j, w)) * sum;
}

inline std::vector<Rational> exact_dist_w(uint64_t m, uint32_t k, uint64_t dataset_size) {
  const auto pmf_y = exact_dist_y(m, k);
  const uint64_t balls = (dataset_size - 1) * k;
  const uint32_t feasible_max = static_cast<uint32_t>(std::min<uint64_t>(k, m));

  std::vector<Rational> pmf(2 * static_cast<size_t>(k) + 1, 0);
  for (uint32_t a = 1; a <= feasible_max; ++a)
    for (uint32_t b = 1; b <= feasible_max; ++b) {
      const Rational weight_ab = pmf_y[a] * pmf_y[b];
      if (weight_ab == 0) continue;
      const uint32_t hi = std::max(a, b);
      const uint64_t z_max = std::min<uint64_t>(a + b, m);
      for (uint32_t z = hi; z <= z_max; ++z) {
        const Rational weight = weight_ab * exact_dist_z(m, a, b, z);
        if (weight == 0) continue;
        const uint32_t n2 = 2 * z - a - b;
        for (uint32_t w = 0; w <= n2; ++w)
          pmf[w] += weight * exact_occupancy(n2, w, balls, m);
      }
    }
  return pmf;
}

inline uint32_t exact_quantile(const std::vector<Rational>& pmf, const Rational& delta) {
  const Rational target = 1 - delta;
  Rational cdf = 0;
  uint32_t raw = static_cast<uint32_t>(pmf.size() - 1);
  for (uint32_t w = 0; w < pmf.size(); ++w) {
    cdf += pmf[w];
    if (cdf >= target) {
      raw = w;
      break;
    }
  }
  return std::max<uint32_t>(raw, 1);
}

}  // namespace dpbloom::testing
