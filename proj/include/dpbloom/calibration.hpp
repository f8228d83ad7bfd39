#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dpbloom/error.hpp"

namespace dpbloom {

// Distribution of the number of distinct positions occupied by one
// element's k hash values. Support is {1, ..., k}; entries for
// y > min(k, m) are exactly zero.
struct YDistribution {
  uint64_t m = 0;
  uint32_t k = 0;
  std::vector<double> pmf;  // pmf[y], index 0 unused

  double prob(uint32_t y) const {
    return (y >= 1 && y < pmf.size()) ? pmf[y] : 0.0;
  }
};

// Conditional distribution of the union size |Z| of two elements'
// position sets, given their distinct counts a and b. Slices exist for
// a, b in [1, min(k, m)]; conditioning on larger counts is infeasible
// (zero-probability event) and rejected.
class ZConditional {
 public:
  ZConditional(uint64_t m, uint32_t k, uint32_t feasible_max,
               std::vector<std::vector<double>> slices)
      : m_(m), k_(k), feasible_max_(feasible_max), slices_(std::move(slices)) {}

  uint64_t m() const { return m_; }
  uint32_t k() const { return k_; }
  uint32_t feasible_max() const { return feasible_max_; }

  // Pr[|Z| = z | a, b]. Zero outside [max(a,b), min(a+b, m)].
  double prob(uint32_t a, uint32_t b, uint32_t z) const;

  // Slice accessor used by tests; indexed from z = max(a, b).
  const std::vector<double>& slice(uint32_t a, uint32_t b) const;

 private:
  void check_feasible(uint32_t a, uint32_t b) const;

  uint64_t m_;
  uint32_t k_;
  uint32_t feasible_max_;
  // slices_[(a-1) * feasible_max + (b-1)][z - max(a,b)]
  std::vector<std::vector<double>> slices_;
};

// Distribution of W, the number of bit positions where the ground-truth
// arrays of two neighboring datasets differ. Support {0, ..., 2k}.
struct WDistribution {
  uint64_t m = 0;
  uint32_t k = 0;
  uint64_t dataset_size = 0;
  double p0 = 0.0;          // probability a fixed bit is still 0 after |A|-1 inserts
  std::vector<double> pmf;  // indexed by w in [0, 2k]
  std::vector<double> cdf;

  double mean() const;
};

YDistribution dist_y(uint64_t m, uint32_t k);
ZConditional dist_z_given_y(uint64_t m, uint32_t k);
WDistribution dist_w(uint64_t m, uint32_t k, uint64_t dataset_size);

// Memoized variant; one table per (m, k, dataset_size), safe for
// concurrent callers.
std::shared_ptr<const WDistribution> dist_w_cached(uint64_t m, uint32_t k,
                                                   uint64_t dataset_size);

// Smallest w with F_W(w) >= 1 - delta, clamped up to 1 so that a
// per-bit budget epsilon/N is always defined. Never exceeds 2k.
uint32_t quantile_n(const WDistribution& dist, double delta);

namespace detail {
// log C(n, r) and log A_n^r = log n!/(n-r)!; -inf when r < 0 or r > n.
double log_choose(int64_t n, int64_t r);
double log_falling(int64_t n, int64_t r);
}  // namespace detail

}  // namespace dpbloom
