#include "dpbloom/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>

namespace dpbloom {

namespace detail {

// r is small everywhere in this module (bounded by 2k <= 128), so the
// direct product form beats lgamma differences, whose absolute error
// scales with lgamma(n) and swamps 1e-12 matching for large n.
double log_falling(int64_t n, int64_t r) {
  if (r < 0 || r > n) return -std::numeric_limits<double>::infinity();
  long double acc = 0.0L;
  for (int64_t i = 0; i < r; ++i) acc += std::log(static_cast<long double>(n - i));
  return static_cast<double>(acc);
}

double log_choose(int64_t n, int64_t r) {
  if (r < 0 || r > n) return -std::numeric_limits<double>::infinity();
  if (r > n - r) r = n - r;
  long double acc = 0.0L;
  for (int64_t i = 0; i < r; ++i)
    acc += std::log(static_cast<long double>(n - i)) -
           std::log(static_cast<long double>(i + 1));
  return static_cast<double>(acc);
}

}  // namespace detail

using detail::log_choose;
using detail::log_falling;

namespace {

void check_mk(uint64_t m, uint32_t k) {
  if (m < 2) throw DomainError("calibration: m must be >= 2");
  if (k < 1 || k > 64) throw DomainError("calibration: k must be in [1, 64]");
}

// log(e^a + e^b) without leaving log space.
double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

}  // namespace

YDistribution dist_y(uint64_t m, uint32_t k) {
  check_mk(m, k);
  YDistribution out;
  out.m = m;
  out.k = k;
  out.pmf.assign(k + 1, 0.0);

  // Tuples with exactly y distinct values = C(m,y) * y! * S(k,y), with
  // S(k,y) the count of ways to partition the k slots over y occupied
  // positions. The partition recurrence has only positive terms, so it
  // stays stable in log space for the whole (m, k) domain; the
  // equivalent subtract-the-overcounts form cancels catastrophically
  // once C(m,y) y^k / m^k outgrows the result.
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<double> log_partitions(k + 1, kNegInf);
  log_partitions[0] = 0.0;
  for (uint32_t n = 1; n <= k; ++n) {
    for (uint32_t j = std::min(n, k); j >= 1; --j)
      log_partitions[j] =
          log_add(std::log(static_cast<double>(j)) + log_partitions[j],
                  log_partitions[j - 1]);
    log_partitions[0] = kNegInf;
  }

  const double log_m = std::log(static_cast<double>(m));
  for (uint32_t y = 1; y <= k; ++y)
    out.pmf[y] = std::exp(log_choose(static_cast<int64_t>(m), y) +
                          std::lgamma(static_cast<double>(y) + 1.0) +
                          log_partitions[y] - k * log_m);

  double sum = 0.0;
  for (double p : out.pmf) sum += p;
  if (std::abs(sum - 1.0) > 1e-6)
    throw NumericalError("dist_y: pmf does not normalize (m=" + std::to_string(m) +
                         ", k=" + std::to_string(k) + ", sum=" + std::to_string(sum) + ")");
  return out;
}

void ZConditional::check_feasible(uint32_t a, uint32_t b) const {
  if (a < 1 || b < 1 || a > k_ || b > k_)
    throw DomainError("ZConditional: (a, b) outside [1, k]");
  if (a > feasible_max_ || b > feasible_max_)
    throw CalibrationError("ZConditional: infeasible slice, more distinct positions than m (m=" +
                           std::to_string(m_) + ", k=" + std::to_string(k_) + ", a=" +
                           std::to_string(a) + ", b=" + std::to_string(b) + ")");
}

const std::vector<double>& ZConditional::slice(uint32_t a, uint32_t b) const {
  check_feasible(a, b);
  return slices_[(a - 1) * feasible_max_ + (b - 1)];
}

double ZConditional::prob(uint32_t a, uint32_t b, uint32_t z) const {
  const std::vector<double>& s = slice(a, b);
  const uint32_t lo_z = std::max(a, b);
  if (z < lo_z || z >= lo_z + s.size()) return 0.0;
  return s[z - lo_z];
}

ZConditional dist_z_given_y(uint64_t m, uint32_t k) {
  check_mk(m, k);
  const uint32_t feasible_max =
      static_cast<uint32_t>(std::min<uint64_t>(k, m));

  std::vector<std::vector<double>> slices(static_cast<size_t>(feasible_max) * feasible_max);
  for (uint32_t a = 1; a <= feasible_max; ++a) {
    for (uint32_t b = 1; b <= feasible_max; ++b) {
      const uint32_t hi = std::max(a, b);
      const uint32_t lo = std::min(a, b);
      const uint64_t z_max = std::min<uint64_t>(a + b, m);
      std::vector<double> slice(z_max - hi + 1, 0.0);

      // Pr[|Z| = hi + t] = C(lo,t) A_{m-hi}^t A_hi^{lo-t} / A_m^lo:
      // t of the smaller set's positions fall outside the larger set.
      const double log_denom = log_falling(static_cast<int64_t>(m), lo);
      double sum = 0.0;
      for (uint32_t z = hi; z <= z_max; ++z) {
        const uint32_t t = z - hi;
        if (t > lo) break;
        const double log_p = log_choose(lo, t) +
                             log_falling(static_cast<int64_t>(m) - hi, t) +
                             log_falling(hi, static_cast<int64_t>(lo) - t) - log_denom;
        const double p = std::exp(log_p);
        slice[z - hi] = p;
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-6)
        throw CalibrationError("dist_z_given_y: slice does not normalize (m=" +
                               std::to_string(m) + ", k=" + std::to_string(k) + ", a=" +
                               std::to_string(a) + ", b=" + std::to_string(b) + ")");
      slices[(a - 1) * static_cast<size_t>(feasible_max) + (b - 1)] = std::move(slice);
    }
  }
  return ZConditional(m, k, feasible_max, std::move(slices));
}

namespace {

// Law of "exactly w of j tracked positions are still empty" after
// `balls` uniform throws into m bins, by inclusion-exclusion:
//   C(j,w) sum_i (-1)^i C(j-w,i) (1 - (w+i)/m)^balls.
// This is the exact conditional for W given n2 = j exclusive-or
// positions; treating the positions as independent Bernoulli(p0) draws
// instead shifts the distribution noticeably at desk-scale m.
std::vector<double> occupancy_pmf(uint32_t j, double balls, uint64_t m) {
  std::vector<double> pmf(j + 1, 0.0);
  if (balls == 0.0) {
    pmf[j] = 1.0;
    return pmf;
  }
  const double md = static_cast<double>(m);
  for (uint32_t w = 0; w <= j; ++w) {
    double sum = 0.0;
    for (uint32_t i = 0; i + w <= j; ++i) {
      const double term =
          std::exp(log_choose(j - w, i) +
                   balls * std::log1p(-static_cast<double>(w + i) / md));
      sum += (i % 2 == 0) ? term : -term;
    }
    pmf[w] = std::max(0.0, std::exp(log_choose(j, w)) * sum);
  }
  return pmf;
}

}  // namespace

WDistribution dist_w(uint64_t m, uint32_t k, uint64_t dataset_size) {
  check_mk(m, k);
  if (dataset_size < 1) throw DomainError("dist_w: dataset_size must be >= 1");

  WDistribution out;
  out.m = m;
  out.k = k;
  out.dataset_size = dataset_size;

  // p0 = (1 - 1/m)^{(|A|-1) k}, the chance a fixed bit is untouched by
  // the |A|-1 elements the neighboring datasets share.
  const double balls = static_cast<double>(dataset_size - 1) * k;
  const double log_p0 = balls * std::log1p(-1.0 / static_cast<double>(m));
  out.p0 = (dataset_size == 1) ? 1.0 : std::exp(log_p0);

  const YDistribution y = dist_y(m, k);
  const ZConditional z_given_y = dist_z_given_y(m, k);
  const uint32_t feasible_max = z_given_y.feasible_max();

  // One occupancy table per exclusive-or count, shared by all (a, b, z).
  std::vector<std::vector<double>> occupancy(2 * static_cast<size_t>(k) + 1);
  auto occupancy_for = [&](uint32_t n2) -> const std::vector<double>& {
    if (occupancy[n2].empty()) occupancy[n2] = occupancy_pmf(n2, balls, m);
    return occupancy[n2];
  };

  out.pmf.assign(2 * static_cast<size_t>(k) + 1, 0.0);
  for (uint32_t a = 1; a <= feasible_max; ++a) {
    for (uint32_t b = 1; b <= feasible_max; ++b) {
      const double weight_ab = y.prob(a) * y.prob(b);
      if (weight_ab == 0.0) continue;
      const uint32_t hi = std::max(a, b);
      const uint64_t z_max = std::min<uint64_t>(a + b, m);
      for (uint32_t z = hi; z <= z_max; ++z) {
        const double weight = weight_ab * z_given_y.prob(a, b, z);
        if (weight == 0.0) continue;
        // Only exclusive-or positions can differ, and each survives as
        // a difference iff it was still 0 after the shared inserts.
        const uint32_t n2 = 2 * z - a - b;
        const std::vector<double>& conditional = occupancy_for(n2);
        for (uint32_t w = 0; w <= n2; ++w) out.pmf[w] += weight * conditional[w];
      }
    }
  }

  double sum = 0.0;
  out.cdf.resize(out.pmf.size());
  for (size_t w = 0; w < out.pmf.size(); ++w) {
    sum += out.pmf[w];
    out.cdf[w] = sum;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw NumericalError("dist_w: pmf does not normalize (m=" + std::to_string(m) +
                         ", k=" + std::to_string(k) + ", |A|=" + std::to_string(dataset_size) +
                         ")");
  return out;
}

double WDistribution::mean() const {
  double acc = 0.0;
  for (size_t w = 1; w < pmf.size(); ++w) acc += static_cast<double>(w) * pmf[w];
  return acc;
}

std::shared_ptr<const WDistribution> dist_w_cached(uint64_t m, uint32_t k,
                                                   uint64_t dataset_size) {
  using Key = std::tuple<uint64_t, uint32_t, uint64_t>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const WDistribution>> cache;

  const Key key{m, k, dataset_size};
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto dist = std::make_shared<const WDistribution>(dist_w(m, k, dataset_size));
  std::lock_guard<std::mutex> lock(mutex);
  return cache.try_emplace(key, std::move(dist)).first->second;
}

uint32_t quantile_n(const WDistribution& dist, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw DomainError("quantile_n: delta must lie in (0, 1)");
  const double target = 1.0 - delta;
  uint32_t raw = static_cast<uint32_t>(dist.pmf.size() - 1);
  for (uint32_t w = 0; w < dist.cdf.size(); ++w) {
    if (dist.cdf[w] + 1e-12 >= target) {
      raw = w;
      break;
    }
  }
  return std::max<uint32_t>(raw, 1);
}

}  // namespace dpbloom
