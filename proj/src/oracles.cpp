#include "dpbloom/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "dpbloom/bloom.hpp"
#include "dpbloom/error.hpp"
#include "dpbloom/rng.hpp"
#include "dpbloom/threading.hpp"

namespace dpbloom {

namespace {

constexpr uint64_t kEnumerationGuard = 10'000'000;

// Floor of m^k with saturation, for the enumeration guards.
uint64_t saturating_pow(uint64_t m, uint32_t k) {
  uint64_t result = 1;
  for (uint32_t i = 0; i < k; ++i) {
    if (result > kEnumerationGuard) return UINT64_MAX;
    result *= m;
  }
  return result;
}

uint64_t choose_u64(uint64_t n, uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  uint64_t result = 1;
  for (uint64_t i = 0; i < r; ++i) {
    if (result > kEnumerationGuard) return UINT64_MAX;
    result = result * (n - i) / (i + 1);
  }
  return result;
}

// Advances a strictly increasing index vector over [0, m); returns
// false after the last combination.
bool next_combination(std::vector<uint32_t>& idx, uint32_t m) {
  const uint32_t r = static_cast<uint32_t>(idx.size());
  for (uint32_t pos = r; pos-- > 0;) {
    if (idx[pos] < m - (r - pos)) {
      ++idx[pos];
      for (uint32_t j = pos + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<uint64_t> sample_distinct(SplitMix64& rng, uint64_t count, uint64_t universe) {
  std::vector<uint64_t> out;
  out.reserve(count);
  while (out.size() < count) {
    const uint64_t candidate = rng.next_below(universe);
    if (std::find(out.begin(), out.end(), candidate) == out.end())
      out.push_back(candidate);
  }
  return out;
}

}  // namespace

YDistribution enumerate_y(uint64_t m, uint32_t k) {
  if (m < 2) throw DomainError("enumerate_y: m must be >= 2");
  if (k < 1 || k > 64) throw DomainError("enumerate_y: k must be in [1, 64]");
  const uint64_t tuple_count = saturating_pow(m, k);
  if (tuple_count > kEnumerationGuard)
    throw DomainError("enumerate_y: m^k exceeds the enumeration guard of 1e7");

  std::vector<uint64_t> counts(k + 1, 0);
  std::vector<uint32_t> tuple(k, 0);
  std::vector<uint8_t> seen(m, 0);
  for (uint64_t n = 0; n < tuple_count; ++n) {
    uint32_t distinct = 0;
    for (uint32_t i = 0; i < k; ++i) {
      if (!seen[tuple[i]]) {
        seen[tuple[i]] = 1;
        ++distinct;
      }
    }
    for (uint32_t i = 0; i < k; ++i) seen[tuple[i]] = 0;
    ++counts[distinct];
    // Odometer increment, least significant digit first.
    for (uint32_t i = 0; i < k; ++i) {
      if (++tuple[i] < m) break;
      tuple[i] = 0;
    }
  }

  YDistribution out;
  out.m = m;
  out.k = k;
  out.pmf.assign(k + 1, 0.0);
  for (uint32_t y = 1; y <= k; ++y)
    out.pmf[y] = static_cast<double>(counts[y]) / static_cast<double>(tuple_count);
  return out;
}

ZConditional enumerate_z(uint64_t m, uint32_t k) {
  if (m < 2) throw DomainError("enumerate_z: m must be >= 2");
  if (k < 1 || k > 64) throw DomainError("enumerate_z: k must be in [1, 64]");
  const uint32_t feasible_max = static_cast<uint32_t>(std::min<uint64_t>(k, m));

  uint64_t work = 0;
  for (uint32_t a = 1; a <= feasible_max; ++a)
    for (uint32_t b = 1; b <= feasible_max; ++b) {
      const uint64_t pairs = choose_u64(m, a) * choose_u64(m, b);
      work = (pairs > kEnumerationGuard) ? UINT64_MAX : work + pairs;
    }
  if (work > kEnumerationGuard)
    throw DomainError("enumerate_z: subset-pair count exceeds the enumeration guard of 1e7");

  const uint32_t mm = static_cast<uint32_t>(m);
  std::vector<std::vector<double>> slices(static_cast<size_t>(feasible_max) * feasible_max);
  std::vector<uint8_t> mark(mm, 0);
  for (uint32_t a = 1; a <= feasible_max; ++a) {
    for (uint32_t b = 1; b <= feasible_max; ++b) {
      const uint32_t hi = std::max(a, b);
      const uint64_t z_max = std::min<uint64_t>(a + b, m);
      std::vector<uint64_t> counts(z_max - hi + 1, 0);
      uint64_t total = 0;

      std::vector<uint32_t> first(a);
      for (uint32_t i = 0; i < a; ++i) first[i] = i;
      do {
        for (uint32_t pos : first) mark[pos] = 1;
        std::vector<uint32_t> second(b);
        for (uint32_t i = 0; i < b; ++i) second[i] = i;
        do {
          uint32_t unionsize = a;
          for (uint32_t pos : second) unionsize += !mark[pos];
          ++counts[unionsize - hi];
          ++total;
        } while (next_combination(second, mm));
        for (uint32_t pos : first) mark[pos] = 0;
      } while (next_combination(first, mm));

      std::vector<double> slice(counts.size());
      for (size_t i = 0; i < counts.size(); ++i)
        slice[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
      slices[(a - 1) * static_cast<size_t>(feasible_max) + (b - 1)] = std::move(slice);
    }
  }
  return ZConditional(m, k, feasible_max, std::move(slices));
}

McWResult mc_w_distribution(uint64_t m, uint32_t k, uint64_t dataset_size,
                            uint64_t trials, uint64_t rng_seed, uint64_t universe) {
  if (dataset_size < 1) throw DomainError("mc_w_distribution: dataset_size must be >= 1");
  if (trials < 10'000) throw DomainError("mc_w_distribution: need at least 1e4 trials");
  if (universe < dataset_size * 4 + 4)
    throw DomainError("mc_w_distribution: universe too small relative to dataset");

  const unsigned workers = worker_count();
  std::vector<std::vector<uint64_t>> partial(
      workers, std::vector<uint64_t>(2 * static_cast<size_t>(k) + 1, 0));

  parallel_chunks(
      trials,
      [&](unsigned worker, uint64_t begin, uint64_t end) {
        std::vector<uint64_t>& counts = partial[worker];
        for (uint64_t trial = begin; trial < end; ++trial) {
          SplitMix64 rng(prf64(rng_seed, trial));
          std::vector<uint64_t> dataset = sample_distinct(rng, dataset_size, universe);

          // Substitute one element to form the neighboring dataset.
          std::vector<uint64_t> neighbor = dataset;
          const size_t victim = static_cast<size_t>(rng.next_below(dataset_size));
          uint64_t replacement;
          do {
            replacement = rng.next_below(universe);
          } while (std::find(dataset.begin(), dataset.end(), replacement) != dataset.end());
          neighbor[victim] = replacement;

          FilterParams params{m, k, universe, rng.next()};
          const BloomFilter g = bloom_init(dataset, params);
          const BloomFilter g_prime = bloom_init(neighbor, params);
          // at(): a distance beyond 2k would mean a broken build
          counts.at(g.bits().hamming_distance(g_prime.bits())) += 1;
        }
      },
      workers);

  McWResult out;
  out.trials = trials;
  out.counts.assign(2 * static_cast<size_t>(k) + 1, 0);
  for (const auto& worker_counts : partial)
    for (size_t w = 0; w < out.counts.size(); ++w) out.counts[w] += worker_counts[w];
  out.pmf.resize(out.counts.size());
  for (size_t w = 0; w < out.counts.size(); ++w)
    out.pmf[w] = static_cast<double>(out.counts[w]) / static_cast<double>(trials);
  return out;
}

uint32_t McWResult::empirical_quantile(double delta) const {
  if (!(delta > 0.0 && delta < 1.0))
    throw DomainError("empirical_quantile: delta must lie in (0, 1)");
  const uint64_t needed =
      static_cast<uint64_t>(std::ceil((1.0 - delta) * static_cast<double>(trials)));
  uint64_t cumulative = 0;
  uint32_t raw = static_cast<uint32_t>(counts.size() - 1);
  for (uint32_t w = 0; w < counts.size(); ++w) {
    cumulative += counts[w];
    if (cumulative >= needed) {
      raw = w;
      break;
    }
  }
  return std::max<uint32_t>(raw, 1);
}

double total_variation(const WDistribution& dist, const McWResult& mc) {
  if (dist.pmf.size() != mc.pmf.size())
    throw DomainError("total_variation: support size mismatch");
  double l1 = 0.0;
  for (size_t w = 0; w < dist.pmf.size(); ++w) l1 += std::abs(dist.pmf[w] - mc.pmf[w]);
  return l1 / 2.0;
}

}  // namespace dpbloom
