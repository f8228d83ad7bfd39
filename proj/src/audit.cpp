#include "dpbloom/audit.hpp"

#include <algorithm>
#include <cmath>

#include "dpbloom/bloom.hpp"
#include "dpbloom/error.hpp"
#include "dpbloom/oracles.hpp"
#include "dpbloom/private_filter.hpp"
#include "dpbloom/rng.hpp"
#include "dpbloom/threading.hpp"

namespace dpbloom {

namespace {

constexpr uint32_t kMaxSeedAttempts = 64;

struct NeighborPair {
  std::vector<uint64_t> dataset;
  std::vector<uint64_t> neighbor;
};

NeighborPair sample_neighbors(SplitMix64& rng, uint64_t dataset_size, uint64_t universe) {
  NeighborPair out;
  while (out.dataset.size() < dataset_size) {
    const uint64_t candidate = rng.next_below(universe);
    if (std::find(out.dataset.begin(), out.dataset.end(), candidate) == out.dataset.end())
      out.dataset.push_back(candidate);
  }
  out.neighbor = out.dataset;
  const size_t victim = static_cast<size_t>(rng.next_below(dataset_size));
  uint64_t replacement;
  do {
    replacement = rng.next_below(universe);
  } while (std::find(out.dataset.begin(), out.dataset.end(), replacement) !=
           out.dataset.end());
  out.neighbor[victim] = replacement;
  return out;
}

// ln(p/q) with a delta-method standard deviation; counts of value v
// out of `trials` draws under each dataset.
AuditBitRow make_row(uint64_t bit, bool differing, uint8_t value, uint64_t count_a,
                     uint64_t count_b, uint64_t trials, double band_center) {
  AuditBitRow row;
  row.bit = bit;
  row.differing = differing;
  row.value = value;
  const double t = static_cast<double>(trials);
  // Continuity guard: a zero count would put the ratio at infinity.
  const double p = std::max(static_cast<double>(count_a), 0.5) / t;
  const double q = std::max(static_cast<double>(count_b), 0.5) / t;
  row.log_ratio = std::log(p) - std::log(q);
  row.sigma = std::sqrt((1.0 - p) / (t * p) + (1.0 - q) / (t * q));
  row.band = band_center + 4.0 * row.sigma;
  row.pass = std::abs(row.log_ratio) <= row.band;
  return row;
}

}  // namespace

bool AuditReport::all_pass() const {
  if (inconclusive) return false;
  for (const auto& row : bits)
    if (!row.pass) return false;
  if (quantile && !quantile->pass) return false;
  return true;
}

AuditReport privacy_audit(uint64_t m, uint32_t k, uint64_t dataset_size,
                          double epsilon0, uint64_t trials, uint64_t rng_seed,
                          std::optional<std::pair<double, double>> epsilon_delta) {
  if (!(epsilon0 > 0.0)) throw DomainError("privacy_audit: epsilon0 must be > 0");
  if (trials < 1'000'000) throw DomainError("privacy_audit: need at least 1e6 trials");
  if (dataset_size < 1) throw DomainError("privacy_audit: dataset_size must be >= 1");

  const uint64_t universe = std::max<uint64_t>(uint64_t{1} << 20, dataset_size * 16);
  AuditReport report;
  report.epsilon0 = epsilon0;
  report.trials = trials;

  // Fix a neighboring pair whose ground-truth arrays actually differ;
  // substituted elements can collide onto the same bits, so retry the
  // sampling on fresh seeds.
  SplitMix64 setup_rng(mix64(rng_seed ^ 0x8f462907'5b0cdd1dULL));
  BitArray bits_a, bits_b;
  FilterParams params;
  uint64_t inserted = 0;
  bool found = false;
  for (uint32_t attempt = 0; attempt < kMaxSeedAttempts && !found; ++attempt) {
    NeighborPair pair = sample_neighbors(setup_rng, dataset_size, universe);
    params = FilterParams{m, k, universe, setup_rng.next()};
    const BloomFilter fa = bloom_init(pair.dataset, params);
    const BloomFilter fb = bloom_init(pair.neighbor, params);
    if (fa.bits().hamming_distance(fb.bits()) > 0) {
      bits_a = fa.bits();
      bits_b = fb.bits();
      inserted = fa.inserted_count();
      found = true;
    }
  }
  if (!found) {
    report.inconclusive = true;
    return report;
  }

  const PrivacyBudget budget = PrivacyBudget::from_epsilon0(epsilon0, m, k, inserted);
  const BloomFilter filter_a(params, bits_a, inserted);
  const BloomFilter filter_b(params, bits_b, inserted);

  // Count, per bit, how often the released value is 1 under each
  // dataset across `trials` independent flip passes.
  const unsigned workers = worker_count();
  std::vector<std::vector<uint64_t>> ones_a(workers, std::vector<uint64_t>(m, 0));
  std::vector<std::vector<uint64_t>> ones_b(workers, std::vector<uint64_t>(m, 0));
  const uint64_t seed_a = mix64(rng_seed ^ 0x9216d5d9'8979fb1bULL);
  const uint64_t seed_b = mix64(rng_seed ^ 0x452821e6'38d01377ULL);
  parallel_chunks(
      trials,
      [&](unsigned worker, uint64_t begin, uint64_t end) {
        for (uint64_t trial = begin; trial < end; ++trial) {
          const PrivateBloomFilter ga = privatize(filter_a, budget, prf64(seed_a, trial));
          const PrivateBloomFilter gb = privatize(filter_b, budget, prf64(seed_b, trial));
          for (uint64_t j = 0; j < m; ++j) {
            ones_a[worker][j] += ga.bits().get(j);
            ones_b[worker][j] += gb.bits().get(j);
          }
        }
      },
      workers);

  std::vector<uint64_t> count_a(m, 0), count_b(m, 0);
  for (unsigned w = 0; w < workers; ++w)
    for (uint64_t j = 0; j < m; ++j) {
      count_a[j] += ones_a[w][j];
      count_b[j] += ones_b[w][j];
    }

  for (uint64_t j = 0; j < m; ++j) {
    const bool differing = bits_a.get(j) != bits_b.get(j);
    const double center = differing ? epsilon0 : 0.0;
    report.bits.push_back(make_row(j, differing, 1, count_a[j], count_b[j], trials, center));
    report.bits.push_back(make_row(j, differing, 0, trials - count_a[j],
                                   trials - count_b[j], trials, center));
  }

  if (epsilon_delta) {
    const auto [epsilon, delta] = *epsilon_delta;
    const PrivacyBudget derived = derive_budget(epsilon, delta, m, k, dataset_size);
    const McWResult mc = mc_w_distribution(m, k, dataset_size, trials,
                                           mix64(rng_seed ^ 0xbe5466cf'34e90c6cULL), universe);
    // W * eps0 > eps  <=>  W > N, compared in integers.
    uint64_t exceed = 0;
    for (size_t w = derived.big_n + 1; w < mc.counts.size(); ++w) exceed += mc.counts[w];

    AuditQuantileRow row;
    row.epsilon = epsilon;
    row.delta = delta;
    row.big_n = derived.big_n;
    row.epsilon0 = derived.epsilon0;
    row.exceed_rate = static_cast<double>(exceed) / static_cast<double>(trials);
    row.threshold =
        delta + 3.0 * std::sqrt(delta * (1.0 - delta) / static_cast<double>(trials));
    row.pass = row.exceed_rate <= row.threshold;
    report.quantile = row;
  }
  return report;
}

}  // namespace dpbloom
