#pragma once

#include <cstdint>
#include <vector>

#include "dpbloom/calibration.hpp"

namespace dpbloom {

// Brute-force and Monte Carlo counterparts of the calibration
// formulas. These deliberately avoid the analytic code paths: the
// enumerators walk raw hash-assignment space with integer counting, and
// the Monte Carlo sampler builds real filters and compares bit arrays.

// Exact distribution of the distinct count over all m^k hash tuples.
// Refuses when m^k > 10^7.
YDistribution enumerate_y(uint64_t m, uint32_t k);

// Exact conditional union-size distribution over all pairs of
// distinct-position sets of sizes (a, b). Refuses when the subset-pair
// count exceeds 10^7.
ZConditional enumerate_z(uint64_t m, uint32_t k);

// Empirical W histogram: per trial, draw a dataset, substitute one
// element, build both filters under a fresh hash seed, count differing
// bits.
struct McWResult {
  std::vector<uint64_t> counts;  // indexed by w in [0, 2k]
  std::vector<double> pmf;
  uint64_t trials = 0;

  // Smallest w whose empirical CDF reaches 1 - delta, clamped to >= 1
  // like the analytic quantile.
  uint32_t empirical_quantile(double delta) const;
};

McWResult mc_w_distribution(uint64_t m, uint32_t k, uint64_t dataset_size,
                            uint64_t trials, uint64_t rng_seed,
                            uint64_t universe = uint64_t{1} << 40);

// Half the L1 distance between the analytic pmf and the empirical one.
double total_variation(const WDistribution& dist, const McWResult& mc);

}  // namespace dpbloom
