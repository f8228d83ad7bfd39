#pragma once

#include <cstdint>

#include "dpbloom/error.hpp"

namespace dpbloom {

// Global (epsilon, delta) budget resolved into the per-bit budget
// epsilon0 = epsilon / N, where N is the 1-delta quantile of W. Records
// the (m, k, |A|) it was derived for; applying it to a differently
// shaped filter voids the guarantee and is rejected.
struct PrivacyBudget {
  double epsilon = 0.0;
  double delta = 0.0;
  uint32_t big_n = 0;  // N = F_W^{-1}(1 - delta)
  double epsilon0 = 0.0;
  double keep_prob = 0.0;  // e^eps0 / (e^eps0 + 1)
  double flip_prob = 0.0;  // 1 / (e^eps0 + 1)

  // Provenance.
  uint64_t m = 0;
  uint32_t k = 0;
  uint64_t dataset_size = 0;

  // Budget with the flip probabilities evaluated from a raw per-bit
  // epsilon0 >= 0. The experiment path uses this for the epsilon0 = 0
  // random-guess baseline; derive_budget is the calibrated entry point.
  static PrivacyBudget from_epsilon0(double epsilon0, uint64_t m, uint32_t k,
                                     uint64_t dataset_size);
};

// Calibrated entry point: N = quantile of W at 1 - delta for the given
// dimensions, epsilon0 = epsilon / N.
PrivacyBudget derive_budget(double epsilon, double delta, uint64_t m, uint32_t k,
                            uint64_t dataset_size);

}  // namespace dpbloom
