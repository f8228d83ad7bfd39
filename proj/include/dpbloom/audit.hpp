#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpbloom/budget.hpp"

namespace dpbloom {

// Empirical check that the flip mechanism delivers the per-bit
// guarantee: over many privatize passes of two neighboring filters, the
// frequency ratio of every bit stays inside the e^{+-eps0} band where
// the ground truths differ, and at 1 where they agree.
struct AuditBitRow {
  uint64_t bit = 0;
  bool differing = false;   // true when the ground-truth bits differ
  uint8_t value = 0;        // output value v whose probabilities are compared
  double log_ratio = 0.0;   // ln(Pr_hat[g~[j]=v] / Pr_hat[g~'[j]=v])
  double sigma = 0.0;       // delta-method std of log_ratio
  double band = 0.0;        // |log_ratio| must not exceed this
  bool pass = false;
};

// Tail check of the global guarantee: the fraction of neighboring-pair
// draws whose differing-bit count N-exceeds the budget.
struct AuditQuantileRow {
  double epsilon = 0.0;
  double delta = 0.0;
  uint32_t big_n = 0;
  double epsilon0 = 0.0;
  double exceed_rate = 0.0;  // Pr_hat[W * eps0 > eps], i.e. Pr_hat[W > N]
  double threshold = 0.0;    // delta + 3 sigma
  bool pass = false;
};

struct AuditReport {
  bool inconclusive = false;  // no hash seed produced a differing bit
  double epsilon0 = 0.0;
  uint64_t trials = 0;
  std::vector<AuditBitRow> bits;
  std::optional<AuditQuantileRow> quantile;

  bool all_pass() const;
};

// Fixes a neighboring dataset pair and hash seed with a nonempty
// differing set, then estimates per-bit output frequencies over
// `trials` independent flip passes of each filter. When (epsilon,
// delta) are given, additionally derives the budget and runs the
// W-tail check over `trials` fresh neighboring pairs.
AuditReport privacy_audit(uint64_t m, uint32_t k, uint64_t dataset_size,
                          double epsilon0, uint64_t trials, uint64_t rng_seed,
                          std::optional<std::pair<double, double>> epsilon_delta =
                              std::nullopt);

}  // namespace dpbloom
