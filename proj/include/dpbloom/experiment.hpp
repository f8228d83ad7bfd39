#pragma once

#include <cstdint>
#include <vector>

#include "dpbloom/budget.hpp"

namespace dpbloom {

struct UtilityExperimentParams {
  uint64_t m = 0;
  uint32_t k = 0;
  uint64_t dataset_size = 0;
  double alpha = 0.0;     // non-member fraction of the query stream
  double epsilon = 0.0;   // 0 selects the epsilon0 = 0 random-guess baseline
  double delta = 0.0;
  uint64_t query_count = 0;
  uint64_t trials = 1;
  uint64_t rng_seed = 0;
  uint64_t universe = uint64_t{1} << 20;
};

// One query's ground truth and both filters' answers.
struct QueryOutcome {
  bool z = false;        // true membership
  bool z_hat = false;    // standard-filter answer
  bool z_tilde = false;  // private-filter answer
};

// Rates of a single trial (one filter build + one flip pass).
struct TrialRates {
  uint64_t queries = 0;
  double acc_standard = 0.0;
  double acc_private = 0.0;
  double agreement = 0.0;
  double fpr_standard = 0.0;
  double fnr_private = 0.0;
};

// Aggregated query outcomes across all trials. Counts index the truth
// z, the standard answer z_hat, and the private answer z_tilde.
struct UtilityExperimentResult {
  PrivacyBudget budget;      // budget of the final trial (identical shape every trial)
  uint64_t queries = 0;      // total queries across trials
  uint64_t members = 0;      // queries with z = 1
  uint64_t outcome_counts[2][2][2] = {};  // [z][z_hat][z_tilde]
  std::vector<TrialRates> per_trial;

  uint64_t false_negatives_standard = 0;  // must stay 0: z=1 with z_hat=0

  double acc_standard = 0.0;   // Pr_hat[z_hat = z]
  double acc_private = 0.0;    // Pr_hat[z_tilde = z]
  double agreement = 0.0;      // Pr_hat[z_tilde = z_hat]
  double fpr_standard = 0.0;   // Pr_hat[z_hat = 1 | z = 0]
  double fnr_private = 0.0;    // Pr_hat[z_tilde = 0 | z = 1]
  double positive_rate_private = 0.0;  // Pr_hat[z_tilde = 1]

  // Binomial standard error for a rate estimated from n of this run's
  // queries.
  double sigma(double rate, uint64_t n) const;
};

// Builds a fresh filter per trial (new dataset, new hash seed),
// privatizes it under the derived budget, and issues query_count
// queries whose true-membership fraction is 1 - alpha. Aggregation is
// deterministic for a given seed regardless of thread count.
UtilityExperimentResult run_utility_experiment(const UtilityExperimentParams& params);

}  // namespace dpbloom
