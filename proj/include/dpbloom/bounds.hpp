#pragma once

#include <cstdint>

namespace dpbloom {

// Idealized false-positive probability of the standard filter,
// (1 - (1 - 1/m)^{|A| k})^k, plus the two printed companion forms.
struct FprForms {
  double exact = 0.0;        // (1 - (1 - 1/m)^{|A|k})^k
  double approximate = 0.0;  // (1 - e^{-k|A|/m})^k
  double bound = 0.0;        // (1 - e^{-2|A|k/m})^k, always >= exact
};

FprForms fpr_forms(uint64_t m, uint32_t k, uint64_t dataset_size);
double fpr_exact(uint64_t m, uint32_t k, uint64_t dataset_size);

// Inputs of the private-filter utility bound: alpha is the non-member
// fraction of the query stream, t the per-bit keep probability, and
// delta_err the standard filter's false-positive mass.
struct UtilityParams {
  double alpha = 0.0;
  double t = 0.0;
  uint32_t k = 0;
  double delta_err = 0.0;

  void validate() const;
};

// Pr[standard answer == truth] >= 1 - (1 - e^{-2|A|k/m})^k * alpha.
double accuracy_bound_standard(uint64_t m, uint32_t k, uint64_t dataset_size,
                               double alpha);

// Pr[private answer == truth] >= alpha (1 - t - t^k) delta_err + alpha t.
double accuracy_bound_private(const UtilityParams& utility);

// Pr[private answer == standard answer] >= t alpha (1 - delta_err).
double agreement_bound_private(const UtilityParams& utility);

// Positive rate of a pure-noise filter: 1 / 2^k.
double random_guess_rate(uint32_t k);

}  // namespace dpbloom
