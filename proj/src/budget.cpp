#include "dpbloom/budget.hpp"

#include <cmath>

#include "dpbloom/calibration.hpp"

namespace dpbloom {

PrivacyBudget PrivacyBudget::from_epsilon0(double epsilon0, uint64_t m, uint32_t k,
                                           uint64_t dataset_size) {
  if (!(epsilon0 >= 0.0) || !std::isfinite(epsilon0))
    throw DomainError("PrivacyBudget: epsilon0 must be finite and >= 0");
  PrivacyBudget budget;
  budget.epsilon0 = epsilon0;
  // flip = 1/(e^eps0 + 1) evaluated as e^-eps0/(1 + e^-eps0) to stay
  // accurate for large eps0.
  const double e_neg = std::exp(-epsilon0);
  budget.flip_prob = e_neg / (1.0 + e_neg);
  budget.keep_prob = 1.0 / (1.0 + e_neg);
  budget.m = m;
  budget.k = k;
  budget.dataset_size = dataset_size;
  return budget;
}

PrivacyBudget derive_budget(double epsilon, double delta, uint64_t m, uint32_t k,
                            uint64_t dataset_size) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw DomainError("derive_budget: epsilon must be > 0");
  if (!(delta > 0.0 && delta < 1.0))
    throw DomainError("derive_budget: delta must lie in (0, 1)");

  const auto dist = dist_w_cached(m, k, dataset_size);
  const uint32_t n = quantile_n(*dist, delta);
  PrivacyBudget budget =
      PrivacyBudget::from_epsilon0(epsilon / static_cast<double>(n), m, k, dataset_size);
  budget.epsilon = epsilon;
  budget.delta = delta;
  budget.big_n = n;
  return budget;
}

}  // namespace dpbloom
