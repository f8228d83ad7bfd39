#include "dpbloom/bounds.hpp"

#include <cmath>

#include "dpbloom/error.hpp"

namespace dpbloom {

FprForms fpr_forms(uint64_t m, uint32_t k, uint64_t dataset_size) {
  if (m < 2) throw DomainError("fpr_forms: m must be >= 2");
  if (k < 1) throw DomainError("fpr_forms: k must be >= 1");

  FprForms out;
  if (dataset_size == 0) return out;

  const double md = static_cast<double>(m);
  const double throws = static_cast<double>(dataset_size) * k;
  // -expm1(x) = 1 - e^x keeps precision when the bit-set probability is tiny.
  out.exact = std::pow(-std::expm1(throws * std::log1p(-1.0 / md)), k);
  out.approximate = std::pow(-std::expm1(-throws / md), k);
  out.bound = std::pow(-std::expm1(-2.0 * throws / md), k);
  return out;
}

double fpr_exact(uint64_t m, uint32_t k, uint64_t dataset_size) {
  return fpr_forms(m, k, dataset_size).exact;
}

void UtilityParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DomainError("UtilityParams: alpha must lie in [0, 1]");
  if (!(t >= 0.5 && t < 1.0))
    throw DomainError("UtilityParams: t must lie in [1/2, 1)");
  if (k < 1) throw DomainError("UtilityParams: k must be >= 1");
  if (!(delta_err >= 0.0 && delta_err <= 1.0))
    throw DomainError("UtilityParams: delta_err must lie in [0, 1]");
}

double accuracy_bound_standard(uint64_t m, uint32_t k, uint64_t dataset_size,
                               double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DomainError("accuracy_bound_standard: alpha must lie in [0, 1]");
  return 1.0 - fpr_forms(m, k, dataset_size).bound * alpha;
}

double accuracy_bound_private(const UtilityParams& utility) {
  utility.validate();
  const double tk = std::pow(utility.t, utility.k);
  return utility.alpha * (1.0 - utility.t - tk) * utility.delta_err +
         utility.alpha * utility.t;
}

double agreement_bound_private(const UtilityParams& utility) {
  utility.validate();
  return utility.t * utility.alpha * (1.0 - utility.delta_err);
}

double random_guess_rate(uint32_t k) {
  if (k < 1) throw DomainError("random_guess_rate: k must be >= 1");
  return std::ldexp(1.0, -static_cast<int>(k));
}

}  // namespace dpbloom
