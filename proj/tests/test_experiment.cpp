#include <doctest.h>

#include "dpbloom/bounds.hpp"
#include "dpbloom/experiment.hpp"
#include "support/stats.hpp"

using namespace dpbloom;

namespace {

UtilityExperimentParams base_params() {
  UtilityExperimentParams p;
  p.m = 1024;
  p.k = 4;
  p.dataset_size = 100;
  p.alpha = 0.9;
  p.epsilon = 1.0;
  p.delta = 0.05;
  p.query_count = 20'000;
  p.trials = 1;
  p.rng_seed = 404;
  return p;
}

}  // namespace

TEST_CASE("huge epsilon makes the private filter agree with the standard one") {
  UtilityExperimentParams p = base_params();
  p.epsilon = 1000.0;
  const UtilityExperimentResult r = run_utility_experiment(p);
  CHECK(r.agreement == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.false_negatives_standard == 0);
}

TEST_CASE("epsilon = 0 baseline answers positive at rate 1/2^k") {
  UtilityExperimentParams p = base_params();
  p.epsilon = 0.0;
  p.query_count = 1;
  p.trials = 50'000;  // fresh noise per query, so the binomial band applies
  const UtilityExperimentResult r = run_utility_experiment(p);
  CHECK(r.budget.epsilon0 == 0.0);
  CHECK(testing::within_band(r.positive_rate_private, random_guess_rate(p.k),
                             r.queries, 3.0));
}

TEST_CASE("empirical accuracy dominates the closed-form bounds") {
  UtilityExperimentParams p = base_params();
  const UtilityExperimentResult r = run_utility_experiment(p);
  CHECK(r.false_negatives_standard == 0);

  const double delta_err = fpr_exact(p.m, p.k, p.dataset_size);
  const UtilityParams utility{p.alpha, r.budget.keep_prob, p.k, delta_err};
  const double margin = 4.0 * r.sigma(r.acc_private, r.queries);
  CHECK(r.acc_private >= accuracy_bound_private(utility) - margin);
  CHECK(r.agreement >= agreement_bound_private(utility) - margin);
  CHECK(r.acc_standard >= accuracy_bound_standard(p.m, p.k, p.dataset_size, p.alpha) -
                              margin);
}

TEST_CASE("experiment runs are reproducible for a fixed seed") {
  const UtilityExperimentParams p = base_params();
  const UtilityExperimentResult a = run_utility_experiment(p);
  const UtilityExperimentResult b = run_utility_experiment(p);
  CHECK(a.acc_private == b.acc_private);
  CHECK(a.acc_standard == b.acc_standard);
  CHECK(a.agreement == b.agreement);
  for (int z = 0; z < 2; ++z)
    for (int zh = 0; zh < 2; ++zh)
      for (int zt = 0; zt < 2; ++zt)
        CHECK(a.outcome_counts[z][zh][zt] == b.outcome_counts[z][zh][zt]);
}

TEST_CASE("alpha controls the member mix") {
  UtilityExperimentParams p = base_params();
  p.alpha = 0.25;
  const UtilityExperimentResult r = run_utility_experiment(p);
  const double member_rate =
      static_cast<double>(r.members) / static_cast<double>(r.queries);
  CHECK(testing::within_band(member_rate, 0.75, r.queries, 4.0));
}

TEST_CASE("private accuracy is non-decreasing in epsilon up to CI overlap") {
  UtilityExperimentParams p = base_params();
  p.query_count = 40'000;
  double prev_acc = 0.0, prev_ci = 0.0;
  for (double epsilon : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    p.epsilon = epsilon;
    const UtilityExperimentResult r = run_utility_experiment(p);
    const double ci = 3.0 * r.sigma(r.acc_private, r.queries);
    CHECK(r.acc_private >= prev_acc - (ci + prev_ci));
    prev_acc = r.acc_private;
    prev_ci = ci;
  }
}

TEST_CASE("per-trial rates are reported and reduce to the aggregate") {
  UtilityExperimentParams p = base_params();
  p.trials = 5;
  p.query_count = 4000;
  const UtilityExperimentResult r = run_utility_experiment(p);
  REQUIRE(r.per_trial.size() == 5);

  uint64_t queries = 0;
  double correct_private = 0.0;
  for (const TrialRates& t : r.per_trial) {
    CHECK(t.queries == 4000);
    CHECK(t.acc_standard >= 0.0);
    CHECK(t.acc_standard <= 1.0);
    queries += t.queries;
    correct_private += t.acc_private * static_cast<double>(t.queries);
  }
  CHECK(queries == r.queries);
  CHECK(correct_private / static_cast<double>(queries) ==
        doctest::Approx(r.acc_private).epsilon(1e-12));
}
