#include "dpbloom/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dpbloom/bloom.hpp"
#include "dpbloom/error.hpp"
#include "dpbloom/private_filter.hpp"
#include "dpbloom/rng.hpp"
#include "dpbloom/threading.hpp"

namespace dpbloom {

namespace {

struct TrialCounts {
  uint64_t outcomes[2][2][2] = {};
  uint64_t false_negatives = 0;

  void tally(const QueryOutcome& o) {
    outcomes[o.z][o.z_hat][o.z_tilde] += 1;
    if (o.z && !o.z_hat) false_negatives += 1;
  }

  TrialRates rates() const {
    TrialRates r;
    uint64_t members = 0, correct_standard = 0, correct_private = 0, agree = 0;
    uint64_t standard_fp = 0, private_fn = 0;
    for (int z = 0; z < 2; ++z)
      for (int zh = 0; zh < 2; ++zh)
        for (int zt = 0; zt < 2; ++zt) {
          const uint64_t c = outcomes[z][zh][zt];
          r.queries += c;
          if (z) members += c;
          if (z == zh) correct_standard += c;
          if (z == zt) correct_private += c;
          if (zh == zt) agree += c;
          if (!z && zh) standard_fp += c;
          if (z && !zt) private_fn += c;
        }
    const double n = static_cast<double>(r.queries);
    const uint64_t nonmembers = r.queries - members;
    r.acc_standard = correct_standard / n;
    r.acc_private = correct_private / n;
    r.agreement = agree / n;
    r.fpr_standard = nonmembers ? static_cast<double>(standard_fp) / nonmembers : 0.0;
    r.fnr_private = members ? static_cast<double>(private_fn) / members : 0.0;
    return r;
  }
};

TrialCounts run_trial(const UtilityExperimentParams& p, const PrivacyBudget& budget,
                      uint64_t trial) {
  SplitMix64 rng(prf64(p.rng_seed, trial));

  std::vector<uint64_t> dataset;
  dataset.reserve(p.dataset_size);
  while (dataset.size() < p.dataset_size) {
    const uint64_t candidate = rng.next_below(p.universe);
    if (std::find(dataset.begin(), dataset.end(), candidate) == dataset.end())
      dataset.push_back(candidate);
  }

  const FilterParams params{p.m, p.k, p.universe, rng.next()};
  const BloomFilter filter = bloom_init(dataset, params);
  const PrivateBloomFilter private_filter = privatize(filter, budget, rng.next());

  TrialCounts counts;
  for (uint64_t q = 0; q < p.query_count; ++q) {
    const bool member = rng.next_unit() >= p.alpha;
    uint64_t query;
    if (member) {
      query = dataset[rng.next_below(p.dataset_size)];
    } else {
      do {
        query = rng.next_below(p.universe);
      } while (std::find(dataset.begin(), dataset.end(), query) != dataset.end());
    }
    counts.tally(QueryOutcome{member, bloom_query(filter, query),
                              private_query(private_filter, query)});
  }
  return counts;
}

}  // namespace

double UtilityExperimentResult::sigma(double rate, uint64_t n) const {
  if (n == 0) return 0.0;
  return std::sqrt(std::max(rate * (1.0 - rate), 0.0) / static_cast<double>(n));
}

UtilityExperimentResult run_utility_experiment(const UtilityExperimentParams& p) {
  if (p.dataset_size < 1) throw DomainError("run_utility_experiment: dataset_size >= 1");
  if (!(p.alpha >= 0.0 && p.alpha <= 1.0))
    throw DomainError("run_utility_experiment: alpha must lie in [0, 1]");
  if (p.query_count < 1) throw DomainError("run_utility_experiment: query_count >= 1");
  if (p.trials < 1) throw DomainError("run_utility_experiment: trials >= 1");
  if (p.universe < p.dataset_size * 2)
    throw DomainError("run_utility_experiment: universe too small for non-member sampling");

  UtilityExperimentResult out;
  out.budget = p.epsilon == 0.0
                   ? PrivacyBudget::from_epsilon0(0.0, p.m, p.k, p.dataset_size)
                   : derive_budget(p.epsilon, p.delta, p.m, p.k, p.dataset_size);

  const unsigned workers = worker_count();
  std::vector<TrialCounts> per_trial_counts(p.trials);
  parallel_chunks(
      p.trials,
      [&](unsigned, uint64_t begin, uint64_t end) {
        for (uint64_t trial = begin; trial < end; ++trial)
          per_trial_counts[trial] = run_trial(p, out.budget, trial);
      },
      workers);

  uint64_t false_negatives = 0;
  TrialCounts total;
  out.per_trial.reserve(p.trials);
  for (const TrialCounts& counts : per_trial_counts) {
    out.per_trial.push_back(counts.rates());
    false_negatives += counts.false_negatives;
    for (int z = 0; z < 2; ++z)
      for (int zh = 0; zh < 2; ++zh)
        for (int zt = 0; zt < 2; ++zt) {
          total.outcomes[z][zh][zt] += counts.outcomes[z][zh][zt];
          out.outcome_counts[z][zh][zt] += counts.outcomes[z][zh][zt];
        }
  }
  out.false_negatives_standard = false_negatives;

  const TrialRates aggregate = total.rates();
  out.queries = aggregate.queries;
  uint64_t members = 0;
  for (int zh = 0; zh < 2; ++zh)
    for (int zt = 0; zt < 2; ++zt) members += out.outcome_counts[1][zh][zt];
  out.members = members;
  out.acc_standard = aggregate.acc_standard;
  out.acc_private = aggregate.acc_private;
  out.agreement = aggregate.agreement;
  out.fpr_standard = aggregate.fpr_standard;
  out.fnr_private = aggregate.fnr_private;

  uint64_t private_positive = 0;
  for (int z = 0; z < 2; ++z)
    for (int zh = 0; zh < 2; ++zh) private_positive += out.outcome_counts[z][zh][1];
  out.positive_rate_private =
      static_cast<double>(private_positive) / static_cast<double>(out.queries);
  return out;
}

}  // namespace dpbloom
