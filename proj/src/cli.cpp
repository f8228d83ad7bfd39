#include "dpbloom/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dpbloom/audit.hpp"
#include "dpbloom/bloom.hpp"
#include "dpbloom/bounds.hpp"
#include "dpbloom/budget.hpp"
#include "dpbloom/calibration.hpp"
#include "dpbloom/error.hpp"
#include "dpbloom/experiment.hpp"
#include "dpbloom/experiment_config.hpp"
#include "dpbloom/oracles.hpp"
#include "dpbloom/private_filter.hpp"
#include "dpbloom/rng.hpp"
#include "dpbloom/serialize.hpp"

namespace dpbloom::cli {

namespace {

constexpr uint64_t kDefaultUniverse = uint64_t{1} << 32;
constexpr uint64_t kTokenDomainKey = 0x1bd11bda'a9fc1a22ULL;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

uint64_t hash_token(const std::string& token, uint64_t universe) {
  // FNV-1a over the bytes, then the shared mixer under a dedicated
  // domain key so text datasets land in [0, n).
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : token) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return prf64(kTokenDomainKey, h) % universe;
}

struct ParsedToken {
  bool ok = false;
  uint64_t value = 0;
};

ParsedToken parse_element(const std::string& token, bool hash_tokens, uint64_t universe) {
  uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc() && ptr == token.data() + token.size())
    return {true, value};
  if (hash_tokens) return {true, hash_token(token, universe)};
  return {false, 0};
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<uint64_t> read_dataset(const std::string& path, bool hash_tokens,
                                   uint64_t universe) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset: " + path);
  std::vector<uint64_t> elements;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const ParsedToken parsed = parse_element(line, hash_tokens, universe);
    if (!parsed.ok)
      throw IoError("dataset " + path + " line " + std::to_string(line_no) +
                    ": cannot parse '" + line + "' (use --hash-tokens for text data)");
    elements.push_back(parsed.value);
  }
  return elements;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

int cmd_build(const std::string& dataset_path, uint64_t m, uint64_t k, uint64_t n,
              uint64_t seed, bool hash_tokens, const std::string& out_path,
              std::ostream& out) {
  if (n == 0) n = kDefaultUniverse;
  const std::vector<uint64_t> elements = read_dataset(dataset_path, hash_tokens, n);
  FilterParams params{m, static_cast<uint32_t>(k), n, seed};
  params.validate();
  const BloomFilter filter = bloom_init(elements, params);
  save_filter_file(filter, out_path);

  out << "m=" << m << " k=" << k << " inserted=" << filter.inserted_count()
      << " load_factor=" << fmt(filter.load_factor())
      << " fpr_exact=" << fmt(fpr_exact(m, params.k, filter.inserted_count())) << "\n";
  return kExitOk;
}

int cmd_privatize(const std::string& in_path, double epsilon, double delta,
                  uint64_t rng_seed, const std::string& out_path, std::ostream& out) {
  const LoadedFilter loaded = load_filter_file(in_path);
  if (loaded.header.privatized())
    throw DomainError(
        "input is already privatized; a second flip pass is not covered by the "
        "calibrated budget and is refused");
  const BloomFilter filter = loaded.to_bloom();
  const PrivacyBudget budget = derive_budget(
      epsilon, delta, filter.params().m, filter.params().k, filter.inserted_count());
  const PrivateBloomFilter private_filter = privatize(filter, budget, rng_seed);
  save_filter_file(private_filter, out_path);

  out << "N=" << budget.big_n << " epsilon0=" << fmt(budget.epsilon0)
      << " keep_prob=" << fmt(budget.keep_prob) << "\n";
  return kExitOk;
}

int cmd_query(const std::string& filter_path, const std::string& queries_path,
              const std::string& single_value, bool hash_tokens, std::ostream& out,
              std::ostream& err) {
  const LoadedFilter loaded = load_filter_file(filter_path);
  std::optional<BloomFilter> plain;
  std::optional<PrivateBloomFilter> private_filter;
  if (loaded.header.privatized())
    private_filter.emplace(loaded.to_private());
  else
    plain.emplace(loaded.to_bloom());

  uint64_t total = 0, positives = 0;
  auto run_one = [&](const std::string& token, size_t line_no) {
    const ParsedToken parsed =
        parse_element(token, hash_tokens, loaded.header.n);
    if (!parsed.ok || parsed.value >= loaded.header.n) {
      err << "query line " << line_no << ": skipping '" << token
          << (parsed.ok ? "' (outside universe)" : "' (cannot parse)") << "\n";
      return;
    }
    const bool hit = private_filter ? private_query(*private_filter, parsed.value)
                                    : bloom_query(*plain, parsed.value);
    out << token << "," << (hit ? 1 : 0) << "\n";
    ++total;
    positives += hit;
  };

  if (!single_value.empty()) {
    run_one(single_value, 1);
  } else {
    std::ifstream in(queries_path);
    if (!in) throw IoError("cannot open queries: " + queries_path);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      line = trim(line);
      if (line.empty()) continue;
      run_one(line, line_no);
    }
  }
  out << "# queries=" << total << " positives=" << positives << " positive_rate="
      << fmt(total ? static_cast<double>(positives) / static_cast<double>(total) : 0.0)
      << "\n";
  return kExitOk;
}

int cmd_calibrate(uint64_t m, uint64_t k, uint64_t dataset_size, double delta,
                  const std::string& out_path, std::ostream& out) {
  const WDistribution dist = dist_w(m, static_cast<uint32_t>(k), dataset_size);
  const uint32_t n = quantile_n(dist, delta);

  std::ofstream csv = open_output(out_path);
  csv << "w,pmf,cdf\n";
  for (size_t w = 0; w < dist.pmf.size(); ++w)
    csv << w << "," << fmt(dist.pmf[w]) << "," << fmt(dist.cdf[w]) << "\n";
  csv << "# N=" << n << " p0=" << fmt(dist.p0) << "\n";
  if (!csv) throw IoError("write failed: " + out_path);

  out << "N=" << n << " p0=" << fmt(dist.p0) << "\n";
  return kExitOk;
}

void run_fpr_experiment(const ExperimentConfig& config, std::ostream& csv,
                        std::ostream& err) {
  csv << "m,k,A,fpr_exact,fpr_emp,ci\n";
  uint64_t point = 0;
  for (uint64_t m : config.m)
    for (uint64_t k : config.k)
      for (uint64_t a : config.dataset_size) {
        const uint64_t seed = prf64(config.rng_seed, point++);
        try {
          SplitMix64 rng(seed);
          std::vector<uint64_t> dataset;
          while (dataset.size() < a) {
            const uint64_t c = rng.next_below(config.universe);
            if (std::find(dataset.begin(), dataset.end(), c) == dataset.end())
              dataset.push_back(c);
          }
          FilterParams params{m, static_cast<uint32_t>(k), config.universe, rng.next()};
          const BloomFilter filter = bloom_init(dataset, params);
          uint64_t fp = 0;
          for (uint64_t q = 0; q < config.query_count; ++q) {
            uint64_t y;
            do {
              y = rng.next_below(config.universe);
            } while (std::find(dataset.begin(), dataset.end(), y) != dataset.end());
            fp += bloom_query(filter, y);
          }
          const double exact = fpr_exact(m, static_cast<uint32_t>(k), a);
          const double emp =
              static_cast<double>(fp) / static_cast<double>(config.query_count);
          const double ci =
              3.0 * std::sqrt(exact * (1.0 - exact) /
                              static_cast<double>(config.query_count));
          csv << m << "," << k << "," << a << "," << fmt(exact) << "," << fmt(emp) << ","
              << fmt(ci) << "\n";
        } catch (const std::exception& e) {
          err << "fpr point (m=" << m << ",k=" << k << ",A=" << a
              << ") failed: " << e.what() << "\n";
        }
      }
}

void run_utility_experiment_grid(const ExperimentConfig& config, std::ostream& csv,
                                 std::ostream& err) {
  csv << "m,k,A,alpha,eps,delta,N,eps0,bound_D4,acc_emp,ci\n";
  uint64_t point = 0;
  for (uint64_t m : config.m)
    for (uint64_t k : config.k)
      for (uint64_t a : config.dataset_size)
        for (double alpha : config.alpha)
          for (double eps : config.epsilon)
            for (double delta : config.delta) {
              const uint64_t seed = prf64(config.rng_seed, point++);
              try {
                UtilityExperimentParams params;
                params.m = m;
                params.k = static_cast<uint32_t>(k);
                params.dataset_size = a;
                params.alpha = alpha;
                params.epsilon = eps;
                params.delta = delta;
                params.query_count = config.query_count;
                params.trials = config.trials;
                params.rng_seed = seed;
                params.universe = config.universe;
                const UtilityExperimentResult result = run_utility_experiment(params);

                UtilityParams utility{alpha, result.budget.keep_prob,
                                      static_cast<uint32_t>(k),
                                      fpr_exact(m, static_cast<uint32_t>(k), a)};
                const double bound = accuracy_bound_private(utility);
                const double ci =
                    3.0 * result.sigma(result.acc_private, result.queries);
                csv << m << "," << k << "," << a << "," << fmt(alpha) << "," << fmt(eps)
                    << "," << fmt(delta) << "," << result.budget.big_n << ","
                    << fmt(result.budget.epsilon0) << "," << fmt(bound) << ","
                    << fmt(result.acc_private) << "," << fmt(ci) << "\n";
              } catch (const std::exception& e) {
                err << "utility point (m=" << m << ",k=" << k << ",A=" << a
                    << ",alpha=" << alpha << ",eps=" << eps << ",delta=" << delta
                    << ") failed: " << e.what() << "\n";
              }
            }
}

void run_wdist_experiment(const ExperimentConfig& config, std::ostream& csv) {
  const uint64_t m = config.m[0];
  const uint32_t k = static_cast<uint32_t>(config.k[0]);
  const uint64_t a = config.dataset_size[0];

  const WDistribution analytic = dist_w(m, k, a);
  const McWResult mc =
      mc_w_distribution(m, k, a, config.trials, config.rng_seed, config.universe);

  csv << "w,analytic,empirical,tv_running\n";
  double tv = 0.0;
  for (size_t w = 0; w < analytic.pmf.size(); ++w) {
    tv += std::abs(analytic.pmf[w] - mc.pmf[w]) / 2.0;
    csv << w << "," << fmt(analytic.pmf[w]) << "," << fmt(mc.pmf[w]) << "," << fmt(tv)
        << "\n";
  }
}

void run_audit_experiment(const ExperimentConfig& config, std::ostream& csv,
                          std::ostream& err) {
  csv << "bit_class,log_ratio,band,pass\n";
  uint64_t point = 0;
  for (double epsilon0 : config.epsilon0) {
    const uint64_t seed = prf64(config.rng_seed, point++);
    try {
      std::optional<std::pair<double, double>> eps_delta;
      if (!config.epsilon.empty() && !config.delta.empty())
        eps_delta = std::make_pair(config.epsilon[0], config.delta[0]);
      const AuditReport report =
          privacy_audit(config.m[0], static_cast<uint32_t>(config.k[0]),
                        config.dataset_size[0], epsilon0, config.trials, seed, eps_delta);
      if (report.inconclusive) {
        err << "audit eps0=" << epsilon0 << ": inconclusive (no differing bit)\n";
        continue;
      }
      for (const auto& row : report.bits)
        csv << (row.differing ? "differing" : "agreeing") << "," << fmt(row.log_ratio)
            << "," << fmt(row.band) << "," << (row.pass ? "true" : "false") << "\n";
      if (report.quantile)
        csv << "quantile_check," << fmt(report.quantile->exceed_rate) << ","
            << fmt(report.quantile->threshold) << ","
            << (report.quantile->pass ? "true" : "false") << "\n";
    } catch (const std::exception& e) {
      err << "audit point eps0=" << epsilon0 << " failed: " << e.what() << "\n";
    }
  }
}

void run_calibrate_experiment(const ExperimentConfig& config, std::ostream& csv,
                              std::ostream& err) {
  csv << "m,k,A,delta,N,w,pmf,cdf\n";
  for (uint64_t m : config.m)
    for (uint64_t k : config.k)
      for (uint64_t a : config.dataset_size)
        for (double delta : config.delta) {
          try {
            const WDistribution dist = dist_w(m, static_cast<uint32_t>(k), a);
            const uint32_t n = quantile_n(dist, delta);
            for (size_t w = 0; w < dist.pmf.size(); ++w)
              csv << m << "," << k << "," << a << "," << fmt(delta) << "," << n << ","
                  << w << "," << fmt(dist.pmf[w]) << "," << fmt(dist.cdf[w]) << "\n";
          } catch (const std::exception& e) {
            err << "calibrate point (m=" << m << ",k=" << k << ",A=" << a
                << ",delta=" << delta << ") failed: " << e.what() << "\n";
          }
        }
}

int cmd_experiment(const std::string& config_path, std::ostream& out, std::ostream& err) {
  const ExperimentConfig config = ExperimentConfig::parse_file(config_path);
  std::ofstream csv = open_output(config.out);
  switch (config.kind) {
    case ExperimentKind::kFpr:
      run_fpr_experiment(config, csv, err);
      break;
    case ExperimentKind::kUtility:
      run_utility_experiment_grid(config, csv, err);
      break;
    case ExperimentKind::kWdist:
      run_wdist_experiment(config, csv);
      break;
    case ExperimentKind::kAudit:
      run_audit_experiment(config, csv, err);
      break;
    case ExperimentKind::kCalibrate:
      run_calibrate_experiment(config, csv, err);
      break;
  }
  if (!csv) throw IoError("write failed: " + config.out);
  out << "wrote " << config.out << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differentially private Bloom filters"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "Build a plain filter from a dataset file");
  std::string build_dataset, build_out;
  uint64_t build_m = 1024, build_k = 4, build_n = 0, build_seed = 1;
  bool build_hash_tokens = false;
  build->add_option("--dataset", build_dataset, "newline-delimited elements")->required();
  build->add_option("--m", build_m, "bit-array length")->required();
  build->add_option("--k", build_k, "hash-function count")->required();
  build->add_option("--n", build_n, "universe size (default 2^32)");
  build->add_option("--seed", build_seed, "hash root seed");
  build->add_flag("--hash-tokens", build_hash_tokens,
                  "hash non-numeric tokens into the universe");
  build->add_option("--out", build_out, "output filter file")->required();

  // privatize
  auto* priv = app.add_subcommand("privatize", "Apply the calibrated flip pass");
  std::string priv_in, priv_out;
  double priv_epsilon = 1.0, priv_delta = 0.05;
  uint64_t priv_seed = 1;
  priv->add_option("--in", priv_in, "input plain filter file")->required();
  priv->add_option("--epsilon", priv_epsilon, "global epsilon")->required();
  priv->add_option("--delta", priv_delta, "global delta")->required();
  priv->add_option("--rng-seed", priv_seed, "flip-pass seed");
  priv->add_option("--out", priv_out, "output filter file")->required();

  // query
  auto* query = app.add_subcommand("query", "Run membership queries against a filter file");
  std::string query_filter, query_path, query_value;
  bool query_hash_tokens = false;
  query->add_option("--filter", query_filter, "filter file")->required();
  query->add_option("--queries", query_path, "newline-delimited query elements");
  query->add_option("--value", query_value, "single query element");
  query->add_flag("--hash-tokens", query_hash_tokens,
                  "hash non-numeric tokens into the universe");

  // calibrate
  auto* calibrate = app.add_subcommand("calibrate", "Dump the W distribution and N");
  uint64_t cal_m = 0, cal_k = 0, cal_a = 0;
  double cal_delta = 0.05;
  std::string cal_out;
  calibrate->add_option("--m", cal_m, "bit-array length")->required();
  calibrate->add_option("--k", cal_k, "hash-function count")->required();
  calibrate->add_option("--dataset-size", cal_a, "|A|")->required();
  calibrate->add_option("--delta", cal_delta, "quantile delta")->required();
  calibrate->add_option("--out", cal_out, "output CSV")->required();

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run an experiment grid from a config");
  std::string exp_config;
  experiment->add_option("--config", exp_config, "key=value config file")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }

  try {
    if (build->parsed())
      return cmd_build(build_dataset, build_m, build_k, build_n, build_seed,
                       build_hash_tokens, build_out, out);
    if (priv->parsed())
      return cmd_privatize(priv_in, priv_epsilon, priv_delta, priv_seed, priv_out, out);
    if (query->parsed()) {
      if (query_path.empty() == query_value.empty())
        throw DomainError("query: provide exactly one of --queries or --value");
      return cmd_query(query_filter, query_path, query_value, query_hash_tokens, out, err);
    }
    if (calibrate->parsed())
      return cmd_calibrate(cal_m, cal_k, cal_a, cal_delta, cal_out, out);
    if (experiment->parsed()) return cmd_experiment(exp_config, out, err);
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  err << "error: no subcommand\n";
  return kExitDomain;
}

}  // namespace dpbloom::cli
