#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dpbloom {

enum class ExperimentKind { kFpr, kUtility, kWdist, kAudit, kCalibrate };

// Line-oriented key=value experiment description: `#` comments, lists
// comma-separated. Grid lists multiply out per experiment kind.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kFpr;
  std::vector<uint64_t> m;
  std::vector<uint64_t> k;
  std::vector<uint64_t> dataset_size;
  std::vector<double> epsilon;
  std::vector<double> delta;
  std::vector<double> alpha;
  std::vector<double> epsilon0;
  uint64_t trials = 100'000;
  uint64_t query_count = 100'000;
  uint64_t rng_seed = 1;
  uint64_t universe = uint64_t{1} << 20;
  std::string out;

  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig parse_file(const std::string& path);

  // Kind-specific requirements (which lists must be present, which must
  // be single-valued). Throws DomainError naming the offending key.
  void validate() const;
};

}  // namespace dpbloom
