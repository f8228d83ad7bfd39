#include "dpbloom/experiment_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "dpbloom/error.hpp"

namespace dpbloom {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

uint64_t parse_u64(const std::string& token, const std::string& key) {
  uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw DomainError("experiment config: bad integer for key '" + key + "': " + token);
  return value;
}

double parse_double(const std::string& token, const std::string& key) {
  try {
    size_t pos = 0;
    const double value = std::stod(token, &pos);
    if (pos != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw DomainError("experiment config: bad number for key '" + key + "': " + token);
  }
}

std::vector<uint64_t> parse_u64_list(const std::string& value, const std::string& key) {
  std::vector<uint64_t> out;
  for (const auto& item : split_list(value)) out.push_back(parse_u64(item, key));
  if (out.empty()) throw DomainError("experiment config: empty list for key '" + key + "'");
  return out;
}

std::vector<double> parse_double_list(const std::string& value, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(parse_double(item, key));
  if (out.empty()) throw DomainError("experiment config: empty list for key '" + key + "'");
  return out;
}

ExperimentKind parse_kind(const std::string& value) {
  if (value == "fpr") return ExperimentKind::kFpr;
  if (value == "utility") return ExperimentKind::kUtility;
  if (value == "wdist") return ExperimentKind::kWdist;
  if (value == "audit") return ExperimentKind::kAudit;
  if (value == "calibrate") return ExperimentKind::kCalibrate;
  throw DomainError("experiment config: unknown kind '" + value + "'");
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  ExperimentConfig config;
  bool saw_kind = false;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DomainError("experiment config line " + std::to_string(line_no) +
                        ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "kind") {
      config.kind = parse_kind(value);
      saw_kind = true;
    } else if (key == "m") {
      config.m = parse_u64_list(value, key);
    } else if (key == "k") {
      config.k = parse_u64_list(value, key);
    } else if (key == "dataset_size") {
      config.dataset_size = parse_u64_list(value, key);
    } else if (key == "epsilon") {
      config.epsilon = parse_double_list(value, key);
    } else if (key == "delta") {
      config.delta = parse_double_list(value, key);
    } else if (key == "alpha") {
      config.alpha = parse_double_list(value, key);
    } else if (key == "epsilon0") {
      config.epsilon0 = parse_double_list(value, key);
    } else if (key == "trials") {
      config.trials = parse_u64(value, key);
    } else if (key == "query_count") {
      config.query_count = parse_u64(value, key);
    } else if (key == "rng_seed") {
      config.rng_seed = parse_u64(value, key);
    } else if (key == "universe") {
      config.universe = parse_u64(value, key);
    } else if (key == "out") {
      config.out = value;
    } else {
      throw DomainError("experiment config: unknown key '" + key + "'");
    }
  }
  if (!saw_kind) throw DomainError("experiment config: missing required key 'kind'");
  config.validate();
  return config;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open experiment config: " + path);
  return parse(in);
}

void ExperimentConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw DomainError(std::string("experiment config: ") + what);
  };
  require(!m.empty(), "key 'm' is required");
  require(!k.empty(), "key 'k' is required");
  require(!dataset_size.empty(), "key 'dataset_size' is required");
  require(!out.empty(), "key 'out' is required");

  switch (kind) {
    case ExperimentKind::kFpr:
      break;
    case ExperimentKind::kUtility:
      require(!epsilon.empty(), "utility experiments need key 'epsilon'");
      require(!delta.empty(), "utility experiments need key 'delta'");
      require(!alpha.empty(), "utility experiments need key 'alpha'");
      break;
    case ExperimentKind::kWdist:
      require(m.size() == 1 && k.size() == 1 && dataset_size.size() == 1,
              "wdist experiments need single-valued m, k, dataset_size");
      break;
    case ExperimentKind::kAudit:
      require(!epsilon0.empty(), "audit experiments need key 'epsilon0'");
      require(m.size() == 1 && k.size() == 1 && dataset_size.size() == 1,
              "audit experiments need single-valued m, k, dataset_size");
      require(epsilon.size() <= 1 && delta.size() <= 1,
              "audit experiments take at most one epsilon and delta");
      break;
    case ExperimentKind::kCalibrate:
      require(!delta.empty(), "calibrate experiments need key 'delta'");
      break;
  }
}

}  // namespace dpbloom
