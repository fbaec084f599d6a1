#pragma once

// Line-oriented suite configuration and runner. See docs/suite-config.md.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tl/verify.hpp"

namespace tl {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SuiteItem {
  std::string key;    // rs, nests, hex, identities, strange, table, steady
  std::string value;
  int line = 0;
};

struct SuiteConfig {
  Budgets budgets;
  int threads = 0;
  std::filesystem::path cache_dir;  // empty: $TL_CACHE_DIR
  std::vector<SuiteItem> items;
};

/// Throws ConfigError with the line number on malformed input.
SuiteConfig parse_suite_config(std::string_view text);
SuiteConfig load_suite_config(const std::filesystem::path& path);

struct SuiteResult {
  std::vector<VerificationReport> reports;
  /// Fail if any report fails; Pass otherwise (an empty suite passes).
  Status overall() const;
};

SuiteResult run_suite(const SuiteConfig& config);

/// Writes suite.json and suite.txt into dir.
void write_suite_reports(const SuiteResult& result, const std::filesystem::path& dir);
std::string suite_to_json(const SuiteResult& result);
std::string suite_to_text(const SuiteResult& result);

}  // namespace tl
