#pragma once

// Named invariant suites run by `qgl verify`. Each suite is deterministic in
// the configured seed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qgl::verify {

struct Config {
  std::size_t dim1 = 2;
  std::size_t dim2 = 2;
  int cutoff1 = 4;
  int cutoff2 = 4;
  std::uint64_t seed = 42;
  // Replaces every suite's own tolerance when set.
  std::optional<double> tol;
  // Empty means all suites.
  std::vector<std::string> suites;
};

struct SuiteResult {
  std::string name;
  std::string identity;
  bool passed = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  int cases = 0;
  std::string detail;
};

struct SuiteInfo {
  std::string name;
  std::string identity;
  bool needs_laplacian;  // requires cutoffs >= 2
};

std::vector<SuiteInfo> suites();

// Throws InputError for an invalid configuration (unknown suite, dims < 1,
// cutoffs < 2 when a Laplacian suite is selected).
void validate(const Config& config);

std::vector<SuiteResult> run(const Config& config);

nlohmann::json report(const Config& config, const std::vector<SuiteResult>& results);

}  // namespace qgl::verify
