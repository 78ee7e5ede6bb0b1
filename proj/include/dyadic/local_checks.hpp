#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dyadic {

struct LocalCheck {
  std::string suite;
  std::string name;
  bool passed;
  std::string detail;
};

struct LocalOptions {
  std::uint64_t seed = 42;
  std::uint64_t mc_samples = 1000000;
  std::uint64_t invariance_samples = 10000;
};

const std::vector<std::string>& local_suite_names();

/// Runs one suite ("identities", "measures", "stabilizer", "lifting",
/// "invariance") or "all". Output order and text are deterministic.
std::vector<LocalCheck> run_local_checks(const std::string& suite, const LocalOptions& opts);

}  // namespace dyadic
