#pragma once

// Randomized property sweeps over the theorems, shared by the CLI and tests.

#include <cstdint>
#include <string>
#include <vector>

#include "tropspec/bounds.hpp"

namespace tropspec {

struct SuiteOptions {
  int instances = 100;
  int nmax = 0;  // 0: the suite's own default
  std::uint64_t seed = 1;
  double tol = kBoundTol;
};

struct SuiteResult {
  std::string suite;
  int instances = 0;
  int passed = 0;
  /// Largest observed lhs/rhs over all checked inequalities (<= 1 + tol when passing).
  double worst_ratio = 0.0;
  /// Suite specific counter (applicable lower bounds, decomposition parts, ...).
  long extra = 0;
  std::string extra_label;
  std::vector<std::string> failures;  // first few, with instance numbers

  bool ok() const { return passed == instances; }
};

/// "upper", "lower", "hop", "proof-chain", "friedland" or "circulation".
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

const std::vector<std::string>& suite_names();

}  // namespace tropspec
