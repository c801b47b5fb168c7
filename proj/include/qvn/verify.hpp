#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qvn/tolerance.hpp"

namespace qvn {

struct VerifyOptions {
  int dim_lo = 1;
  int dim_hi = 6;
  int trials = 10;
  std::uint64_t seed = 20240611;
  Tolerances tols;
};

struct PropertyResult {
  std::string module;
  std::string name;
  int passed = 0;
  int failed = 0;
  double worst_residual = 0.0;
  double threshold = 0.0;
};

struct VerifySummary {
  std::vector<PropertyResult> properties;
  std::vector<std::string> warnings;
  double seconds = 0.0;
  bool ok() const;
};

/// Runs every module's invariant suite. Trial t of a property at dimension n
/// draws from a generator seeded by (seed, property, n, t), so any single
/// trial is reproducible in isolation.
VerifySummary run_verify(const VerifyOptions& opts);

/// Names of the properties, in run order.
std::vector<std::string> property_names();

}  // namespace qvn
