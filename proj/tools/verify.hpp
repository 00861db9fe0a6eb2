#pragma once

// The `verify` command: every module's property suite run against one bundle.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bkalg/bkalg.hpp"

namespace bkalg::tools {

struct PropertyResult {
  std::string name;
  bool passed = true;
  std::size_t trials = 0;
  double max_defect = 0.0;  // largest violation seen; <= threshold when passed
  double threshold = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::size_t samples = 500;
  double tolerance = kDefaultSpectrumTolerance;
  std::size_t cap = kDefaultEnumerationCap;
  std::uint64_t seed = 0;
};

/// Each property draws from its own stream split off the seed in a fixed
/// order, so results are reproducible property by property.
std::vector<PropertyResult> verify_bundle(const BundlePtr& bundle, const VerifyOptions& options);

}  // namespace bkalg::tools
