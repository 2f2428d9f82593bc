#pragma once

// Randomized check that substitution and adjunction splice yields exactly as
// the string-level definitions say.

#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

struct SpliceReport {
  int applications = 0;
  int substitutions = 0;
  int adjunctions = 0;
  std::vector<std::string> failures;
};

SpliceReport run_splice_property(int applications, std::uint32_t seed);

}  // namespace oracle
