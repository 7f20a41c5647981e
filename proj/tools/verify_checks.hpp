#pragma once

#include <string>
#include <vector>

// One acceptance check run through the shared-library C interface.
struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string details;
  double seconds = 0.0;
};

// Runs the full acceptance suite. The seed drives every sampled check so
// repeated runs are bit-identical; threads is forwarded to the sweep.
std::vector<CheckResult> run_verification(unsigned long long seed,
                                          int threads);
