#pragma once

// Cross-module identity checks behind `qhe validate`. Each check exercises
// one family of invariants at pinned (or seeded) parameters and reports its
// worst measured deviation against a pinned tolerance.

#include <cstdint>
#include <string>
#include <vector>

namespace checks {

struct CheckResult {
  std::string name;
  bool pass = false;
  double deviation = 0.0;  // worst measured deviation (check-specific metric)
  double tolerance = 0.0;
  std::string detail;      // one-line description of what was measured
};

// Registered names: husimi, sudden, first-law, lambda, asymptotic, band,
// polynomial, thermo. `only` empty runs all; otherwise runs the named check.
// Unknown names throw std::invalid_argument.
std::vector<CheckResult> run_checks(const std::string& only, std::uint64_t seed);

}  // namespace checks
