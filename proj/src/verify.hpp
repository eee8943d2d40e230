#pragma once

// The four runnable verification suites behind `effects verify`: axiom
// batteries for the endorsed measures, the algebraic identity battery, the
// documented-failure reproductions, and criterion-vs-search agreement.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace effects::verify {

struct Check {
  std::string name;
  bool pass = true;
  std::size_t checked = 0;
  std::string detail;  // empty while passing; first failure otherwise
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;

  bool all_pass() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

SuiteResult run_axiom_suite(std::size_t samples, std::uint64_t seed,
                            const std::vector<int>& dims);

SuiteResult run_identity_suite(std::size_t samples, std::uint64_t seed,
                               const std::vector<int>& dims);

SuiteResult run_counterexample_suite();

SuiteResult run_oracle_suite(std::size_t pairs, std::uint64_t seed, int resolution,
                             int rounds);

}  // namespace effects::verify
