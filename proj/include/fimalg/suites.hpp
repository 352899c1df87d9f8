#pragma once

// Named verification suites and their JSON reports.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fimalg/skew_construction.hpp"

namespace fimalg {

struct SuiteOptions {
  long T = 64;
  std::size_t period_bound = 64;
  /// Replaces the default schedules of the skew suites.
  std::optional<SigmaSchedule> schedule;
};

struct SuiteCheck {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  long T = 0;
  std::vector<SuiteCheck> checks;
  [[nodiscard]] bool ok() const;
  /// Stable key order; checks in the order they ran.
  [[nodiscard]] std::string to_json() const;
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts = {});

/// Compares equals_M with the bounded oracle on all words of size <=
/// word_size and index <= word_index: each word's oracle component (at
/// oracle_size, oracle_index) must have a single canonical form, and words
/// with the same canonical form in different components are counted as
/// unresolved.
struct MonoidAgreement {
  std::size_t words = 0;
  std::size_t components = 0;
  std::size_t disagreements = 0;
  std::size_t unresolved_pairs = 0;
  std::vector<std::string> examples;  // first few disagreements
};
MonoidAgreement monoid_oracle_agreement(long word_size, long word_index, long oracle_size, long oracle_index);

}  // namespace fimalg
