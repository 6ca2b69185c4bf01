#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace logsplit {

struct PropertyCounts {
  long scalar_pairs = 100000;
  long fields = 1000;
  long theorem21 = 100;
};

/// Outcome of one randomized sweep. `worst_margin` is the smallest rhs - lhs
/// seen (positive means slack remains).
struct PropertyResult {
  std::string inequality;
  long samples = 0;
  long violations = 0;
  double worst_margin = 0.0;
  std::string worst_input;
};

struct PropertySuiteReport {
  std::vector<PropertyResult> results;
  double seconds = 0.0;

  bool passed() const noexcept;
  /// First failing inequality, or nullptr.
  const PropertyResult *first_failure() const noexcept;
};

/// Runs every randomized inequality sweep with the given seed. With
/// `inject_fault` the regularisation-gap check is run against half its
/// bound, which must be reported as a violation.
PropertySuiteReport property_suite(std::uint64_t seed, const PropertyCounts &counts,
                                   bool inject_fault = false);

/// Columns: inequality, samples, worst_margin.
void write_props_csv(std::ostream &out, const PropertySuiteReport &report);

} // namespace logsplit
