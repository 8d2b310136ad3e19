#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace roughren {

/// Outcome of an exhaustive identity check. A failing report carries the
/// first counterexample found, rendered for humans.
struct CheckReport {
  CheckReport() = default;
  explicit CheckReport(std::string n) : name(std::move(n)) {}

  std::string name;
  bool passed = true;
  /// Largest absolute deviation seen (0 for exact passes).
  double max_defect = 0.0;
  /// Number of basis elements / grid entries examined.
  std::size_t checked = 0;
  std::string counterexample;
  std::vector<std::string> notes;

  void fail(std::string what) {
    if (passed) counterexample = std::move(what);
    passed = false;
  }
  /// Folds `other` into this report, keeping the first counterexample.
  void merge(const CheckReport& other) {
    if (!other.passed) fail(other.name.empty() ? other.counterexample
                                               : other.name + ": " + other.counterexample);
    if (other.max_defect > max_defect) max_defect = other.max_defect;
    checked += other.checked;
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  }
};

}  // namespace roughren
