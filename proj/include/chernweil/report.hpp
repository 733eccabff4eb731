#pragma once

#include <optional>
#include <string>
#include <vector>

namespace chernweil {

/// Outcome of a structural check. Only the first failure is kept as the
/// located defect; `notes` collects what was verified, in order.
struct CheckReport {
  std::string name;
  bool passed = true;
  std::optional<std::string> failure;
  std::vector<std::string> notes;

  explicit CheckReport(std::string n) : name(std::move(n)) {}

  void reject(const std::string& where) {
    if (passed) failure = where;
    passed = false;
  }
  void note(std::string line) { notes.push_back(std::move(line)); }
  /// Folds a sub-check in: its first failure becomes ours if we had none.
  void absorb(const CheckReport& other) {
    if (!other.passed) reject(other.name + ": " + *other.failure);
    for (const auto& n : other.notes) notes.push_back(other.name + ": " + n);
  }

  std::string to_string() const {
    std::string s = name + ": " + (passed ? "pass" : "FAIL");
    if (failure) s += " at " + *failure;
    return s;
  }
};

}  // namespace chernweil
