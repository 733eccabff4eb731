#pragma once

#include <string>
#include <vector>

#include "chernweil/report.hpp"
#include "chernweil/scenario.hpp"

namespace chernweil {

struct CommandOptions {
  int k = 1;
  bool elementary = false;
  /// Least-j Green witnesses instead of the searched ones.
  bool canonical = false;
};

/// status is 0 when every check passed and 1 otherwise; errors are thrown.
struct CommandResult {
  int status = 0;
  std::vector<CheckReport> reports;
  std::vector<std::string> lines;

  void add(CheckReport r);
  /// 0 prints the verdict only, 1 adds data and reports, 2 adds notes.
  std::string text(int verbosity) const;
  std::string json(const std::string& command, const std::string& scenario) const;
};

const std::vector<std::string>& command_names();

/// Throws UnknownCommand, and ValidationError when the scenario lacks a
/// section the command needs.
CommandResult run_command(const Scenario& sc, const std::string& command, const CommandOptions& opt);

/// `apply-e`, `weak-equivalence`, `witness` or `invariant`; matrices in grid
/// syntax (`1 0; 0 0`).
struct FiniteModelRequest {
  std::string action;
  long characteristic = 5;
  std::string phi;
  std::string source;
  std::string target;
  std::string map;
};

CommandResult run_finite_model(const FiniteModelRequest& req);

}  // namespace chernweil
