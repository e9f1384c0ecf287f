#pragma once

// Command output. Both renderings are generated from the same Report value,
// so they always carry the same data.

#include "eqdr/checks.hpp"

#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eqdr {

struct ReportTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct ReportSection {
  std::string title;
  std::vector<std::pair<std::string, std::string>> values;
  std::optional<ReportTable> table;
  std::vector<CheckResult> checks;

  void value(std::string key, std::string text) { values.emplace_back(std::move(key), std::move(text)); }
  void add_checks(const CheckReport& report);
};

enum class ExitCode : int { ok = 0, check_failed = 1, parse_error = 2, internal_error = 3 };

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> configuration;
  std::deque<ReportSection> sections;  // deque: section() references stay valid
  ExitCode exit_code = ExitCode::ok;
  std::string error;  // set for parse and internal errors, and failed preconditions
  std::optional<double> elapsed_ms;

  ReportSection& section(std::string title);
  /// Any failed check in any section.
  bool has_failures() const;

  std::string render_human() const;
  std::string render_machine() const;
};

}  // namespace eqdr
