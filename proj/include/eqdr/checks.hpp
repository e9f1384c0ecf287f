#pragma once

#include <string>
#include <vector>

namespace eqdr {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string witness;  // empty when passed

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

/// Ordered list of named verdicts. A named check is recorded once: the first
/// failure wins, later calls for the same name are ignored once it failed.
class CheckReport {
public:
  void pass(const std::string& name);
  void fail(const std::string& name, const std::string& witness);
  void record(const std::string& name, bool passed, const std::string& witness = {}) {
    passed ? pass(name) : fail(name, witness);
  }
  void append(const CheckReport& other, const std::string& prefix = {});

  bool ok() const;
  const std::vector<CheckResult>& results() const { return results_; }
  const CheckResult* find(const std::string& name) const;
  const CheckResult* first_failure() const;

private:
  CheckResult& slot(const std::string& name);
  std::vector<CheckResult> results_;
};

}  // namespace eqdr
