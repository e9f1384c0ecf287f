#include "eqdr/checks.hpp"

#include <algorithm>

namespace eqdr {

CheckResult& CheckReport::slot(const std::string& name) {
  auto it = std::find_if(results_.begin(), results_.end(), [&](const CheckResult& r) { return r.name == name; });
  if (it != results_.end()) return *it;
  results_.push_back({name, true, {}});
  return results_.back();
}

void CheckReport::pass(const std::string& name) { slot(name); }

void CheckReport::fail(const std::string& name, const std::string& witness) {
  CheckResult& r = slot(name);
  if (!r.passed) return;
  r.passed = false;
  r.witness = witness;
}

void CheckReport::append(const CheckReport& other, const std::string& prefix) {
  for (const auto& r : other.results_) record(prefix + r.name, r.passed, r.witness);
}

bool CheckReport::ok() const {
  return std::all_of(results_.begin(), results_.end(), [](const CheckResult& r) { return r.passed; });
}

const CheckResult* CheckReport::find(const std::string& name) const {
  auto it = std::find_if(results_.begin(), results_.end(), [&](const CheckResult& r) { return r.name == name; });
  return it == results_.end() ? nullptr : &*it;
}

const CheckResult* CheckReport::first_failure() const {
  auto it = std::find_if(results_.begin(), results_.end(), [](const CheckResult& r) { return !r.passed; });
  return it == results_.end() ? nullptr : &*it;
}

}  // namespace eqdr
