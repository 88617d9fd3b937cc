#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace qlpa {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Ordered list of named pass/fail checks. Verification routines return one
/// of these instead of a bare bool so failures can be reported by name.
class Report {
 public:
  void add(std::string name, bool passed, std::string detail = {}) {
    checks_.push_back({std::move(name), passed, std::move(detail)});
  }
  void append(const Report& other, const std::string& prefix = {}) {
    for (const auto& c : other.checks_)
      checks_.push_back({prefix + c.name, c.passed, c.detail});
  }

  bool ok() const {
    for (const auto& c : checks_)
      if (!c.passed) return false;
    return true;
  }
  const Check* first_failure() const {
    for (const auto& c : checks_)
      if (!c.passed) return &c;
    return nullptr;
  }
  bool failed(const std::string& name) const {
    for (const auto& c : checks_)
      if (c.name == name && !c.passed) return true;
    return false;
  }
  const std::vector<Check>& checks() const { return checks_; }

  nlohmann::ordered_json to_json() const {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks_) {
      nlohmann::ordered_json j;
      j["name"] = c.name;
      j["passed"] = c.passed;
      if (!c.detail.empty()) j["detail"] = c.detail;
      arr.push_back(std::move(j));
    }
    return arr;
  }

 private:
  std::vector<Check> checks_;
};

}  // namespace qlpa
