#pragma once

#include <string>
#include <vector>

namespace mdl {

// Pass/fail record; failures are entries rather than exceptions.
struct ValidationReport {
  struct Check {
    std::string name;
    bool ok;
    std::string detail;
  };

  std::vector<Check> checks;

  void add(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }

  bool pass() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }

  // First failing check, or nullptr.
  const Check* first_failure() const {
    for (const auto& c : checks)
      if (!c.ok) return &c;
    return nullptr;
  }
};

}  // namespace mdl
