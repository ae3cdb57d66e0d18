#pragma once

#include <string>
#include <vector>

namespace dessinmetric::verify {

struct CheckResult {
  std::string scope;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Property checks behind `verify`. Scope is groups, metrics, sc or all;
/// unknown scopes yield an empty list.
std::vector<CheckResult> run_checks(const std::string& scope, bool perturb = false);

}  // namespace dessinmetric::verify
