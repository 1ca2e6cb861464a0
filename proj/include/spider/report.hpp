#pragma once

#include <string>
#include <vector>

namespace spider {

// Outcome of a batch of exact checks.
struct Report {
  long checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  void expect(bool cond, const std::string& what) {
    ++checked;
    if (!cond) failures.push_back(what);
  }
  void merge(const Report& o) {
    checked += o.checked;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
  }
};

}  // namespace spider
