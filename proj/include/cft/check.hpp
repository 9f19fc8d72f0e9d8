#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace cft {

/// Outcome of one verification: verdict, sample count, failing witnesses and recorded facts.
struct CheckReport {
  std::string check;  // traceability tag, e.g. "thm:artinkernel"
  bool pass = true;
  std::size_t samples = 0;
  std::vector<std::string> failures;
  std::vector<std::pair<std::string, std::string>> facts;
  std::vector<std::string> witnesses;

  void fail(std::string why) {
    pass = false;
    failures.push_back(std::move(why));
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
  void fact(std::string key, std::string value) { facts.emplace_back(std::move(key), std::move(value)); }
  bool vacuous() const { return samples == 0; }
};

}  // namespace cft
