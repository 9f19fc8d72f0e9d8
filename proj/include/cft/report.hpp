#pragma once

// JSON reports: schema version, command, configuration echo and per-check results. Key order is fixed by
// insertion and no timings are recorded, so equal (config, seed) give byte-identical output.

#include <string>
#include <vector>

#include <json.hpp>

#include "cft/check.hpp"

namespace cft::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json to_json(const CheckReport& r) {
  Json facts = Json::object();
  for (auto& [k, v] : r.facts) {
    std::string key = k;
    for (int i = 2; facts.contains(key); ++i) key = k + "#" + std::to_string(i);
    facts[key] = v;
  }
  Json j;
  j["check"] = r.check;
  j["pass"] = r.pass;
  j["samples"] = r.samples;
  j["vacuous"] = r.vacuous();
  j["facts"] = facts;
  j["witnesses"] = r.witnesses;
  j["failures"] = r.failures;
  return j;
}

/// One invocation: its checks, or a computed object, and the overall verdict.
struct Report {
  std::string command, kind;
  Json config = Json::object();
  std::vector<CheckReport> checks;
  Json result;  // compute commands only

  bool pass() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  bool vacuous() const {
    for (auto& c : checks)
      if (!c.vacuous()) return false;
    return true;
  }

  Json to_json() const {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["kind"] = kind;
    j["config"] = config;
    if (!result.is_null()) j["result"] = result;
    if (command == "verify") {
      j["pass"] = pass();
      j["vacuous"] = vacuous();
      Json cs = Json::array();
      for (auto& c : checks) {
        Json cj = report::to_json(c);
        if (!c.pass) cj["reproduce"] = config;
        cs.push_back(std::move(cj));
      }
      j["checks"] = std::move(cs);
    }
    return j;
  }

  /// Plain-text rendering: one line per check, failures indented below.
  std::string to_text() const {
    std::string s = command + " " + kind + "\n";
    if (!result.is_null()) s += result.dump(2) + "\n";
    for (auto& c : checks) {
      s += (c.pass ? "PASS " : "FAIL ") + c.check + " samples=" + std::to_string(c.samples);
      for (auto& [k, v] : c.facts) s += " " + k + "=" + v;
      s += "\n";
      for (auto& f : c.failures) s += "  " + f + "\n";
    }
    if (command == "verify") s += std::string(pass() ? "pass" : "fail") + (vacuous() ? " (vacuous)" : "") + "\n";
    return s;
  }
};

/// Machine-readable error object for usage and parse errors.
inline Json error_json(const std::string& kind, const std::string& message) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["error"] = {{"kind", kind}, {"message", message}};
  return j;
}

}  // namespace cft::report
