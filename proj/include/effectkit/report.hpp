#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "effectkit/verdict.hpp"

namespace effectkit {

// Result of one command: asserted checks decide the exit code, the rest is
// informational.
struct Report {
  struct Entry {
    std::string name;
    Outcome outcome;
    bool asserted = true;
  };

  std::string command;
  std::string input;
  Budget budget;
  std::vector<std::pair<std::string, std::string>> facts;
  std::vector<Entry> entries;
  std::optional<double> millis;

  void fact(std::string key, std::string value) { facts.emplace_back(std::move(key), std::move(value)); }
  void check(std::string name, Outcome o) { entries.push_back({std::move(name), std::move(o), true}); }
  void note(std::string name, Outcome o) { entries.push_back({std::move(name), std::move(o), false}); }

  // 0 when every asserted check holds, 1 on a violation, 2 when a check ran
  // out of budget.
  int exit_code() const {
    bool unknown = false;
    for (auto const& e : entries) {
      if (!e.asserted) continue;
      if (e.outcome.fails()) return 1;
      unknown = unknown || e.outcome.verdict == Verdict::unknown;
    }
    return unknown ? 2 : 0;
  }
};

inline std::string emit_text(Report const& r) {
  std::string out = r.command + " " + r.input + "\n";
  out += "budget: " + r.budget.str() + "\n";
  for (auto const& [k, v] : r.facts) out += "  " + k + ": " + v + "\n";
  for (auto const& e : r.entries) {
    std::string tag = std::string("[") + to_string(e.outcome.verdict) + "]";
    tag.resize(12, ' ');
    out += tag + e.name + (e.asserted ? "" : " (info)");
    if (!e.outcome.detail.empty()) out += ": " + e.outcome.detail;
    out += "\n";
  }
  if (r.millis) out += "time: " + std::to_string(*r.millis) + " ms\n";
  static char const* const results[] = {"ok", "violation", "unknown"};
  out += std::string("result: ") + results[r.exit_code()] + "\n";
  return out;
}

inline nlohmann::ordered_json to_json(Report const& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["input"] = r.input;
  j["budget"] = {{"window", r.budget.window}, {"samples", r.budget.samples}, {"seed", r.budget.seed}};
  auto facts = nlohmann::ordered_json::object();
  for (auto const& [k, v] : r.facts) facts[k] = v;
  j["facts"] = facts;
  auto checks = nlohmann::ordered_json::array();
  for (auto const& e : r.entries)
    checks.push_back({{"name", e.name},
                      {"verdict", to_string(e.outcome.verdict)},
                      {"detail", e.outcome.detail},
                      {"asserted", e.asserted}});
  j["checks"] = checks;
  if (r.millis) j["millis"] = *r.millis;
  j["exit"] = r.exit_code();
  return j;
}

inline std::string emit_json(Report const& r) { return to_json(r).dump(2) + "\n"; }

}  // namespace effectkit
