#pragma once

#include <cstdint>
#include <string>

namespace effectkit {

// Answer to a question that may only be decidable by bounded search.
//   proved    - structural argument or exhaustive scan of a finite carrier
//   witnessed - held on every case inside the stated window/sample budget
//   refuted   - a concrete counterexample (or obstruction) was found
//   unknown   - search budget exhausted without a decision
enum class Verdict { proved, witnessed, refuted, unknown };

inline char const* to_string(Verdict v) {
  switch (v) {
    case Verdict::proved: return "proved";
    case Verdict::witnessed: return "witnessed";
    case Verdict::refuted: return "refuted";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

struct Outcome {
  Verdict verdict = Verdict::unknown;
  std::string detail;

  bool holds() const { return verdict == Verdict::proved || verdict == Verdict::witnessed; }
  bool fails() const { return verdict == Verdict::refuted; }

  static Outcome proved(std::string d = {}) { return {Verdict::proved, std::move(d)}; }
  static Outcome witnessed(std::string d = {}) { return {Verdict::witnessed, std::move(d)}; }
  static Outcome refuted(std::string d) { return {Verdict::refuted, std::move(d)}; }
  static Outcome unknown(std::string d = {}) { return {Verdict::unknown, std::move(d)}; }
};

// Conjunction: refuted beats unknown beats witnessed beats proved.
inline Outcome both(Outcome const& a, Outcome const& b) {
  auto rank = [](Verdict v) {
    switch (v) {
      case Verdict::refuted: return 3;
      case Verdict::unknown: return 2;
      case Verdict::witnessed: return 1;
      case Verdict::proved: return 0;
    }
    return 2;
  };
  return rank(a.verdict) >= rank(b.verdict) ? a : b;
}

// Bounds for every windowed or sampled search. Defaults: integer window of
// +-5 around the carrier, 200 random samples.
struct Budget {
  int window = 5;
  int samples = 200;
  std::uint64_t seed = 1;
  // Cap on quadruples examined by windowed RDP checks.
  int quadruples = 4000;
  // Largest denominator used when enumerating rational windows.
  int denominator = 3;

  std::string str() const {
    return "window=" + std::to_string(window) + " samples=" + std::to_string(samples) +
           " seed=" + std::to_string(seed);
  }
};

}  // namespace effectkit
