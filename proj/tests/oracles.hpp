#pragma once

// Brute-force reference implementations used to cross-check the library.
// Each works from the raw sum table only and shares no code with the
// algorithms under test.

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "effectkit/finite.hpp"
#include "effectkit/rational.hpp"

namespace oracle {

using effectkit::FiniteEffectAlgebra;
using effectkit::Rat;

inline constexpr int none = FiniteEffectAlgebra::undefined;

// a <= b iff some c has a+c = b.
inline bool below(FiniteEffectAlgebra const& E, int a, int b) {
  for (int c = 0; c < E.n(); ++c)
    if (E.sum(a, c) == b) return true;
  return false;
}

// Tries every 2x2 matrix of elements.
inline bool refinable(FiniteEffectAlgebra const& E, int a1, int a2, int b1, int b2) {
  int n = E.n();
  for (int c11 = 0; c11 < n; ++c11)
    for (int c12 = 0; c12 < n; ++c12) {
      if (E.sum(c11, c12) != a1) continue;
      for (int c21 = 0; c21 < n; ++c21) {
        if (E.sum(c11, c21) != b1) continue;
        for (int c22 = 0; c22 < n; ++c22)
          if (E.sum(c21, c22) == a2 && E.sum(c12, c22) == b2) return true;
      }
    }
  return false;
}

inline bool rdp(FiniteEffectAlgebra const& E) {
  int n = E.n();
  for (int a1 = 0; a1 < n; ++a1)
    for (int a2 = 0; a2 < n; ++a2)
      for (int b1 = 0; b1 < n; ++b1)
        for (int b2 = 0; b2 < n; ++b2) {
          int s = E.sum(a1, a2);
          if (s == none || E.sum(b1, b2) != s) continue;
          if (!refinable(E, a1, a2, b1, b2)) return false;
        }
  return true;
}

// Least set containing A and 0 that is closed downward and under sums.
inline std::vector<bool> closure(FiniteEffectAlgebra const& E, std::vector<bool> s) {
  s[E.zero()] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (int a = 0; a < E.n(); ++a) {
      if (!s[a]) continue;
      for (int b = 0; b < E.n(); ++b) {
        if (!s[b] && below(E, b, a)) s[b] = changed = true;
        if (s[b] && E.sum(a, b) != none && !s[E.sum(a, b)]) s[E.sum(a, b)] = changed = true;
      }
    }
  }
  return s;
}

inline bool ideal(FiniteEffectAlgebra const& E, std::vector<bool> const& s) { return closure(E, s) == s; }

// Every subset, filtered by the definition.
inline std::vector<std::vector<bool>> ideals(FiniteEffectAlgebra const& E) {
  std::vector<std::vector<bool>> out;
  for (unsigned mask = 0; mask < (1u << E.n()); ++mask) {
    std::vector<bool> s(E.size());
    for (int i = 0; i < E.n(); ++i) s[i] = (mask >> i) & 1u;
    if (ideal(E, s)) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Bijections that carry the sum table of E onto that of F.
inline bool isomorphic(FiniteEffectAlgebra const& E, FiniteEffectAlgebra const& F) {
  if (E.size() != F.size()) return false;
  std::vector<int> p(E.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int a = 0; a < E.n() && ok; ++a)
      for (int b = 0; b < E.n() && ok; ++b) {
        int s = E.sum(a, b), t = F.sum(p[a], p[b]);
        ok = s == none ? t == none : t == p[s];
      }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// Searches states with values k/q, q <= 12, by assigning elements in order.
inline std::optional<std::vector<Rat>> grid_state(FiniteEffectAlgebra const& E, int qmax = 12) {
  for (int q = 1; q <= qmax; ++q) {
    std::vector<int> v(E.size(), -1);
    auto consistent = [&] {
      if (v[E.zero()] > 0 || (v[E.one()] >= 0 && v[E.one()] != q)) return false;
      for (int a = 0; a < E.n(); ++a)
        for (int b = 0; b < E.n(); ++b) {
          int s = E.sum(a, b);
          if (s == none || v[a] < 0 || v[b] < 0 || v[s] < 0) continue;
          if (v[a] + v[b] != v[s]) return false;
        }
      return true;
    };
    auto go = [&](auto& self, int i) -> bool {
      if (i == E.n()) return true;
      for (int k = 0; k <= q; ++k) {
        v[i] = k;
        if (consistent() && self(self, i + 1)) return true;
      }
      v[i] = -1;
      return false;
    };
    if (go(go, 0)) {
      std::vector<Rat> s;
      for (int k : v) s.push_back(Rat(k, q));
      return s;
    }
  }
  return std::nullopt;
}

}  // namespace oracle
