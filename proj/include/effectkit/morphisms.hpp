#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "effectkit/ideals.hpp"

namespace effectkit {

// Map between finite effect algebras as an index table.
struct Homomorphism {
  FiniteEffectAlgebra const* source = nullptr;
  FiniteEffectAlgebra const* target = nullptr;
  std::vector<int> map;

  int operator()(int a) const { return map[static_cast<std::size_t>(a)]; }
};

inline Homomorphism make_hom(FiniteEffectAlgebra const& E, FiniteEffectAlgebra const& F, std::vector<int> map) {
  if (map.size() != E.size()) throw std::invalid_argument("map has " + std::to_string(map.size()) + " entries, source has " +
                                                          std::to_string(E.size()));
  for (int v : map)
    if (v < 0 || v >= F.n()) throw std::invalid_argument("map entry out of range: " + std::to_string(v));
  return {&E, &F, std::move(map)};
}

// h(1) = 1, and a + b defined gives h(a) + h(b) defined and equal to h(a + b).
inline Outcome verify_hom(Homomorphism const& h) {
  auto const& E = *h.source;
  auto const& F = *h.target;
  if (h(E.one()) != F.one()) return Outcome::refuted("1 maps to " + F.label(h(E.one())));
  for (int a = 0; a < E.n(); ++a)
    for (int b = 0; b < E.n(); ++b) {
      if (!E.defined(a, b)) continue;
      int s = F.sum(h(a), h(b));
      if (s == F.undefined)
        return Outcome::refuted(F.label(h(a)) + "+" + F.label(h(b)) + " undefined for " + E.label(a) + "+" +
                                E.label(b));
      if (s != h(E.sum(a, b))) return Outcome::refuted("h(" + E.label(a) + "+" + E.label(b) + ") is not additive");
    }
  return Outcome::proved("exhaustive");
}

inline ElementSet kernel(Homomorphism const& h) {
  ElementSet k = empty_set(h.source->size());
  for (int a = 0; a < h.source->n(); ++a) k[a] = h(a) == h.target->zero();
  return k;
}

inline bool is_surjective(Homomorphism const& h) {
  std::vector<bool> hit(h.target->size(), false);
  for (int v : h.map) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool x) { return x; });
}

inline bool is_injective(Homomorphism const& h) {
  auto m = h.map;
  std::sort(m.begin(), m.end());
  return std::adjacent_find(m.begin(), m.end()) == m.end();
}

inline Homomorphism projection(FiniteEffectAlgebra const& E, Quotient const& q) {
  return make_hom(E, q.algebra, q.projection);
}

// h(x) = h(y) iff x - e = y - g for some e <= x, g <= y in Ker(h).
inline Outcome has_sim_property(Homomorphism const& h) {
  if (!is_surjective(h)) throw std::invalid_argument("the ~-property is defined for surjective maps");
  auto const& E = *h.source;
  ElementSet k = kernel(h);
  for (int x = 0; x < E.n(); ++x)
    for (int y = 0; y < E.n(); ++y)
      if ((h(x) == h(y)) != congruent(E, k, x, y))
        return Outcome::refuted(E.label(x) + ", " + E.label(y) +
                                (h(x) == h(y) ? " share an image without kernel witnesses"
                                              : " have kernel witnesses but different images"));
  return Outcome::proved("exhaustive");
}

// h(a) + h(b) defined gives a1, b1 with the same images and a1 + b1 defined.
inline Outcome is_full(Homomorphism const& h) {
  auto const& E = *h.source;
  auto const& F = *h.target;
  for (int a = 0; a < E.n(); ++a)
    for (int b = 0; b < E.n(); ++b) {
      if (!F.defined(h(a), h(b))) continue;
      bool found = false;
      for (int a1 = 0; a1 < E.n() && !found; ++a1)
        for (int b1 = 0; b1 < E.n() && !found; ++b1)
          found = h(a1) == h(a) && h(b1) == h(b) && E.defined(a1, b1);
      if (!found)
        return Outcome::refuted(F.label(h(a)) + "+" + F.label(h(b)) + " has no defined preimage sum");
    }
  return Outcome::proved("exhaustive");
}

namespace detail {

// Number of defined sums per element; preserved by isomorphisms.
inline std::vector<int> degrees(FiniteEffectAlgebra const& E) {
  std::vector<int> d(E.size(), 0);
  for (int a = 0; a < E.n(); ++a)
    for (int b = 0; b < E.n(); ++b) d[a] += E.defined(a, b);
  return d;
}

}  // namespace detail

// Bijection preserving the sum table in both directions, or nothing.
inline std::optional<std::vector<int>> iso_search(FiniteEffectAlgebra const& E, FiniteEffectAlgebra const& F) {
  if (E.size() != F.size()) return std::nullopt;
  int const n = E.n();
  auto de = detail::degrees(E), df = detail::degrees(F);
  {
    auto se = de, sf = df;
    std::sort(se.begin(), se.end());
    std::sort(sf.begin(), sf.end());
    if (se != sf) return std::nullopt;
  }
  std::vector<int> m(n, -1), inv(n, -1);
  auto ok = [&](int a) {
    for (int b = 0; b < n; ++b) {
      if (m[b] == -1) continue;
      int s = E.sum(a, b), t = F.sum(m[a], m[b]);
      if ((s == E.undefined) != (t == F.undefined)) return false;
      if (s != E.undefined && m[s] != -1 && m[s] != t) return false;
      if (t != F.undefined && inv[t] != -1 && inv[t] != s) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, int a) -> bool {
    if (a == n) {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          int s = E.sum(x, y), t = F.sum(m[x], m[y]);
          if ((s == E.undefined) != (t == F.undefined) || (s != E.undefined && m[s] != t)) return false;
        }
      return true;
    }
    for (int c = 0; c < n; ++c) {
      if (inv[c] != -1 || de[a] != df[c]) continue;
      if ((a == E.zero()) != (c == F.zero()) || (a == E.one()) != (c == F.one())) continue;
      m[a] = c;
      inv[c] = a;
      if (ok(a) && self(self, a + 1)) return true;
      m[a] = -1;
      inv[c] = -1;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return m;
}

}  // namespace effectkit
