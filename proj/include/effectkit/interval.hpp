#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "effectkit/errors.hpp"
#include "effectkit/finite.hpp"
#include "effectkit/pogroup.hpp"

namespace effectkit {

// Symbolic interval [0,u] of a po-group with the restricted group addition.
struct IntervalEffectAlgebra {
  ConePoGroup group;  // group.unit holds u
  bool enumerable = false;
  // Declared head rank of a lexicographic split, when the document gives one.
  std::optional<std::size_t> split;

  Vec const& u() const { return *group.unit; }
  std::size_t rank() const { return group.rank(); }
};

inline IntervalEffectAlgebra gamma(ConePoGroup G, Vec u) {
  G.require_element(u);
  if (!G.cone.contains(u)) throw std::invalid_argument("unit " + u.str() + " is not in the cone");
  if (u.is_zero()) throw std::invalid_argument("unit must be nonzero");
  G.unit = std::move(u);
  bool box = G.all_integer() && G.cone.kind() == Cone::Kind::product;
  return IntervalEffectAlgebra{std::move(G), box, std::nullopt};
}

inline IntervalEffectAlgebra gamma(ConePoGroup G) {
  if (!G.unit) throw std::invalid_argument("group has no unit");
  Vec u = *G.unit;
  return gamma(std::move(G), std::move(u));
}

inline bool in_carrier(IntervalEffectAlgebra const& E, Vec const& g) {
  return E.group.is_element(g) && E.group.cone.contains(g) && E.group.cone.contains(E.u() - g);
}

inline void require_member(IntervalEffectAlgebra const& E, Vec const& g) {
  E.group.require_element(g);
  if (!in_carrier(E, g)) throw std::invalid_argument(g.str() + " is not in [0," + E.u().str() + "]");
}

inline std::optional<Vec> sum(IntervalEffectAlgebra const& E, Vec const& a, Vec const& b) {
  require_member(E, a);
  require_member(E, b);
  Vec s = a + b;
  if (!E.group.cone.contains(E.u() - s)) return std::nullopt;
  return s;
}

inline bool leq(IntervalEffectAlgebra const& E, Vec const& a, Vec const& b) {
  return E.group.cone.contains(b - a);
}
inline bool less(IntervalEffectAlgebra const& E, Vec const& a, Vec const& b) { return a != b && leq(E, a, b); }
inline bool comparable(IntervalEffectAlgebra const& E, Vec const& a, Vec const& b) {
  return leq(E, a, b) || leq(E, b, a);
}

inline Vec minus(IntervalEffectAlgebra const& E, Vec const& b, Vec const& a) {
  require_member(E, a);
  require_member(E, b);
  if (!leq(E, a, b)) throw std::invalid_argument(a.str() + " is not below " + b.str());
  return b - a;
}

inline Vec complement(IntervalEffectAlgebra const& E, Vec const& a) {
  require_member(E, a);
  return E.u() - a;
}

inline std::string element_label(Vec const& v) { return v.rank() == 1 ? v[0].str() : v.str(); }

// Carrier points of an enumerable interval, in ascending storage order.
inline std::vector<Vec> carrier_points(IntervalEffectAlgebra const& E, std::size_t limit = 512) {
  if (!E.enumerable) throw Unsupported("infinite carrier: only integer product-cone intervals are enumerated");
  std::size_t total = 1;
  for (std::size_t i = 0; i < E.rank(); ++i) {
    total *= static_cast<std::size_t>(E.u()[i].num() + 1);
    if (total > limit) throw Unsupported("carrier has more than " + std::to_string(limit) + " elements");
  }
  auto pts = box_points(E.group, E.group.zero(), E.u(), 1, [](Vec const&) { return true; });
  std::sort(pts.begin(), pts.end());
  return pts;
}

inline FiniteEffectAlgebra enumerate(IntervalEffectAlgebra const& E) {
  auto pts = carrier_points(E);
  std::size_t n = pts.size();
  std::vector<std::string> labels;
  for (auto const& p : pts) labels.push_back(element_label(p));
  auto index = [&](Vec const& v) -> int {
    auto it = std::lower_bound(pts.begin(), pts.end(), v);
    return it != pts.end() && *it == v ? static_cast<int>(it - pts.begin()) : -1;
  };
  std::vector<std::vector<int>> t(n, std::vector<int>(n, FiniteEffectAlgebra::undefined));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = index(pts[i] + pts[j]);
  return FiniteEffectAlgebra(std::move(labels), std::move(t), index(E.group.zero()), index(E.u()));
}

// ---------------------------------------------------------------------------
// Windows

// Coordinate box that holds the carrier points considered by windowed checks.
// Product coordinates and the leading lexicographic factor of a product cone
// are bounded by the unit; other coordinates range over the window.
inline std::pair<Vec, Vec> carrier_box(IntervalEffectAlgebra const& E, int window) {
  std::size_t r = E.rank();
  Vec lo(r), hi(r);
  std::size_t bounded = 0;
  if (E.group.cone.kind() == Cone::Kind::product) bounded = r;
  else if (auto f = E.group.cone.lex_factors(); f.front().kind() == Cone::Kind::product) bounded = f.front().rank();
  for (std::size_t i = 0; i < r; ++i) {
    Rat u = E.u()[i];
    if (i < bounded) {
      lo[i] = Rat(0);
      hi[i] = u;
    } else {
      lo[i] = std::min(Rat(0), u) - Rat(window);
      hi[i] = std::max(Rat(0), u) + Rat(window);
    }
  }
  return {lo, hi};
}

inline std::vector<Vec> window_elements(IntervalEffectAlgebra const& E, Budget const& b, int denominator = 0) {
  auto [lo, hi] = carrier_box(E, b.window);
  int d = denominator > 0 ? denominator : b.denominator;
  auto pts = box_points(E.group, lo, hi, d, [&](Vec const& v) { return in_carrier(E, v); });
  std::sort(pts.begin(), pts.end());
  return pts;
}

// Seeded random carrier elements (rational coordinates use denominators up to 12).
inline std::vector<Vec> sample_elements(IntervalEffectAlgebra const& E, Budget const& b, int count,
                                        std::uint64_t salt = 0) {
  auto [lo, hi] = carrier_box(E, b.window);
  Sampler s(b.seed * 0x9e3779b97f4a7c15ULL + salt);
  std::vector<Vec> out;
  for (long tries = 0; static_cast<int>(out.size()) < count && tries < 1000L * count; ++tries) {
    Vec v = s.vec(E.group, lo, hi);
    if (in_carrier(E, v)) out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Riesz decomposition

inline RdpResult check_rdp(IntervalEffectAlgebra const& E, Budget const& b = {}) {
  RdpResult g = check_rdp_cone(E.group, b);
  if (g.outcome.verdict == Verdict::proved) {
    g.outcome.detail = "group: " + g.outcome.detail;
    return g;
  }
  auto pts = window_elements(E, b);
  return rdp_search(
      E.group, pts, [&](Vec const& x, Vec const& y) { return E.group.cone.contains(E.u() - x - y); },
      [&](Vec const& v) { return in_carrier(E, v); }, b);
}

// ---------------------------------------------------------------------------
// Order structure

struct SymbolicOrder {
  Outcome lattice;
  Outcome antilattice;
  Outcome linear;
  Outcome mv;
};

namespace detail {

// Greatest element of `bounds` under `le`, if any.
template <class Le>
std::optional<Vec> greatest(std::vector<Vec> const& bounds, Le le) {
  for (auto const& m : bounds) {
    bool top = true;
    for (auto const& l : bounds)
      if (!le(l, m)) {
        top = false;
        break;
      }
    if (top) return m;
  }
  return std::nullopt;
}

}  // namespace detail

inline SymbolicOrder classify_order(IntervalEffectAlgebra const& E, Budget const& b = {}) {
  Cone const& c = E.group.cone;
  if (c.linear()) {
    auto p = Outcome::proved("linearly ordered cone");
    return {p, p, p, Outcome::proved("linear with RDP")};
  }
  if (c.kind() == Cone::Kind::product) {
    Vec x(E.rank()), y(E.rank());
    x[0] = E.u()[0];
    y[1] = E.u()[1];
    auto w = "incomparable " + x.str() + ", " + y.str() + " meet in 0";
    return {Outcome::proved("coordinatewise meets and joins"), Outcome::refuted(w), Outcome::refuted(w),
            Outcome::proved("lattice with RDP")};
  }
  // Sampled: look for greatest lower and least upper bounds of incomparable
  // coarse-window pairs among a finer window.
  auto coarse = window_elements(E, b);
  auto fine = window_elements(E, b, b.denominator * 4);
  auto le = [&](Vec const& x, Vec const& y) { return leq(E, x, y); };
  auto ge = [&](Vec const& x, Vec const& y) { return leq(E, y, x); };
  std::optional<std::pair<Vec, Vec>> no_bound, bounded_incomparable, incomparable;
  int pairs = 0;
  for (std::size_t i = 0; i < coarse.size() && pairs < b.samples; ++i)
    for (std::size_t j = i + 1; j < coarse.size() && pairs < b.samples; ++j) {
      Vec const& x = coarse[i];
      Vec const& y = coarse[j];
      if (comparable(E, x, y)) continue;
      ++pairs;
      if (!incomparable) incomparable = std::make_pair(x, y);
      std::vector<Vec> lower, upper;
      for (auto const& f : fine) {
        if (le(f, x) && le(f, y)) lower.push_back(f);
        if (le(x, f) && le(y, f)) upper.push_back(f);
      }
      bool m = detail::greatest(lower, le).has_value();
      bool j2 = detail::greatest(upper, ge).has_value();
      if ((!m || !j2) && !no_bound) no_bound = std::make_pair(x, y);
      if ((m || j2) && !bounded_incomparable) bounded_incomparable = std::make_pair(x, y);
    }
  std::string scope = std::to_string(pairs) + " incomparable pairs against " + std::to_string(fine.size()) +
                      " finer points; " + b.str();
  SymbolicOrder o;
  if (no_bound)
    o.lattice = Outcome::refuted("sampled: " + no_bound->first.str() + ", " + no_bound->second.str() +
                                 " lack a meet or join; " + scope);
  else
    o.lattice = Outcome::witnessed(scope);
  if (bounded_incomparable)
    o.antilattice = Outcome::refuted("sampled: incomparable " + bounded_incomparable->first.str() + ", " +
                                     bounded_incomparable->second.str() + " have a bound; " + scope);
  else
    o.antilattice = Outcome::witnessed(scope);
  if (incomparable)
    o.linear = Outcome::refuted(incomparable->first.str() + ", " + incomparable->second.str() + " are incomparable");
  else
    o.linear = Outcome::witnessed("no incomparable pair in window; " + b.str());
  if (o.lattice.fails()) o.mv = Outcome::refuted("not a lattice");
  else o.mv = both(o.lattice, check_rdp(E, b).outcome);
  return o;
}

// ---------------------------------------------------------------------------
// Infinitesimals

struct SymbolicSet {
  Predicate membership;  // intersected with the carrier
  Outcome basis;
};

inline SymbolicSet infinitesimals(IntervalEffectAlgebra const& E, Budget const& b = {}) {
  std::size_t r = E.rank();
  auto factors = E.group.cone.lex_factors();
  Cone const& lead = factors.front();
  if (lead.kind() == Cone::Kind::product) {
    std::vector<std::size_t> coords(lead.rank());
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = i;
    // n*a <= u for all n forces the leading Archimedean block of a to vanish,
    // and any element with a vanishing leading block stays below u.
    return {Predicate::vanishing(r, coords),
            Outcome::proved(factors.size() == 1 ? "Archimedean product cone" : "leading factor is Archimedean")};
  }
  std::vector<std::size_t> all(r);
  for (std::size_t i = 0; i < r; ++i) all[i] = i;
  auto pts = window_elements(E, b);
  auto more = sample_elements(E, b, b.samples, 7);
  pts.insert(pts.end(), more.begin(), more.end());
  for (auto const& a : pts) {
    if (a.is_zero()) continue;
    bool inf = true;
    for (int n = 1; n <= 64 && inf; ++n) inf = E.group.cone.contains(E.u() - Rat(n) * a);
    if (inf)
      return {Predicate::vanishing(r, all),
              Outcome::unknown(a.str() + " survives 64 multiples; infinitesimal set not determined")};
  }
  return {Predicate::vanishing(r, all),
          Outcome::witnessed("no nonzero sampled element survives 64 multiples; " + b.str())};
}

inline Outcome is_archimedean(IntervalEffectAlgebra const& E, Budget const& b = {}) {
  auto inf = infinitesimals(E, b);
  if (inf.basis.verdict == Verdict::unknown) return inf.basis;
  bool zero_only = true;
  for (auto const& d : inf.membership.dnf())
    if (d.size() != E.rank()) zero_only = false;
  if (zero_only) return inf.basis;
  // Leading block vanishes: any positive element of the tail is infinitesimal.
  auto pts = window_elements(E, b);
  for (auto const& a : pts)
    if (!a.is_zero() && inf.membership.holds(a)) return Outcome::refuted(a.str() + " is infinitesimal");
  return Outcome::witnessed("no nonzero infinitesimal in window; " + b.str());
}

}  // namespace effectkit
