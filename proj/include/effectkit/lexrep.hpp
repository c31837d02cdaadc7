#pragma once

#include <array>
#include <map>
#include <set>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "effectkit/ideals.hpp"
#include "effectkit/matrix.hpp"
#include "effectkit/morphisms.hpp"
#include "effectkit/states.hpp"

namespace effectkit {

// Readable group shape: "Z", "Q", "Z^2", "Z ⃗× Z", "O" for the trivial group.
inline std::string group_display(ConePoGroup const& G) {
  if (G.rank() == 0) return "O";
  std::string out;
  std::size_t at = 0;
  for (auto const& f : G.cone.lex_factors()) {
    if (!out.empty()) out += " ⃗× ";
    std::string part;
    if (f.kind() == Cone::Kind::product) {
      bool same = true;
      for (std::size_t i = 1; i < f.rank(); ++i) same = same && G.domains[at + i] == G.domains[at];
      if (f.rank() == 0) part = "O";
      else if (same) {
        part = std::string(1, domain_char(G.domains[at]));
        if (f.rank() > 1) part += "^" + std::to_string(f.rank());
      } else {
        for (std::size_t i = 0; i < f.rank(); ++i) part += (i ? " x " : "(") + std::string(1, domain_char(G.domains[at + i]));
        part += ")";
      }
    } else {
      part = f.str();
    }
    out += part;
    at += f.rank();
  }
  return out;
}

struct OrderedReport {
  Outcome fiber_order;    // E_s <= E_t for s < t
  Outcome sum_criterion;  // E_w + E_v defined for w + v < u
  std::size_t pairs = 0;
  bool agree() const { return fiber_order.holds() == sum_criterion.holds(); }
  Outcome verdict() const {
    if (!agree())
      return Outcome::refuted("criteria disagree: fiber order " + fiber_order.detail + "; sums " + sum_criterion.detail);
    return fiber_order;
  }
};

struct ConsequenceReport {
  Outcome zero_fiber;   // E_0 + E_0 = E_0 and E_0 ⊆ Infin(E)
  Outcome riesz;        // E_0 is a Riesz ideal
  Outcome fiber_sums;   // E_s + E_v = E_{s+v} for s + v < u
  Outcome over_unit;    // no x + y when s + v exceeds u
  Outcome overall() const { return both(both(zero_fiber, riesz), both(fiber_sums, over_unit)); }
};

// ===========================================================================
// Finite hosts

inline OrderedReport is_ordered_decomposition(FiniteEffectAlgebra const& E, FiniteDecomposition const& D) {
  auto const& T = D.target;
  OrderedReport r;
  r.fiber_order = Outcome::proved("exhaustive");
  r.sum_criterion = Outcome::proved("exhaustive");
  for (int s = 0; s < T.n(); ++s)
    for (int t = 0; t < T.n(); ++t)
      for (int x = 0; x < E.n(); ++x) {
        if (!D.fibers[s][x]) continue;
        for (int y = 0; y < E.n(); ++y) {
          if (!D.fibers[t][y]) continue;
          ++r.pairs;
          if (T.less(s, t) && !E.leq(x, y) && r.fiber_order.holds())
            r.fiber_order = Outcome::refuted(E.label(x) + " in E_" + T.label(s) + " is not below " + E.label(y) +
                                             " in E_" + T.label(t));
          int st = T.sum(s, t);
          if (st != T.undefined && T.less(st, T.one()) && !E.defined(x, y) && r.sum_criterion.holds())
            r.sum_criterion = Outcome::refuted(E.label(x) + "+" + E.label(y) + " undefined although " + T.label(s) +
                                               "+" + T.label(t) + " < u");
        }
      }
  return r;
}

inline Outcome is_directed_decomposition(FiniteEffectAlgebra const& E, FiniteDecomposition const& D) {
  for (int t = 0; t < D.target.n(); ++t) {
    auto const& F = D.fibers[t];
    for (int x = 0; x < E.n(); ++x)
      for (int y = 0; y < E.n(); ++y) {
        if (!F[x] || !F[y]) continue;
        bool up = false, down = false;
        for (int z = 0; z < E.n(); ++z) {
          if (!F[z]) continue;
          up = up || (E.leq(x, z) && E.leq(y, z));
          down = down || (E.leq(z, x) && E.leq(z, y));
        }
        if (!up || !down)
          return Outcome::refuted("E_" + D.target.label(t) + " is not " + (up ? "downwards" : "upwards") +
                                  " directed at " + E.label(x) + ", " + E.label(y));
      }
  }
  return Outcome::proved("exhaustive");
}

inline ConsequenceReport ordered_decomposition_consequences(FiniteEffectAlgebra const& E, FiniteDecomposition const& D) {
  auto const& T = D.target;
  ConsequenceReport r;
  ElementSet const& E0 = D.fibers[T.zero()];
  ElementSet inf = infinitesimals(E);
  r.zero_fiber = Outcome::proved("exhaustive");
  for (int x = 0; x < E.n() && r.zero_fiber.holds(); ++x) {
    if (!E0[x]) continue;
    if (!inf[x]) r.zero_fiber = Outcome::refuted(E.label(x) + " in E_0 is not infinitesimal");
    for (int y = 0; y < E.n(); ++y)
      if (E0[y] && (!E.defined(x, y) || !E0[E.sum(x, y)])) {
        r.zero_fiber = Outcome::refuted(E.label(x) + "+" + E.label(y) + " leaves E_0");
        break;
      }
  }
  r.riesz = is_ideal(E, E0) ? is_riesz(E, E0) : Outcome::refuted("E_0 is not an ideal");
  r.fiber_sums = Outcome::proved("exhaustive");
  r.over_unit = Outcome::proved("exhaustive");
  for (int s = 0; s < T.n(); ++s)
    for (int v = 0; v < T.n(); ++v) {
      int sv = T.sum(s, v);
      if (sv == T.undefined) {
        for (int x = 0; x < E.n(); ++x)
          for (int y = 0; y < E.n(); ++y)
            if (D.fibers[s][x] && D.fibers[v][y] && E.defined(x, y) && r.over_unit.holds())
              r.over_unit = Outcome::refuted(E.label(x) + "+" + E.label(y) + " defined though " + T.label(s) + "+" +
                                             T.label(v) + " exceeds u");
        continue;
      }
      if (!T.less(sv, T.one())) continue;
      for (int z = 0; z < E.n() && r.fiber_sums.holds(); ++z) {
        if (!D.fibers[sv][z]) continue;
        bool split = false;
        for (int x = 0; x < E.n() && !split; ++x)
          for (int y = 0; y < E.n() && !split; ++y)
            split = D.fibers[s][x] && D.fibers[v][y] && E.sum(x, y) == z;
        if (!split) r.fiber_sums = Outcome::refuted(E.label(z) + " is not a sum from E_" + T.label(s) + " + E_" + T.label(v));
      }
    }
  return r;
}

struct HeadIso {
  FiniteEffectAlgebra quotient;
  std::vector<int> phi;  // class index -> target index
  Outcome outcome;
};

// E/E_0 ≅ Γ(H,u) via x/E_0 -> t for x in E_t.
inline HeadIso quotient_head_iso(FiniteEffectAlgebra const& E, FiniteDecomposition const& D) {
  auto const& T = D.target;
  Quotient q = quotient(E, D.fibers[T.zero()]);
  HeadIso r{q.algebra, std::vector<int>(q.algebra.size(), -1), {}};
  for (int x = 0; x < E.n(); ++x) {
    int t = -1;
    for (int s = 0; s < T.n(); ++s)
      if (D.fibers[s][x]) t = s;
    int& slot = r.phi[q.projection[x]];
    if (slot != -1 && slot != t) {
      r.outcome = Outcome::refuted("class of " + E.label(x) + " meets two fibers");
      return r;
    }
    slot = t;
  }
  auto h = make_hom(r.quotient, T, r.phi);
  Outcome hom = verify_hom(h);
  if (!hom.holds()) {
    r.outcome = hom;
    return r;
  }
  if (!is_injective(h) || !is_surjective(h)) {
    r.outcome = Outcome::refuted("classes and fibers are not in bijection");
    return r;
  }
  auto inv = std::vector<int>(T.size());
  for (int c = 0; c < r.quotient.n(); ++c) inv[r.phi[c]] = c;
  Outcome back = verify_hom(make_hom(T, r.quotient, inv));
  r.outcome = back.holds() ? Outcome::proved("bijective homomorphism both ways") : back;
  return r;
}

inline bool fibers_equal(FiniteDecomposition const& a, FiniteDecomposition const& b) {
  return a.target == b.target && a.fibers == b.fibers;
}

struct FiniteStrongFamily {
  std::optional<std::vector<int>> section;  // target index -> host index
  Outcome outcome;
};

// c_t ∈ E_t, c_v + c_t = c_{v+t} whenever v + t <= u, c_u = 1.
inline FiniteStrongFamily find_strong_family(FiniteEffectAlgebra const& E, FiniteDecomposition const& D) {
  auto const& T = D.target;
  int const k = T.n();
  std::vector<int> c(k, -1);
  auto ok = [&](int t) {
    if (t == T.one() && c[t] != E.one()) return false;
    if (t == T.zero() && c[t] != E.zero()) return false;
    for (int v = 0; v <= t; ++v) {
      int vt = T.sum(v, t);
      if (vt == T.undefined) continue;
      int s = E.sum(c[v], c[t]);
      if (s == E.undefined) return false;
      if (vt <= t && c[vt] != s) return false;
    }
    for (int a = 0; a < t; ++a)
      for (int b = 0; b < t; ++b)
        if (T.sum(a, b) == t && E.sum(c[a], c[b]) != c[t]) return false;
    return true;
  };
  auto search = [&](auto&& self, int t) -> bool {
    if (t == k) return true;
    for (int x = 0; x < E.n(); ++x) {
      if (!D.fibers[t][x]) continue;
      c[t] = x;
      if (ok(t) && self(self, t + 1)) return true;
    }
    c[t] = -1;
    return false;
  };
  if (!search(search, 0)) return {std::nullopt, Outcome::refuted("no additive section through the fibers (exhaustive)")};
  std::string s;
  for (int t = 0; t < k; ++t) s += (t ? ", " : "") + std::string("c_") + T.label(t) + " = " + E.label(c[t]);
  return {c, Outcome::proved(s)};
}

struct FiniteRepresentation {
  FiniteEffectAlgebra head;
  ConePoGroup tail;              // always trivial for finite hosts
  std::vector<int> iso;          // host index -> head index
  Outcome outcome;
};

// A finite E_0 is a cancellative positive monoid, hence {0}; the tail is O
// and x -> t is the isomorphism onto Γ(H,u).
inline FiniteRepresentation represent(FiniteEffectAlgebra const& E, FiniteStrongFamily const& F,
                                      FiniteDecomposition const& D) {
  if (!F.section) throw std::invalid_argument("no strong family");
  FiniteRepresentation r{D.target, make_group(std::vector<Domain>{}, Cone::product(0)), std::vector<int>(E.size()), {}};
  for (int t = 0; t < D.target.n(); ++t)
    if ((*F.section)[t] < 0 || !D.fibers[t][(*F.section)[t]]) throw std::invalid_argument("family leaves its fibers");
  if (count(D.fibers[D.target.zero()]) != 1) {
    r.outcome = Outcome::refuted("E_0 has " + std::to_string(count(D.fibers[D.target.zero()])) +
                                 " elements; a finite E_0 must be {0}");
    return r;
  }
  for (int x = 0; x < E.n(); ++x)
    for (int t = 0; t < D.target.n(); ++t)
      if (D.fibers[t][x]) r.iso[x] = t;
  auto h = make_hom(E, r.head, r.iso);
  Outcome hom = verify_hom(h);
  if (!hom.holds() || !is_injective(h) || !is_surjective(h)) {
    r.outcome = hom.holds() ? Outcome::refuted("x -> t is not bijective") : hom;
    return r;
  }
  std::vector<int> inv(E.size());
  for (int x = 0; x < E.n(); ++x) inv[r.iso[x]] = x;
  Outcome back = verify_hom(make_hom(r.head, E, inv));
  r.outcome = back.holds() ? Outcome::proved("E ≅ Γ(H ⃗× O,(u,0)) exhaustively") : back;
  return r;
}

// ===========================================================================
// Interval hosts

// State onto the quotient by a coordinate-vanishing ideal.
inline SymbolicHuState quotient_hu_state(IntervalEffectAlgebra const& E, SymbolicIdeal const& M) {
  SymbolicQuotient q = quotient(E, M);
  Matrix m = zero_matrix(q.kept.size(), E.rank());
  for (std::size_t i = 0; i < q.kept.size(); ++i) m[i][q.kept[i]] = 1;
  return {q.algebra, std::move(m)};
}

inline SymbolicDecomposition canonical_decomposition(IntervalEffectAlgebra const& E, std::size_t k) {
  return hu_state_to_decomposition(canonical_hu_state(E, k));
}

namespace detail {

// Coordinates read by a decomposition whose rows are unit vectors.
inline std::optional<std::vector<std::size_t>> projected_coords(SymbolicDecomposition const& D) {
  std::vector<std::size_t> out;
  for (auto const& a : D.rows) {
    std::optional<std::size_t> hit;
    for (std::size_t j = 0; j < a.coeffs.size(); ++j) {
      if (a.coeffs[j].is_zero()) continue;
      if (hit || a.coeffs[j] != Rat(1)) return std::nullopt;
      hit = j;
    }
    if (!hit) return std::nullopt;
    out.push_back(*hit);
  }
  return out;
}

inline SymbolicIdeal zero_fiber_ideal(IntervalEffectAlgebra const& E, SymbolicDecomposition const& D,
                                      Budget const& b) {
  auto coords = projected_coords(D);
  if (!coords) throw Unsupported("E_0 is not a coordinate-vanishing ideal");
  return vanishing_ideal(E, *coords, b);
}

inline std::vector<Vec> fiber_points(std::vector<Vec> const& pts, SymbolicDecomposition const& D, Vec const& t) {
  std::vector<Vec> out;
  for (auto const& x : pts)
    if (D.index(x) == t) out.push_back(x);
  return out;
}

}  // namespace detail

inline OrderedReport is_ordered_decomposition(IntervalEffectAlgebra const& E, SymbolicDecomposition const& D,
                                              Budget const& b = {}) {
  auto pts = detail::probe_points(E, b);
  auto const& T = D.target;
  OrderedReport r;
  std::string budget = std::to_string(b.samples) + " sampled pairs; " + b.str();
  r.fiber_order = Outcome::witnessed(budget);
  r.sum_criterion = Outcome::witnessed(budget);
  Sampler smp(b.seed + 21);
  for (int i = 0; i < b.samples && !pts.empty(); ++i) {
    auto const& x = pts[smp.index(pts.size())];
    auto const& y = pts[smp.index(pts.size())];
    Vec s = D.index(x), t = D.index(y);
    ++r.pairs;
    if (less(T, s, t) && !leq(E, x, y) && r.fiber_order.holds())
      r.fiber_order = Outcome::refuted(x.str() + " in E_" + s.str() + " is not below " + y.str() + " in E_" + t.str());
    if (in_carrier(T, s + t) && less(T, s + t, T.u()) && !sum(E, x, y) && r.sum_criterion.holds())
      r.sum_criterion = Outcome::refuted(x.str() + "+" + y.str() + " undefined although " + s.str() + "+" + t.str() + " < u");
  }
  return r;
}

inline Outcome is_directed_decomposition(IntervalEffectAlgebra const& E, SymbolicDecomposition const& D,
                                         Budget const& b = {}) {
  auto pts = detail::probe_points(E, b);
  Sampler smp(b.seed + 23);
  std::size_t checked = 0;
  for (auto const& t : window_elements(D.target, b)) {
    auto F = detail::fiber_points(pts, D, t);
    if (F.empty()) return Outcome::unknown("no probe point in E_" + t.str());
    for (int i = 0; i < b.samples / 4 + 1 && F.size() > 1; ++i) {
      auto const& x = F[smp.index(F.size())];
      auto const& y = F[smp.index(F.size())];
      Vec hi(E.rank()), lo(E.rank());
      for (std::size_t j = 0; j < E.rank(); ++j) {
        hi[j] = std::max(x[j], y[j]);
        lo[j] = std::min(x[j], y[j]);
      }
      auto in_fiber = [&](Vec const& z) { return in_carrier(E, z) && D.index(z) == t; };
      bool up = in_fiber(hi) && leq(E, x, hi) && leq(E, y, hi);
      bool down = in_fiber(lo) && leq(E, lo, x) && leq(E, lo, y);
      for (auto const& z : F) {
        if (up && down) break;
        up = up || (leq(E, x, z) && leq(E, y, z));
        down = down || (leq(E, z, x) && leq(E, z, y));
      }
      if (!up || !down)
        return Outcome::unknown("no " + std::string(up ? "lower" : "upper") + " bound found in E_" + t.str() + " for " +
                                x.str() + ", " + y.str());
      ++checked;
    }
  }
  return Outcome::witnessed(std::to_string(checked) + " sampled pairs within fibers; " + b.str());
}

inline ConsequenceReport ordered_decomposition_consequences(IntervalEffectAlgebra const& E,
                                                            SymbolicDecomposition const& D, Budget const& b = {}) {
  auto pts = detail::probe_points(E, b);
  auto const& T = D.target;
  Vec zero = T.group.zero();
  ConsequenceReport r;
  std::string budget = std::to_string(b.samples) + " sampled pairs; " + b.str();
  auto inf = infinitesimals(E, b);
  auto E0 = detail::fiber_points(pts, D, zero);
  r.zero_fiber = Outcome::witnessed(std::to_string(E0.size()) + " points of E_0; " + budget);
  Sampler smp(b.seed + 29);
  for (auto const& x : E0)
    if (!inf.membership.holds(x)) {
      r.zero_fiber = Outcome::refuted(x.str() + " in E_0 is not infinitesimal");
      break;
    }
  for (int i = 0; i < b.samples && !E0.empty() && r.zero_fiber.holds(); ++i) {
    auto const& x = E0[smp.index(E0.size())];
    auto const& y = E0[smp.index(E0.size())];
    auto s = sum(E, x, y);
    if (!s || D.index(*s) != zero) r.zero_fiber = Outcome::refuted(x.str() + "+" + y.str() + " leaves E_0");
  }
  Outcome rdp = check_rdp(E, b).outcome;
  r.riesz = rdp.holds() ? Outcome(rdp.verdict, "host RDP makes every ideal Riesz") : Outcome::unknown("host RDP not established");
  r.fiber_sums = Outcome::witnessed(budget);
  r.over_unit = Outcome::witnessed(budget);
  for (int i = 0; i < b.samples && !pts.empty(); ++i) {
    auto const& x = pts[smp.index(pts.size())];
    auto const& y = pts[smp.index(pts.size())];
    Vec s = D.index(x), v = D.index(y);
    auto xy = sum(E, x, y);
    if (!in_carrier(T, s + v)) {
      if (xy && r.over_unit.holds())
        r.over_unit = Outcome::refuted(x.str() + "+" + y.str() + " defined though " + s.str() + "+" + v.str() + " exceeds u");
      continue;
    }
    if (!less(T, s + v, T.u()) || !r.fiber_sums.holds()) continue;
    if (!xy || D.index(*xy) != s + v) {
      r.fiber_sums = Outcome::refuted(x.str() + "+" + y.str() + " misses E_" + (s + v).str());
      continue;
    }
    // Reverse inclusion: split z = x + y back along s.
    Vec const& z = *xy;
    bool split = false;
    for (auto const& c : std::array<Vec, 3>{Vec(E.rank()), z, x}) {
      if (D.index(c) != s || !leq(E, c, z)) continue;
      if (D.index(minus(E, z, c)) == v) split = true;
      if (split) break;
    }
    if (!split) r.fiber_sums = Outcome::unknown("no split of " + z.str() + " found");
  }
  return r;
}

struct SymbolicHeadIso {
  FiniteEffectAlgebra quotient;
  FiniteEffectAlgebra head;
  std::optional<std::vector<int>> iso;  // quotient index -> head index
  Outcome outcome;
};

// E/E_0 computed from the vanishing ideal, enumerated, and matched with
// Γ(H,u); the class of x must be the fiber index of x on probe points.
inline SymbolicHeadIso quotient_head_iso(IntervalEffectAlgebra const& E, SymbolicDecomposition const& D,
                                         Budget const& b = {}) {
  SymbolicIdeal I = detail::zero_fiber_ideal(E, D, b);
  SymbolicQuotient q = quotient(E, I);
  SymbolicHeadIso r{enumerate(q.algebra), enumerate(D.target), std::nullopt, {}};
  for (auto const& x : detail::probe_points(E, b))
    if (q.project(x) != D.index(x)) {
      r.outcome = Outcome::refuted("class of " + x.str() + " differs from its fiber");
      return r;
    }
  auto qp = carrier_points(q.algebra), hp = carrier_points(D.target);
  if (qp != hp) {
    r.outcome = Outcome::refuted("quotient classes and head points differ");
    return r;
  }
  std::vector<int> phi(qp.size());
  for (std::size_t i = 0; i < qp.size(); ++i) phi[i] = static_cast<int>(i);
  Outcome hom = verify_hom(make_hom(r.quotient, r.head, phi));
  if (!hom.holds()) {
    r.outcome = hom;
    return r;
  }
  r.iso = phi;
  r.outcome = Outcome::proved("x/E_0 -> t on " + std::to_string(qp.size()) + " classes");
  return r;
}

inline bool fibers_equal(IntervalEffectAlgebra const& E, SymbolicDecomposition const& a,
                         SymbolicDecomposition const& b, Budget const& budget = {}) {
  for (auto const& x : detail::probe_points(E, budget))
    if (a.index(x) != b.index(x)) return false;
  return true;
}

struct SymbolicStrongFamily {
  std::optional<Matrix> section;  // c_t = section · t
  Outcome outcome;
  Vec at(Vec const& t) const { return effectkit::apply(*section, t); }
};

inline SymbolicStrongFamily find_strong_family(IntervalEffectAlgebra const& E, SymbolicDecomposition const& D,
                                               Budget const& b = {}) {
  SymbolicStrongFamily F;
  SymbolicIdeal I;
  try {
    I = detail::zero_fiber_ideal(E, D, b);
  } catch (Unsupported const& e) {
    F.outcome = Outcome::unknown(e.what());
    return F;
  }
  SymbolicRetraction R = is_retractive(E, I, b);
  if (!R.tail_map) {
    F.outcome = R.outcome;
    return F;
  }
  std::size_t k = R.head.size();
  Matrix S = zero_matrix(E.rank(), k);
  for (std::size_t i = 0; i < k; ++i) S[R.head[i]][i] = 1;
  for (std::size_t j = 0; j < R.tail.size(); ++j)
    for (std::size_t i = 0; i < k; ++i) S[R.tail[j]][i] = (*R.tail_map)[j][i];
  F.section = S;
  if (F.at(D.target.u()) != E.u()) {
    F.outcome = Outcome::refuted("c_u = " + F.at(D.target.u()).str());
    return F;
  }
  auto ts = window_elements(D.target, b);
  for (auto const& t : ts) {
    Vec c = F.at(t);
    if (!in_carrier(E, c) || D.index(c) != t) {
      F.outcome = R.outcome.holds() ? Outcome::refuted("c_" + t.str() + " = " + c.str() + " leaves E_" + t.str())
                                    : R.outcome;
      F.section.reset();
      return F;
    }
  }
  std::string shape = "c_t = " + matrix_str(S) + "·t, c_u = " + E.u().str();
  F.outcome = R.outcome.verdict == Verdict::proved ? Outcome::proved(shape)
                                                   : Outcome::witnessed(shape + "; " + std::to_string(ts.size()) + " head points");
  return F;
}

struct Representation {
  ConePoGroup head;  // with unit u
  ConePoGroup tail;
  Matrix state;    // x -> t
  Matrix section;  // t -> c_t
  std::vector<std::size_t> tail_coords;
  IntervalEffectAlgebra image;  // Γ(H ⃗× G,(u,0))
  Outcome bijection, additivity, fibers, tail_rdp;

  Vec forward(Vec const& x) const {
    Vec t = effectkit::apply(state, x);
    Vec d = x - effectkit::apply(section, t);
    Vec g(tail_coords.size());
    for (std::size_t j = 0; j < tail_coords.size(); ++j) g[j] = d[tail_coords[j]];
    return Vec::concat(t, g);
  }
  Vec backward(Vec const& y) const {
    std::size_t k = head.rank();
    Vec x = effectkit::apply(section, y.slice(0, k));
    for (std::size_t j = 0; j < tail_coords.size(); ++j) x[tail_coords[j]] += y[k + j];
    return x;
  }
  Outcome overall() const { return both(both(bijection, additivity), both(fibers, tail_rdp)); }
};

// φ(x) = (t, x − c_t) with the tail read off the declared lexicographic split.
inline Representation represent(IntervalEffectAlgebra const& E, SymbolicStrongFamily const& F,
                                SymbolicDecomposition const& D, Budget const& b = {}) {
  if (!F.section) throw std::invalid_argument("no strong family");
  auto coords = detail::projected_coords(D);
  if (!coords) throw Unsupported("decomposition is not a coordinate projection");
  std::size_t k = coords->size();
  for (std::size_t i = 0; i < k; ++i)
    if ((*coords)[i] != i) throw Unsupported("head coordinates must lead");
  auto sp = lex_split(E.group, k);
  if (!sp) throw Unsupported("head is not a lexicographic factor");
  Representation R{D.target.group, sp->second, decomposition_to_hu_state(D).map, *F.section, {}, D.target, {}, {}, {}, {}};
  for (std::size_t j = k; j < E.rank(); ++j) R.tail_coords.push_back(j);
  if (R.tail.rank() > 0) R.image = gamma(lex_product(R.head, R.tail));

  std::string budget = std::to_string(b.samples) + " samples; " + b.str();
  R.bijection = Outcome::witnessed("iso⁻¹∘iso and iso∘iso⁻¹ on " + budget);
  R.fibers = Outcome::witnessed("iso(E_t) ⊆ {t}×G on " + budget);
  auto xs = sample_elements(E, b, b.samples, 31);
  auto ys = sample_elements(R.image, b, b.samples, 37);
  for (auto const& x : xs) {
    Vec y = R.forward(x);
    if (!in_carrier(R.image, y) || R.backward(y) != x) {
      R.bijection = Outcome::refuted("round trip fails at " + x.str());
      break;
    }
    if (y.slice(0, k) != D.index(x)) {
      R.fibers = Outcome::refuted(x.str() + " maps outside its fiber");
      break;
    }
  }
  for (auto const& y : ys) {
    Vec x = R.backward(y);
    if (!in_carrier(E, x) || R.forward(x) != y) {
      R.bijection = Outcome::refuted("inverse round trip fails at " + y.str());
      break;
    }
  }
  R.additivity = Outcome::witnessed(budget);
  Sampler smp(b.seed + 41);
  for (int i = 0; i < b.samples && !xs.empty(); ++i) {
    auto const& x = xs[smp.index(xs.size())];
    auto const& y = xs[smp.index(xs.size())];
    auto s = sum(E, x, y);
    if (!s) continue;
    auto t = sum(R.image, R.forward(x), R.forward(y));
    if (!t || *t != R.forward(*s)) {
      R.additivity = Outcome::refuted("φ(" + x.str() + "+" + y.str() + ") is not additive");
      break;
    }
  }
  R.tail_rdp = R.tail.rank() == 0 ? Outcome::proved("trivial group") : check_rdp_cone(R.tail, b).outcome;
  return R;
}

// ===========================================================================
// Functor action on tail homomorphisms

struct FunctorImage {
  IntervalEffectAlgebra source, target;
  Matrix h;  // tail map G -> G1
  Outcome hom, injective, surjective;

  Vec operator()(Vec const& x) const {
    std::size_t k = source.rank() - columns(h, 0);
    return Vec::concat(x.slice(0, k), effectkit::apply(h, x.slice(k, source.rank() - k)));
  }
};

// (t, g) -> (t, h(g)) from Γ(H ⃗× G,(u,0)) to Γ(H ⃗× G1,(u,0)).
inline FunctorImage functor_map(ConePoGroup const& head, ConePoGroup const& G, ConePoGroup const& G1, Matrix h,
                                Budget const& b = {}) {
  if (h.size() != G1.rank() || columns(h, G.rank()) != G.rank()) throw std::invalid_argument("matrix shape mismatch");
  Vec lo = filled(G.rank(), Rat(-b.window)), hi = filled(G.rank(), Rat(b.window));
  for (auto const& g : box_points(G, lo, hi, 1, [&](Vec const& v) { return G.cone.contains(v); }))
    if (!G1.cone.contains(effectkit::apply(h, g))) throw std::invalid_argument("h is not cone-preserving at " + g.str());
  FunctorImage f{gamma(lex_product(head, G)), gamma(lex_product(head, G1)), std::move(h), {}, {}, {}};
  std::string budget = std::to_string(b.samples) + " samples; " + b.str();
  f.hom = Outcome::witnessed("0, 1 and sums preserved on " + budget);
  if (f(f.source.group.zero()) != f.target.group.zero() || f(f.source.u()) != f.target.u())
    f.hom = Outcome::refuted("0 or 1 not preserved");
  auto xs = sample_elements(f.source, b, b.samples, 43);
  Sampler smp(b.seed + 47);
  for (int i = 0; i < b.samples && !xs.empty() && f.hom.holds(); ++i) {
    auto const& x = xs[smp.index(xs.size())];
    auto const& y = xs[smp.index(xs.size())];
    if (!in_carrier(f.target, f(x))) f.hom = Outcome::refuted(x.str() + " maps outside the target");
    auto s = sum(f.source, x, y);
    if (!s) continue;
    auto t = sum(f.target, f(x), f(y));
    if (!t || *t != f(*s)) f.hom = Outcome::refuted("sum " + x.str() + "+" + y.str() + " not preserved");
  }
  std::size_t r = rank_of(f.h), m = G.rank(), n = G1.rank();
  f.injective = r == m ? Outcome::proved("h has full column rank") : Outcome::refuted("h has rank " + std::to_string(r) + " < " + std::to_string(m));
  if (r < n) {
    f.surjective = Outcome::refuted("h has rank " + std::to_string(r) + " < " + std::to_string(n));
  } else if (!G1.all_integer()) {
    f.surjective = Outcome::proved("full row rank over Q");
  } else {
    Rat g = maximal_minor_gcd(f.h);
    f.surjective = g == Rat(1) ? Outcome::proved("maximal minors have gcd 1")
                               : Outcome::refuted("maximal minors have gcd " + g.str());
  }
  // Sampled image check: small target points with and without preimages.
  std::set<Vec> image;
  for (auto const& x : window_elements(f.source, b)) image.insert(f(x));
  Budget small = b;
  small.window = 1;
  for (auto const& y : window_elements(f.target, small))
    if (!image.count(y)) {
      if (f.surjective.holds()) f.surjective = Outcome::refuted("structural claim contradicted: " + y.str() + " has no preimage");
      else f.surjective.detail += "; " + y.str() + " has no preimage";
      break;
    }
  return f;
}

// ===========================================================================
// Local retractive classification

struct BranchReport {
  bool rdp = false;
  Outcome local, rad_retractive, rad_strict;
  Outcome i, ii, iii;
  Outcome consistency;
  std::string head = "-", tail = "-";  // (H,u) and G when extracted
  std::vector<std::string> notes;
};

namespace detail {

inline Outcome consistency(BranchReport const& r) {
  std::vector<Outcome const*> decided;
  for (auto const* o : {&r.i, &r.ii, &r.iii})
    if (o->verdict != Verdict::unknown) decided.push_back(o);
  if (!r.rdp) return Outcome::unknown("host lacks RDP; equivalence not asserted");
  for (auto const* o : decided)
    if (o->holds() != decided.front()->holds()) return Outcome::refuted("branches disagree");
  if (decided.size() < 3) return Outcome::witnessed(std::to_string(decided.size()) + " decided branches agree");
  return Outcome::proved("all three branches agree");
}

inline Outcome conjunction(std::initializer_list<Outcome> xs) {
  Outcome acc = Outcome::proved();
  for (auto const& x : xs) acc = both(acc, x);
  return acc;
}

}  // namespace detail

inline BranchReport classify_local_retractive(FiniteEffectAlgebra const& E) {
  BranchReport r;
  r.rdp = check_rdp(E).outcome.holds();
  auto maxes = maximal_ideals(E);
  ElementSet rad = radical(E);
  r.local = maxes.size() == 1 ? Outcome::proved("unique maximal ideal " + E.set_str(maxes.front()))
                              : Outcome::refuted(std::to_string(maxes.size()) + " maximal ideals");
  try {
    r.rad_retractive = is_retractive(E, rad).outcome;
    r.rad_strict = is_strict(E, rad);
  } catch (std::invalid_argument const& e) {
    r.rad_retractive = r.rad_strict = Outcome::unknown(e.what());
  }
  r.i = detail::conjunction({r.local, r.rad_retractive, r.rad_strict});

  // (ii) and (iii): E_0 of such a decomposition is a maximal ideal with E/E_0 ≅ Γ(H,u).
  r.ii = Outcome::refuted("no maximal ideal yields a strong decomposition onto a simple antilattice");
  r.iii = Outcome::refuted("no representation Γ(H ⃗× G,(u,0)) with the required head");
  for (auto const& M : maxes) {
    Quotient q;
    try {
      q = quotient(E, M);
    } catch (std::invalid_argument const& e) {
      r.notes.push_back(e.what());
      continue;
    }
    FiniteHuState s{q.algebra, {}, q.projection};
    FiniteDecomposition D = hu_state_to_decomposition(E, s);
    auto order = classify_order(q.algebra);
    Outcome head = detail::conjunction({is_simple(q.algebra) ? Outcome::proved() : Outcome::refuted("head not simple"),
                                        order.antilattice ? Outcome::proved() : Outcome::refuted("head not antilattice"),
                                        is_archimedean(q.algebra)});
    Outcome ordered = is_ordered_decomposition(E, D).verdict();
    Outcome directed = is_directed_decomposition(E, D);
    auto F = find_strong_family(E, D);
    Outcome ii = detail::conjunction({head, ordered, directed, F.outcome});
    if (!ii.holds()) continue;
    r.ii = Outcome::proved("E_0 = " + E.set_str(M) + ", head " + std::to_string(q.algebra.size()) + " elements");
    auto rep = represent(E, F, D);
    if (rep.outcome.holds()) {
      r.iii = Outcome::proved("E ≅ Γ(H ⃗× O,(u,0))");
      r.head = "E/" + E.set_str(M) + " (" + std::to_string(q.algebra.size()) + " elements)";
      r.tail = "O";
    }
    break;
  }
  r.consistency = detail::consistency(r);
  return r;
}

inline BranchReport classify_local_retractive(IntervalEffectAlgebra const& E, Budget const& b = {}) {
  BranchReport r;
  Outcome rdp = check_rdp(E, b).outcome;
  r.rdp = rdp.holds();
  r.notes.push_back("RDP: " + rdp.detail);
  auto L = ideal_lattice(E, b);
  r.local = is_local(L) ? Outcome(L.basis.verdict, "unique maximal ideal " + L.maximal.front().str())
                        : Outcome(L.basis.verdict == Verdict::proved ? Verdict::refuted : Verdict::refuted,
                                  std::to_string(L.maximal.size()) + " maximal candidates");
  if (is_local(L)) {
    r.rad_retractive = is_retractive(E, L.radical, b).outcome;
    r.rad_strict = is_strict(E, L.radical, b);
  } else {
    r.rad_retractive = r.rad_strict = Outcome::unknown("radical is an intersection of several maximal ideals");
  }
  r.i = r.local.holds() ? detail::conjunction({r.local, r.rad_retractive, r.rad_strict}) : r.local;

  r.ii = Outcome::refuted("no maximal ideal yields a strong decomposition onto a simple antilattice");
  r.iii = Outcome::refuted("no representation Γ(H ⃗× G,(u,0)) with the required head");
  bool undecided = false;
  for (auto const& M : L.maximal) {
    SymbolicHuState s;
    try {
      s = quotient_hu_state(E, M);
    } catch (Unsupported const& e) {
      r.notes.push_back(std::string("maximal ideal ") + M.str() + ": " + e.what());
      undecided = true;
      continue;
    }
    auto D = hu_state_to_decomposition(s);
    auto const& H = s.target;
    Outcome head = detail::conjunction({is_simple(H, b), classify_order(H, b).antilattice, is_archimedean(H, b)});
    Outcome ordered = is_ordered_decomposition(E, D, b).verdict();
    Outcome directed = is_directed_decomposition(E, D, b);
    auto F = find_strong_family(E, D, b);
    Outcome ii = detail::conjunction({head, ordered, directed, F.outcome});
    if (ii.verdict == Verdict::unknown) undecided = true;
    if (!ii.holds()) {
      r.notes.push_back("E_0 = " + M.str() + ": " + ii.detail);
      continue;
    }
    r.ii = ii;
    r.ii.detail = "E_0 = " + M.str() + ", (H,u) = " + H.group.str();
    try {
      auto R = represent(E, F, D, b);
      Outcome iii = detail::conjunction({R.overall(), is_directed(R.tail, b), head});
      if (iii.holds()) {
        r.iii = iii;
        r.iii.detail = "E ≅ Γ(H ⃗× G,(u,0)) with H = " + group_display(R.head) + ", G = " + group_display(R.tail);
        r.head = group_display(R.head) + " @ " + R.head.unit->str();
        r.tail = group_display(R.tail);
      } else if (iii.verdict == Verdict::unknown) {
        undecided = true;
      }
    } catch (Unsupported const& e) {
      r.iii = Outcome::unknown(e.what());
    }
    break;
  }
  if (undecided && !r.ii.holds()) r.ii = Outcome::unknown("some maximal ideal could not be decided");
  if (undecided && !r.iii.holds()) r.iii = Outcome::unknown("some maximal ideal could not be decided");
  r.consistency = detail::consistency(r);
  return r;
}

// ===========================================================================
// Subdirect decomposition over prime ideals

struct SubdirectReport {
  std::vector<ElementSet> primes;
  std::vector<Quotient> factors;
  std::vector<std::vector<int>> embedding;  // host index -> component indices
  Outcome intersection_zero, order_embedding, projections_onto, antilattice_factors, lattice_ops;
  Outcome overall() const {
    return both(both(intersection_zero, order_embedding), both(projections_onto, both(antilattice_factors, lattice_ops)));
  }
};

inline SubdirectReport subdirect_decompose(FiniteEffectAlgebra const& E) {
  if (!check_rdp(E).outcome.holds()) throw Unsupported("subdirect decomposition needs a host with RDP");
  SubdirectReport r;
  r.primes = prime_ideals(E);
  ElementSet cap = full_set(E.size());
  for (auto const& P : r.primes) {
    cap = intersect(cap, P);
    r.factors.push_back(quotient(E, P));
  }
  r.intersection_zero = is_zero_ideal(E, cap) ? Outcome::proved("∩P = {0}")
                                              : Outcome::refuted("∩P = " + E.set_str(cap));
  for (int x = 0; x < E.n(); ++x) {
    std::vector<int> tuple;
    for (auto const& q : r.factors) tuple.push_back(q.projection[x]);
    r.embedding.push_back(std::move(tuple));
  }
  auto below = [&](int a, int b) {
    for (std::size_t i = 0; i < r.factors.size(); ++i)
      if (!r.factors[i].algebra.leq(r.embedding[a][i], r.embedding[b][i])) return false;
    return true;
  };
  r.order_embedding = Outcome::proved("exhaustive");
  for (int a = 0; a < E.n() && r.order_embedding.holds(); ++a)
    for (int b = 0; b < E.n(); ++b)
      if (E.leq(a, b) != below(a, b)) {
        r.order_embedding = Outcome::refuted("order not reflected at " + E.label(a) + ", " + E.label(b));
        break;
      }
  r.projections_onto = Outcome::proved("each projection is a quotient map");
  r.antilattice_factors = Outcome::proved("exhaustive");
  for (std::size_t i = 0; i < r.factors.size(); ++i) {
    auto const& q = r.factors[i];
    if (!is_surjective(make_hom(E, q.algebra, q.projection)))
      r.projections_onto = Outcome::refuted("projection " + std::to_string(i) + " is not onto");
    if (!classify_order(q.algebra).antilattice)
      r.antilattice_factors = Outcome::refuted("factor " + std::to_string(i) + " is not an antilattice");
  }
  r.lattice_ops = Outcome::proved("exhaustive");
  for (int a = 0; a < E.n() && r.lattice_ops.holds(); ++a)
    for (int b = 0; b < E.n(); ++b) {
      auto m = meet(E, a, b);
      auto j = join(E, a, b);
      for (std::size_t i = 0; i < r.factors.size(); ++i) {
        auto const& Q = r.factors[i].algebra;
        int pa = r.embedding[a][i], pb = r.embedding[b][i];
        if (m && meet(Q, pa, pb) != std::optional<int>(r.embedding[*m][i]))
          r.lattice_ops = Outcome::refuted("meet of " + E.label(a) + ", " + E.label(b) + " not preserved");
        if (j && join(Q, pa, pb) != std::optional<int>(r.embedding[*j][i]))
          r.lattice_ops = Outcome::refuted("join of " + E.label(a) + ", " + E.label(b) + " not preserved");
      }
      if (!r.lattice_ops.holds()) break;
    }
  return r;
}

}  // namespace effectkit
