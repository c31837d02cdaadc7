#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "effectkit/ideals.hpp"
#include "effectkit/lp.hpp"
#include "effectkit/matrix.hpp"
#include "effectkit/morphisms.hpp"

namespace effectkit {

// ===========================================================================
// Real-valued states on finite hosts

namespace detail {

// s >= 0 implicit; s(a)+s(b)-s(a+b) = 0, s(0) = 0, s(1) = 1, s <= 1.
inline void state_polytope(FiniteEffectAlgebra const& E, std::vector<std::vector<Rat>>& A, std::vector<Rat>& b) {
  std::size_t n = E.size();
  auto eq = [&](std::vector<Rat> row, Rat rhs) {
    A.push_back(row);
    b.push_back(rhs);
    for (auto& v : row) v = -v;
    A.push_back(std::move(row));
    b.push_back(-rhs);
  };
  for (int a = 0; a < E.n(); ++a)
    for (int c = a; c < E.n(); ++c) {
      int s = E.sum(a, c);
      if (s == E.undefined) continue;
      std::vector<Rat> row(n);
      row[a] += Rat(1);
      row[c] += Rat(1);
      row[s] -= Rat(1);
      bool zero = true;
      for (auto const& v : row)
        if (!v.is_zero()) zero = false;
      if (!zero) eq(std::move(row), Rat(0));
    }
  std::vector<Rat> z(n), o(n);
  z[E.zero()] = 1;
  o[E.one()] = 1;
  eq(z, Rat(0));
  eq(o, Rat(1));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rat> row(n);
    row[i] = 1;
    A.push_back(std::move(row));
    b.push_back(Rat(1));
  }
}

}  // namespace detail

inline std::optional<std::vector<Rat>> state_feasible(FiniteEffectAlgebra const& E) {
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  detail::state_polytope(E, A, b);
  return lp::feasible_point(A, b, E.size());
}

// Minimum and maximum of s(a) over all states; nothing when no state exists.
inline std::optional<std::pair<Rat, Rat>> state_extremes(FiniteEffectAlgebra const& E, int a) {
  std::vector<std::vector<Rat>> A;
  std::vector<Rat> b;
  detail::state_polytope(E, A, b);
  std::vector<Rat> c(E.size());
  c[a] = 1;
  auto hi = lp::maximize(A, b, c);
  if (hi.status != lp::Status::optimal) return std::nullopt;
  c[a] = -1;
  auto lo = lp::maximize(A, b, c);
  return std::make_pair(-lo.value, hi.value);
}

inline Outcome is_state(FiniteEffectAlgebra const& E, std::vector<Rat> const& s) {
  if (s.size() != E.size()) return Outcome::refuted("wrong number of values");
  if (s[E.one()] != Rat(1)) return Outcome::refuted("s(1) != 1");
  for (int a = 0; a < E.n(); ++a) {
    if (s[a] < Rat(0) || s[a] > Rat(1)) return Outcome::refuted("s(" + E.label(a) + ") outside [0,1]");
    for (int c = 0; c < E.n(); ++c)
      if (E.defined(a, c) && s[E.sum(a, c)] != s[a] + s[c])
        return Outcome::refuted("not additive at " + E.label(a) + "+" + E.label(c));
  }
  return Outcome::proved("exhaustive");
}

struct StateReport {
  Outcome unique;
  std::optional<std::vector<Rat>> state;  // the state when unique
  std::vector<std::pair<Rat, Rat>> extremes;
};

inline StateReport unique_state(FiniteEffectAlgebra const& E) {
  StateReport r;
  auto s = state_feasible(E);
  if (!s) {
    r.unique = Outcome::refuted("no state");
    return r;
  }
  for (int a = 0; a < E.n(); ++a) {
    auto ex = state_extremes(E, a);
    r.extremes.push_back(*ex);
    if (ex->first != ex->second && !r.unique.fails())
      r.unique = Outcome::refuted("s(" + E.label(a) + ") ranges over [" + ex->first.str() + ", " + ex->second.str() + "]");
  }
  if (!r.unique.fails()) {
    r.unique = Outcome::proved("all extremes coincide");
    r.state = s;
  }
  return r;
}

// ===========================================================================
// States on lexicographic interval hosts

// Head rank used for lexicographic delegation: the declared split, or the
// leading lexicographic factor.
inline std::size_t head_rank(IntervalEffectAlgebra const& E) {
  if (E.split) return *E.split;
  return E.group.cone.lex_factors().front().rank();
}

inline IntervalEffectAlgebra head_algebra(IntervalEffectAlgebra const& E, std::size_t k) {
  auto sp = lex_split(E.group, k);
  if (!sp) throw Unsupported("coordinate " + std::to_string(k) + " is not a lexicographic factor boundary");
  return gamma(sp->first);
}

// State s(x) = weights · x.
struct LinearState {
  Vec weights;
  Rat operator()(Vec const& x) const {
    Rat s;
    for (std::size_t i = 0; i < x.rank(); ++i) s += weights[i] * x[i];
    return s;
  }
};

// Extends a state of the enumerated head to s(h, g) := s_H(h).
inline LinearState state_transfer(IntervalEffectAlgebra const& E, std::size_t k, std::vector<Rat> const& head_values) {
  auto H = head_algebra(E, k);
  auto pts = carrier_points(H);
  if (head_values.size() != pts.size()) throw std::invalid_argument("head state has the wrong size");
  Vec w(E.rank());
  for (std::size_t i = 0; i < k; ++i) {
    Vec e(k);
    e[i] = 1;
    auto it = std::lower_bound(pts.begin(), pts.end(), e);
    if (it != pts.end() && *it == e) w[i] = head_values[static_cast<std::size_t>(it - pts.begin())];
  }
  for (std::size_t p = 0; p < pts.size(); ++p) {
    Rat v;
    for (std::size_t i = 0; i < k; ++i) v += w[i] * pts[p][i];
    if (v != head_values[p]) throw std::invalid_argument("head state is not additive");
  }
  return {w};
}

// Restricts a state of E to the head via t -> s(t, 0), checking s(0, g) = 0
// on samples.
inline std::pair<std::vector<Rat>, Outcome> state_restrict(IntervalEffectAlgebra const& E, std::size_t k,
                                                          LinearState const& s, Budget const& b = {}) {
  auto H = head_algebra(E, k);
  std::vector<Rat> vals;
  for (auto const& t : carrier_points(H)) vals.push_back(s(Vec::concat(t, Vec(E.rank() - k))));
  for (auto const& x : sample_elements(E, b, b.samples, 3)) {
    bool tail_only = true;
    for (std::size_t i = 0; i < k; ++i) tail_only = tail_only && x[i].is_zero();
    if (tail_only && !s(x).is_zero()) return {vals, Outcome::refuted("s" + x.str() + " != 0")};
  }
  return {vals, Outcome::witnessed("s(0,g) = 0 on samples; " + b.str())};
}

struct SymbolicStateReport {
  Outcome unique;
  std::optional<LinearState> state;
  StateReport head;
};

// Uniqueness delegated to the enumerated head Γ(H,u).
inline SymbolicStateReport unique_state(IntervalEffectAlgebra const& E) {
  SymbolicStateReport r;
  if (E.enumerable) {
    r.head = unique_state(enumerate(E));
    r.unique = r.head.unique;
    if (r.head.state) r.state = state_transfer(E, E.rank(), *r.head.state);
    return r;
  }
  std::size_t k = head_rank(E);
  auto H = head_algebra(E, k);
  if (!H.enumerable) throw Unsupported("head is not enumerable");
  r.head = unique_state(enumerate(H));
  r.unique = r.head.unique;
  if (r.head.unique.holds()) r.unique.detail = "head Γ(H,u) has a unique state";
  if (r.head.state) r.state = state_transfer(E, k, *r.head.state);
  return r;
}

// ===========================================================================
// (H,u)-valued states and decompositions on finite hosts

// Additive map into the finite interval [0,u]_H, given as a target index per
// host element. Target points record the group coordinates when known.
struct FiniteHuState {
  FiniteEffectAlgebra target;
  std::vector<Vec> target_points;
  std::vector<int> map;
};

inline FiniteHuState make_hu_state(FiniteEffectAlgebra const& E, IntervalEffectAlgebra const& H,
                                   std::vector<Vec> const& values) {
  if (values.size() != E.size()) throw std::invalid_argument("one value per element required");
  FiniteHuState s{enumerate(H), carrier_points(H), {}};
  for (auto const& v : values) {
    auto it = std::lower_bound(s.target_points.begin(), s.target_points.end(), v);
    if (it == s.target_points.end() || *it != v) throw std::invalid_argument(v.str() + " is not in [0,u]_H");
    s.map.push_back(static_cast<int>(it - s.target_points.begin()));
  }
  return s;
}

// s(1) = u and additivity: an effect-algebra homomorphism into [0,u]_H.
inline Outcome verify_hu_state(FiniteEffectAlgebra const& E, FiniteHuState const& s) {
  return verify_hom(make_hom(E, s.target, s.map));
}

inline bool is_valued(FiniteEffectAlgebra const& E, FiniteHuState const& s) {
  return is_surjective(make_hom(E, s.target, s.map));
}

struct HuExtensionReport {
  Outcome zero, monotone, complement;
  Outcome overall() const { return both(both(zero, monotone), complement); }
};

inline HuExtensionReport validate_hu_state_extension(FiniteEffectAlgebra const& E, FiniteHuState const& s) {
  HuExtensionReport r;
  auto const& T = s.target;
  r.zero = s.map[E.zero()] == T.zero() ? Outcome::proved() : Outcome::refuted("s(0) = " + T.label(s.map[E.zero()]));
  r.monotone = Outcome::proved("exhaustive");
  for (int a = 0; a < E.n() && r.monotone.holds(); ++a)
    for (int b = 0; b < E.n(); ++b)
      if (E.leq(a, b) && !T.leq(s.map[a], s.map[b])) {
        r.monotone = Outcome::refuted(E.label(a) + " <= " + E.label(b) + " but images are not ordered");
        break;
      }
  r.complement = Outcome::proved("exhaustive");
  for (int a = 0; a < E.n(); ++a) {
    int ta = s.map[a];
    if (!T.leq(ta, T.one()) || s.map[complement(E, a)] != complement(T, ta)) {
      r.complement = Outcome::refuted("s(" + E.label(a) + "⁻) != s(" + E.label(a) + ")⁻");
      break;
    }
  }
  return r;
}

// Fibers E_t indexed by target elements.
struct FiniteDecomposition {
  FiniteEffectAlgebra target;
  std::vector<ElementSet> fibers;
};

// Partition, nonempty fibers, (a) E_t⁻ = E_{u-t}, (b) fiber additivity.
inline Outcome validate_decomposition(FiniteEffectAlgebra const& E, FiniteDecomposition const& D) {
  auto const& T = D.target;
  std::vector<int> owner(E.size(), -1);
  for (int t = 0; t < T.n(); ++t) {
    if (count(D.fibers[t]) == 0) return Outcome::refuted("fiber " + T.label(t) + " is empty");
    for (int x = 0; x < E.n(); ++x)
      if (D.fibers[t][x]) {
        if (owner[x] != -1) return Outcome::refuted(E.label(x) + " lies in two fibers");
        owner[x] = t;
      }
  }
  for (int x = 0; x < E.n(); ++x)
    if (owner[x] == -1) return Outcome::refuted(E.label(x) + " lies in no fiber");
  for (int x = 0; x < E.n(); ++x)
    if (owner[complement(E, x)] != complement(T, owner[x]))
      return Outcome::refuted("(a) fails: complement of " + E.label(x) + " is in the wrong fiber");
  for (int x = 0; x < E.n(); ++x)
    for (int y = 0; y < E.n(); ++y) {
      if (!E.defined(x, y)) continue;
      int st = T.sum(owner[x], owner[y]);
      if (st == T.undefined || owner[E.sum(x, y)] != st)
        return Outcome::refuted("(b) fails at " + E.label(x) + "+" + E.label(y));
    }
  return Outcome::proved("exhaustive");
}

inline FiniteDecomposition hu_state_to_decomposition(FiniteEffectAlgebra const& E, FiniteHuState const& s) {
  if (auto v = verify_hu_state(E, s); !v.holds()) throw std::invalid_argument("not an (H,u)-state: " + v.detail);
  if (!is_valued(E, s)) throw std::invalid_argument("state is not valued: some fiber is empty");
  FiniteDecomposition D{s.target, std::vector<ElementSet>(s.target.size(), empty_set(E.size()))};
  for (int x = 0; x < E.n(); ++x) D.fibers[s.map[x]][x] = true;
  if (auto v = validate_decomposition(E, D); !v.holds()) throw std::logic_error(v.detail);
  return D;
}

inline FiniteHuState decomposition_to_hu_state(FiniteEffectAlgebra const& E, FiniteDecomposition const& D,
                                               std::vector<Vec> target_points = {}) {
  if (auto v = validate_decomposition(E, D); !v.holds()) throw std::invalid_argument(v.detail);
  FiniteHuState s{D.target, std::move(target_points), std::vector<int>(E.size(), -1)};
  for (int t = 0; t < D.target.n(); ++t)
    for (int x = 0; x < E.n(); ++x)
      if (D.fibers[t][x]) s.map[x] = t;
  return s;
}

// Every valued (H,u)-state from E onto the target, by backtracking.
inline std::vector<std::vector<int>> all_valued_hu_states(FiniteEffectAlgebra const& E, FiniteEffectAlgebra const& T) {
  std::vector<std::vector<int>> out;
  std::vector<int> m(E.size(), -1);
  auto ok = [&](int a) {
    if (a == E.zero() && m[a] != T.zero()) return false;
    if (a == E.one() && m[a] != T.one()) return false;
    for (int b = 0; b <= a; ++b) {
      int s = E.sum(a, b);
      if (s == E.undefined) continue;
      int t = T.sum(m[a], m[b]);
      if (t == T.undefined) return false;
      if (s <= a && m[s] != t) return false;
    }
    for (int x = 0; x < a; ++x)
      for (int y = 0; y < a; ++y)
        if (E.sum(x, y) == a && T.sum(m[x], m[y]) != m[a]) return false;
    return true;
  };
  auto search = [&](auto&& self, int a) -> void {
    if (a == E.n()) {
      auto h = make_hom(E, T, m);
      if (verify_hom(h).holds() && is_surjective(h)) out.push_back(m);
      return;
    }
    for (int t = 0; t < T.n(); ++t) {
      m[a] = t;
      if (ok(a)) self(self, a + 1);
    }
    m[a] = -1;
  };
  search(search, 0);
  return out;
}

// ===========================================================================
// (H,u)-states and decompositions on interval hosts

// s(x) = map · x into Γ(H,u).
struct SymbolicHuState {
  IntervalEffectAlgebra target;
  Matrix map;
  Vec operator()(Vec const& x) const { return effectkit::apply(map, x); }
};

inline SymbolicHuState canonical_hu_state(IntervalEffectAlgebra const& E, std::size_t k) {
  auto H = head_algebra(E, k);
  Matrix m = zero_matrix(k, E.rank());
  for (std::size_t i = 0; i < k; ++i) m[i][i] = 1;
  return {std::move(H), std::move(m)};
}

struct SymbolicHuCheck {
  Outcome state;   // s(u) = u_H, images in [0,u]_H, additivity on samples
  Outcome valued;  // image is all of [0,u]_H
};

inline SymbolicHuCheck verify_hu_state(IntervalEffectAlgebra const& E, SymbolicHuState const& s, Budget const& b = {}) {
  SymbolicHuCheck r;
  if (s(E.u()) != s.target.u()) {
    r.state = Outcome::refuted("s(u) = " + s(E.u()).str());
    r.valued = Outcome::refuted("not a state");
    return r;
  }
  auto pts = detail::probe_points(E, b);
  for (auto const& x : pts)
    if (!in_carrier(s.target, s(x))) {
      r.state = Outcome::refuted("s" + x.str() + " = " + s(x).str() + " leaves [0,u]_H");
      r.valued = Outcome::refuted("not a state");
      return r;
    }
  Sampler smp(b.seed + 5);
  for (int i = 0; i < b.samples && !pts.empty(); ++i) {
    auto const& x = pts[smp.index(pts.size())];
    auto const& y = pts[smp.index(pts.size())];
    if (E.group.cone.contains(E.u() - x - y) && !in_carrier(s.target, s(x) + s(y))) {
      r.state = Outcome::refuted("s(x)+s(y) undefined for x=" + x.str() + ", y=" + y.str());
      r.valued = Outcome::refuted("not a state");
      return r;
    }
  }
  r.state = Outcome::witnessed("linear map checked on " + std::to_string(pts.size()) + " probe points; " + b.str());
  bool projection = true;
  std::size_t k = s.target.rank();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < E.rank(); ++j) projection = projection && s.map[i][j] == Rat(i == j ? 1 : 0);
  if (projection && lex_split(E.group, k)) {
    r.state.verdict = Verdict::proved;
    r.state.detail = "projection onto the lexicographic head";
    r.valued = Outcome::proved("(t,0) lies in E for 0 <= t < u and u maps to u");
    return r;
  }
  for (auto const& t : window_elements(s.target, b)) {
    bool hit = false;
    for (auto const& x : pts)
      if (s(x) == t) {
        hit = true;
        break;
      }
    if (!hit) {
      r.valued = Outcome::unknown("no preimage of " + t.str() + " among probe points");
      return r;
    }
  }
  r.valued = Outcome::witnessed("every window point of [0,u]_H has a probe preimage");
  return r;
}

// Fibers E_t = {x : rows · x = t}.
struct SymbolicDecomposition {
  IntervalEffectAlgebra target;
  std::vector<LinearAtom> rows;  // rows[i]: coeffs · x = 0 describes E_0 coordinatewise

  Predicate fiber(Vec const& t) const {
    std::vector<Predicate> ps;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      LinearAtom a = rows[i];
      a.constant = -t[i];
      ps.push_back(Predicate::atom(std::move(a)));
    }
    if (ps.size() == 1) return ps.front();
    return Predicate::all_of(std::move(ps));
  }
  Vec index(Vec const& x) const {
    Vec t(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) t[i] = rows[i].eval(x.coords());
    return t;
  }
};

inline Outcome validate_decomposition(IntervalEffectAlgebra const& E, SymbolicDecomposition const& D,
                                      Budget const& b = {}) {
  auto pts = detail::probe_points(E, b);
  Vec const& u = D.target.u();
  for (auto const& x : pts) {
    Vec t = D.index(x);
    if (!in_carrier(D.target, t)) return Outcome::refuted(x.str() + " lies in no fiber");
    if (!D.fiber(u - t).holds(E.u() - x)) return Outcome::refuted("(a) fails at " + x.str());
  }
  Sampler smp(b.seed + 9);
  for (int i = 0; i < b.samples && !pts.empty(); ++i) {
    auto const& x = pts[smp.index(pts.size())];
    auto const& y = pts[smp.index(pts.size())];
    if (!E.group.cone.contains(E.u() - x - y)) continue;
    Vec st = D.index(x) + D.index(y);
    if (!in_carrier(D.target, st) || !D.fiber(st).holds(x + y))
      return Outcome::refuted("(b) fails at " + x.str() + "+" + y.str());
  }
  return Outcome::witnessed("(a) and (b) on " + std::to_string(pts.size()) + " probe points; " + b.str());
}

inline SymbolicDecomposition hu_state_to_decomposition(SymbolicHuState const& s) {
  SymbolicDecomposition D{s.target, {}};
  for (auto const& row : s.map) {
    LinearAtom a{std::vector<Rat>(row.begin(), row.end()), Rat(0), Rel::eq};
    D.rows.push_back(std::move(a));
  }
  return D;
}

inline SymbolicHuState decomposition_to_hu_state(SymbolicDecomposition const& D) {
  SymbolicHuState s{D.target, {}};
  // Reads each row back from the predicate describing E_0.
  Predicate p = D.fiber(D.target.group.zero());
  for (auto const& conj : p.dnf())
    for (auto const& a : conj) s.map.push_back(Vec(a.coeffs));
  return s;
}

}  // namespace effectkit
