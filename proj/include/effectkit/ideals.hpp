#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "effectkit/finite.hpp"
#include "effectkit/interval.hpp"
#include "effectkit/matrix.hpp"

namespace effectkit {

// ===========================================================================
// Finite hosts

inline ElementSet downset(FiniteEffectAlgebra const& E, ElementSet const& s) {
  ElementSet d = empty_set(E.size());
  for (int b = 0; b < E.n(); ++b)
    if (s[b])
      for (int a = 0; a < E.n(); ++a)
        if (E.leq(a, b)) d[a] = true;
  return d;
}

// Least ideal containing s: fixpoint of downward closure and defined sums.
inline ElementSet ideal_closure(FiniteEffectAlgebra const& E, ElementSet s) {
  s[E.zero()] = true;
  for (bool changed = true; changed;) {
    changed = false;
    ElementSet d = downset(E, s);
    for (int a = 0; a < E.n(); ++a)
      for (int b = 0; b < E.n(); ++b)
        if (d[a] && d[b] && E.defined(a, b)) d[E.sum(a, b)] = true;
    if (d != s) {
      s = std::move(d);
      changed = true;
    }
  }
  return s;
}

inline bool is_ideal(FiniteEffectAlgebra const& E, ElementSet const& s) {
  if (!s[E.zero()]) return false;
  for (int a = 0; a < E.n(); ++a)
    for (int b = 0; b < E.n(); ++b) {
      if (s[b] && E.leq(a, b) && !s[a]) return false;
      if (s[a] && s[b] && E.defined(a, b) && !s[E.sum(a, b)]) return false;
    }
  return true;
}

inline ElementSet singleton(FiniteEffectAlgebra const& E, int a) {
  ElementSet s = empty_set(E.size());
  s[a] = true;
  return s;
}

// Ideal generated by A. On RDP hosts: finite sums of elements below members
// of A. Elsewhere the closure fixpoint.
inline ElementSet generated_ideal(FiniteEffectAlgebra const& E, ElementSet const& A, bool host_rdp) {
  if (!host_rdp) return ideal_closure(E, A);
  ElementSet below = downset(E, A);
  below[E.zero()] = true;
  ElementSet sums = below;
  for (bool changed = true; changed;) {
    changed = false;
    for (int x = 0; x < E.n(); ++x)
      for (int a = 0; a < E.n(); ++a)
        if (sums[x] && below[a] && E.defined(x, a) && !sums[E.sum(x, a)]) {
          sums[E.sum(x, a)] = true;
          changed = true;
        }
  }
  return sums;
}

inline ElementSet generated_ideal(FiniteEffectAlgebra const& E, ElementSet const& A) {
  return generated_ideal(E, A, check_rdp(E).outcome.holds());
}

// Every ideal, ordered by size then membership; {0} first, E last.
inline std::vector<ElementSet> all_ideals(FiniteEffectAlgebra const& E) {
  std::set<ElementSet> seen;
  std::vector<ElementSet> frontier{ideal_closure(E, empty_set(E.size()))};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<ElementSet> next;
    for (auto const& I : frontier)
      for (int x = 0; x < E.n(); ++x) {
        if (I[x]) continue;
        ElementSet J = I;
        J[x] = true;
        J = ideal_closure(E, std::move(J));
        if (seen.insert(J).second) next.push_back(std::move(J));
      }
    frontier = std::move(next);
  }
  std::vector<ElementSet> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](ElementSet const& a, ElementSet const& b) {
    if (count(a) != count(b)) return count(a) < count(b);
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  });
  return out;
}

inline bool is_proper(FiniteEffectAlgebra const& E, ElementSet const& I) { return !I[E.one()]; }
inline bool is_zero_ideal(FiniteEffectAlgebra const& E, ElementSet const& I) { return count(I) == 1 && I[E.zero()]; }

inline std::vector<ElementSet> maximal_ideals(FiniteEffectAlgebra const& E) {
  auto ideals = all_ideals(E);
  std::vector<ElementSet> out;
  for (auto const& I : ideals) {
    if (!is_proper(E, I)) continue;
    bool top = true;
    for (auto const& J : ideals)
      if (J != I && is_proper(E, J) && subset_of(I, J)) top = false;
    if (top) out.push_back(I);
  }
  return out;
}

// I0(x) ∩ I0(y) ⊆ I forces x ∈ I or y ∈ I; proper ideals only.
inline Outcome is_prime(FiniteEffectAlgebra const& E, ElementSet const& I) {
  if (!is_proper(E, I)) return Outcome::refuted("ideal is not proper");
  bool rdp = check_rdp(E).outcome.holds();
  std::vector<ElementSet> principal;
  for (int x = 0; x < E.n(); ++x) principal.push_back(generated_ideal(E, singleton(E, x), rdp));
  for (int x = 0; x < E.n(); ++x)
    for (int y = x; y < E.n(); ++y)
      if (!I[x] && !I[y] && subset_of(intersect(principal[x], principal[y]), I))
        return Outcome::refuted("I0(" + E.label(x) + ") ∩ I0(" + E.label(y) + ") ⊆ I but neither is in I");
  return Outcome::proved("exhaustive");
}

inline std::vector<ElementSet> prime_ideals(FiniteEffectAlgebra const& E) {
  std::vector<ElementSet> out;
  for (auto const& I : all_ideals(E))
    if (is_proper(E, I) && is_prime(E, I).holds()) out.push_back(I);
  return out;
}

inline ElementSet radical(FiniteEffectAlgebra const& E) {
  ElementSet r = full_set(E.size());
  for (auto const& M : maximal_ideals(E)) r = intersect(r, M);
  return r;
}

inline bool is_local(FiniteEffectAlgebra const& E) { return maximal_ideals(E).size() == 1; }
inline bool is_simple(FiniteEffectAlgebra const& E) { return all_ideals(E).size() == 2; }

// i <= a + b lifts to i_a <= a, i_b <= b in I with i <= i_a + i_b.
inline Outcome is_riesz(FiniteEffectAlgebra const& E, ElementSet const& I) {
  if (check_rdp(E).outcome.holds()) return Outcome::proved("host has RDP");
  for (int i = 0; i < E.n(); ++i) {
    if (!I[i]) continue;
    for (int a = 0; a < E.n(); ++a)
      for (int b = 0; b < E.n(); ++b) {
        if (!E.defined(a, b) || !E.leq(i, E.sum(a, b))) continue;
        bool lifted = false;
        for (int ia = 0; ia < E.n() && !lifted; ++ia)
          for (int ib = 0; ib < E.n() && !lifted; ++ib)
            lifted = I[ia] && I[ib] && E.leq(ia, a) && E.leq(ib, b) && E.defined(ia, ib) && E.leq(i, E.sum(ia, ib));
        if (!lifted)
          return Outcome::refuted(E.label(i) + " <= " + E.label(a) + "+" + E.label(b) + " does not lift into I");
      }
  }
  return Outcome::proved("exhaustive");
}

struct Quotient {
  FiniteEffectAlgebra algebra;
  std::vector<int> projection;  // host index -> class index
};

// a ~ b iff a - e = b - f for some e <= a, f <= b in I.
inline bool congruent(FiniteEffectAlgebra const& E, ElementSet const& I, int a, int b) {
  for (int e = 0; e < E.n(); ++e) {
    if (!I[e] || !E.leq(e, a)) continue;
    int r = minus(E, a, e);
    for (int f = 0; f < E.n(); ++f)
      if (I[f] && E.leq(f, b) && minus(E, b, f) == r) return true;
  }
  return false;
}

inline Quotient quotient(FiniteEffectAlgebra const& E, ElementSet const& I) {
  if (!is_ideal(E, I)) throw std::invalid_argument("not an ideal: " + E.set_str(I));
  if (!is_riesz(E, I).holds()) throw std::invalid_argument("ideal is not Riesz: " + E.set_str(I));
  int const n = E.n();
  std::vector<int> cls(n, -1);
  std::vector<int> reps;
  for (int a = 0; a < n; ++a) {
    if (cls[a] != -1) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(a);
    for (int b = a; b < n; ++b)
      if (cls[b] == -1 && congruent(E, I, a, b)) cls[b] = id;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((cls[a] == cls[b]) != congruent(E, I, a, b))
        throw std::logic_error("congruence is not transitive at " + E.label(a) + ", " + E.label(b));
  std::size_t k = reps.size();
  std::vector<std::vector<int>> t(k, std::vector<int>(k, FiniteEffectAlgebra::undefined));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!E.defined(a, b)) continue;
      int& slot = t[cls[a]][cls[b]];
      int c = cls[E.sum(a, b)];
      if (slot != FiniteEffectAlgebra::undefined && slot != c)
        throw std::logic_error("quotient addition is not well defined");
      slot = c;
    }
  std::vector<std::string> labels;
  for (int r : reps) labels.push_back(E.label(r) + "/I");
  return {FiniteEffectAlgebra(std::move(labels), std::move(t), cls[E.zero()], cls[E.one()]), cls};
}

// x/I < y/I implies x < y.
inline Outcome is_strict(FiniteEffectAlgebra const& E, ElementSet const& I) {
  Quotient q = quotient(E, I);
  for (int x = 0; x < E.n(); ++x)
    for (int y = 0; y < E.n(); ++y)
      if (q.algebra.less(q.projection[x], q.projection[y]) && !E.less(x, y))
        return Outcome::refuted(E.label(x) + "/I < " + E.label(y) + "/I but not " + E.label(x) + " < " +
                                E.label(y));
  return Outcome::proved("exhaustive");
}

struct Retraction {
  Outcome outcome;
  std::vector<int> section;  // class index -> host index, when found
};

// Searches a homomorphism d: E/I -> E with projection(d(t)) = t.
inline Retraction is_retractive(FiniteEffectAlgebra const& E, ElementSet const& I) {
  Quotient q = quotient(E, I);
  FiniteEffectAlgebra const& Q = q.algebra;
  int const k = Q.n();
  std::vector<std::vector<int>> members(k);
  for (int a = 0; a < E.n(); ++a) members[q.projection[a]].push_back(a);
  std::vector<int> d(k, -1);
  auto consistent = [&](int t) {
    if (t == Q.zero() && d[t] != E.zero()) return false;
    if (t == Q.one() && d[t] != E.one()) return false;
    for (int s = 0; s < k; ++s) {
      if (d[s] == -1) continue;
      int qs = Q.sum(s, t);
      if (qs == Q.undefined) continue;
      int es = E.sum(d[s], d[t]);
      if (es == E.undefined) return false;
      if (d[qs] != -1 && d[qs] != es) return false;
    }
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        if (d[a] != -1 && d[b] != -1 && Q.sum(a, b) == t && E.sum(d[a], d[b]) != d[t]) return false;
    return true;
  };
  auto search = [&](auto&& self, int t) -> bool {
    if (t == k) return true;
    for (int cand : members[t]) {
      d[t] = cand;
      if (consistent(t) && self(self, t + 1)) return true;
    }
    d[t] = -1;
    return false;
  };
  if (search(search, 0)) {
    std::string s;
    for (int t = 0; t < k; ++t) s += (t ? ", " : "") + Q.label(t) + " -> " + E.label(d[t]);
    return {Outcome::proved("section " + s), d};
  }
  return {Outcome::refuted("no homomorphic section exists (exhaustive)"), {}};
}

struct LexVerdict {
  Outcome strict, retractive, prime, nontrivial;
  Outcome overall() const { return both(both(strict, retractive), both(prime, nontrivial)); }
  // Weak lexicographic ideals may be zero.
  Outcome weak() const { return both(both(strict, retractive), prime); }
};

inline LexVerdict is_lexicographic(FiniteEffectAlgebra const& E, ElementSet const& I) {
  LexVerdict v;
  bool trivial = is_zero_ideal(E, I) || !is_proper(E, I);
  v.nontrivial = trivial ? Outcome::refuted("ideal is trivial") : Outcome::proved();
  if (!is_proper(E, I)) {
    v.strict = v.retractive = v.prime = Outcome::refuted("ideal is not proper");
    return v;
  }
  v.strict = is_strict(E, I);
  v.retractive = is_retractive(E, I).outcome;
  v.prime = is_prime(E, I);
  return v;
}

// I ∪ I⁻, asserted to be an effect subalgebra.
inline ElementSet subalgebra_of_ideal(FiniteEffectAlgebra const& E, ElementSet const& I) {
  ElementSet s = I;
  for (int a = 0; a < E.n(); ++a)
    if (I[a]) s[complement(E, a)] = true;
  return s;
}

inline Outcome check_subalgebra(FiniteEffectAlgebra const& E, ElementSet const& s) {
  if (!s[E.one()]) return Outcome::refuted("1 missing");
  for (int a = 0; a < E.n(); ++a) {
    if (!s[a]) continue;
    if (!s[complement(E, a)]) return Outcome::refuted("complement of " + E.label(a) + " missing");
    for (int b = 0; b < E.n(); ++b)
      if (s[b] && E.defined(a, b) && !s[E.sum(a, b)])
        return Outcome::refuted(E.label(a) + "+" + E.label(b) + " missing");
  }
  return Outcome::proved("exhaustive");
}

struct LargestStrict {
  // Union of the strict nontrivial ideals; absent when there are none.
  std::optional<ElementSet> largest;
  // The zero ideal is always strict; reported as the weak answer.
  bool zero_is_strict = true;
};

inline LargestStrict largest_strict_ideal(FiniteEffectAlgebra const& E) {
  LargestStrict r;
  for (auto const& I : all_ideals(E)) {
    if (is_zero_ideal(E, I) || !is_proper(E, I) || !is_strict(E, I).holds()) continue;
    r.largest = r.largest ? unite(*r.largest, I) : I;
  }
  return r;
}

// ===========================================================================
// Symbolic hosts

// Ideal of an interval algebra: carrier elements satisfying `membership`.
struct SymbolicIdeal {
  Predicate membership;
  Outcome validity;
  // Coordinates forced to vanish, when membership is exactly that.
  std::optional<std::vector<std::size_t>> vanishing;

  std::string str() const { return membership.str(); }
};

inline bool contains(IntervalEffectAlgebra const& E, SymbolicIdeal const& I, Vec const& x) {
  return in_carrier(E, x) && I.membership.holds(x);
}

namespace detail {

inline std::vector<Vec> probe_points(IntervalEffectAlgebra const& E, Budget const& b) {
  auto pts = window_elements(E, b);
  auto more = sample_elements(E, b, b.samples, 11);
  pts.insert(pts.end(), more.begin(), more.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Head coordinates 0..k-1 of a lexicographic chain, when k is a factor boundary.
inline bool lex_prefix(IntervalEffectAlgebra const& E, std::vector<std::size_t> const& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != i) return false;
  return !s.empty() && E.group.cone.kind() == Cone::Kind::lex && lex_split(E.group, s.size()).has_value();
}

inline Predicate substitute_complement(Predicate const& p, Vec const& u) {
  std::vector<Predicate> ors;
  for (auto const& conj : p.dnf()) {
    std::vector<Predicate> ands;
    for (auto const& a : conj) {
      LinearAtom t{std::vector<Rat>(a.coeffs.size()), a.constant, a.rel};
      for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        t.coeffs[i] = -a.coeffs[i];
        t.constant += a.coeffs[i] * u[i];
      }
      ands.push_back(Predicate::atom(std::move(t)));
    }
    ors.push_back(ands.empty() ? Predicate::truth(u.rank()) : Predicate::all_of(std::move(ands)));
  }
  if (ors.empty()) return Predicate::any_of({});
  return ors.size() == 1 ? ors.front() : Predicate::any_of(std::move(ors));
}

}  // namespace detail

// Checks downward closure and sum closure of a membership predicate on the
// window and on samples; structural cases are proved outright.
inline Outcome validate_ideal(IntervalEffectAlgebra const& E, Predicate const& p,
                              std::optional<std::vector<std::size_t>> const& vanishing, Budget const& b) {
  if (!p.holds(E.group.zero())) return Outcome::refuted("0 is not a member");
  if (vanishing) {
    if (vanishing->empty()) return Outcome::proved("whole algebra");
    if (vanishing->size() == E.rank()) return Outcome::proved("zero ideal");
    if (E.group.cone.kind() == Cone::Kind::product) return Outcome::proved("coordinate face of a product box");
    if (detail::lex_prefix(E, *vanishing)) return Outcome::proved("lexicographic tail {0} x G+");
  }
  auto pts = detail::probe_points(E, b);
  for (auto const& y : pts) {
    if (!p.holds(y)) continue;
    for (auto const& x : pts) {
      if (leq(E, x, y) && !p.holds(x)) return Outcome::refuted(x.str() + " <= " + y.str() + " escapes the set");
      if (p.holds(x) && E.group.cone.contains(E.u() - x - y) && !p.holds(x + y))
        return Outcome::refuted(x.str() + " + " + y.str() + " escapes the set");
    }
  }
  return Outcome::witnessed("closed on " + std::to_string(pts.size()) + " probe points; " + b.str());
}

inline SymbolicIdeal zero_ideal(IntervalEffectAlgebra const& E) {
  std::vector<std::size_t> all(E.rank());
  std::iota(all.begin(), all.end(), 0);
  return {Predicate::vanishing(E.rank(), all), Outcome::proved("zero ideal"), all};
}

inline SymbolicIdeal whole_ideal(IntervalEffectAlgebra const& E) {
  return {Predicate::truth(E.rank()), Outcome::proved("whole algebra"), std::vector<std::size_t>{}};
}

inline SymbolicIdeal vanishing_ideal(IntervalEffectAlgebra const& E, std::vector<std::size_t> coords,
                                     Budget const& b = {}) {
  Predicate p = Predicate::vanishing(E.rank(), coords);
  Outcome v = validate_ideal(E, p, coords, b);
  return {std::move(p), std::move(v), std::move(coords)};
}

// Membership signature on the probe points, used to compare candidates.
inline std::vector<bool> signature(IntervalEffectAlgebra const& E, SymbolicIdeal const& I,
                                   std::vector<Vec> const& pts) {
  std::vector<bool> s;
  s.reserve(pts.size());
  for (auto const& x : pts) s.push_back(contains(E, I, x));
  return s;
}

// Generated candidate set: the trivial ideals, every coordinate-vanishing
// face, and hyperplanes with coefficients in {-1,0,1}; duplicates (same
// membership on the probe points) are dropped. Each carries its verdict.
inline std::vector<SymbolicIdeal> candidate_ideals(IntervalEffectAlgebra const& E, Budget const& b = {}) {
  std::size_t const r = E.rank();
  if (r > 8) throw Unsupported("candidate generation is limited to rank 8");
  auto pts = detail::probe_points(E, b);
  std::vector<SymbolicIdeal> out;
  std::set<std::vector<bool>> seen;
  auto offer = [&](SymbolicIdeal I) {
    if (seen.insert(signature(E, I, pts)).second) out.push_back(std::move(I));
  };
  offer(zero_ideal(E));
  offer(whole_ideal(E));
  std::vector<std::vector<std::size_t>> subsets;
  for (std::uint32_t m = 1; m + 1 < (1u << r); ++m) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < r; ++i)
      if (m & (1u << i)) s.push_back(i);
    subsets.push_back(std::move(s));
  }
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](auto const& x, auto const& y) { return x.size() < y.size(); });
  for (auto& s : subsets) offer(vanishing_ideal(E, s, b));
  std::vector<int> w(r, -1);
  for (;;) {
    int nz = 0, first = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (w[i] != 0) {
        if (nz++ == 0) first = w[i];
      }
    if (nz >= 2 && first > 0) {
      LinearAtom a{std::vector<Rat>(r), Rat(0), Rel::eq};
      for (std::size_t i = 0; i < r; ++i) a.coeffs[i] = w[i];
      Predicate p = Predicate::atom(std::move(a));
      Outcome v = validate_ideal(E, p, std::nullopt, b);
      offer({std::move(p), std::move(v), std::nullopt});
    }
    std::size_t i = 0;
    for (; i < r; ++i) {
      if (++w[i] <= 1) break;
      w[i] = -1;
    }
    if (i == r) break;
  }
  return out;
}

inline std::vector<SymbolicIdeal> symbolic_ideals(IntervalEffectAlgebra const& E, Budget const& b = {}) {
  std::vector<SymbolicIdeal> out;
  for (auto& I : candidate_ideals(E, b))
    if (I.validity.holds()) out.push_back(std::move(I));
  return out;
}

struct SymbolicIdealLattice {
  std::vector<SymbolicIdeal> ideals;  // valid candidates
  std::vector<SymbolicIdeal> maximal;
  SymbolicIdeal radical;
  Outcome basis;  // how complete the candidate set is known to be
};

inline bool is_whole(IntervalEffectAlgebra const& E, SymbolicIdeal const& I) { return contains(E, I, E.u()); }
inline bool is_zero(IntervalEffectAlgebra const& E, SymbolicIdeal const& I, std::vector<Vec> const& pts) {
  for (auto const& x : pts)
    if (!x.is_zero() && contains(E, I, x)) return false;
  return true;
}

inline SymbolicIdealLattice ideal_lattice(IntervalEffectAlgebra const& E, Budget const& b = {}) {
  SymbolicIdealLattice L;
  L.ideals = symbolic_ideals(E, b);
  auto pts = detail::probe_points(E, b);
  std::vector<std::vector<bool>> sig;
  for (auto const& I : L.ideals) sig.push_back(signature(E, I, pts));
  auto sub = [](std::vector<bool> const& x, std::vector<bool> const& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] && !y[i]) return false;
    return true;
  };
  std::vector<Predicate> meet;
  for (std::size_t i = 0; i < L.ideals.size(); ++i) {
    if (is_whole(E, L.ideals[i])) continue;
    bool top = true;
    for (std::size_t j = 0; j < L.ideals.size(); ++j)
      if (j != i && !is_whole(E, L.ideals[j]) && sig[i] != sig[j] && sub(sig[i], sig[j])) top = false;
    if (top) {
      L.maximal.push_back(L.ideals[i]);
      meet.push_back(L.ideals[i].membership);
    }
  }
  if (L.maximal.size() == 1) L.radical = L.maximal.front();
  else L.radical = {Predicate::all_of(meet), Outcome::witnessed("intersection of maximal candidates"), std::nullopt};
  L.basis = Outcome::witnessed("ideals among generated linear candidates; " + b.str());
  return L;
}

// Simple iff no nontrivial candidate survives, backed by checking that each
// sampled nonzero a lies above u/k for some k (so a generates everything).
inline Outcome is_simple(IntervalEffectAlgebra const& E, Budget const& b = {}) {
  auto pts = detail::probe_points(E, b);
  for (auto const& I : candidate_ideals(E, b))
    if (I.validity.holds() && !is_whole(E, I) && !is_zero(E, I, pts))
      return I.validity.verdict == Verdict::proved ? Outcome::refuted("nontrivial ideal " + I.str())
                                                   : Outcome::refuted("nontrivial ideal " + I.str() + " (windowed)");
  bool all_rational = E.group.all_rational();
  int generated = 0;
  for (auto const& a : pts) {
    if (a.is_zero()) continue;
    bool ok = false;
    for (int k = 1; k <= 64 && !ok; ++k) {
      if (!all_rational && k > 1) break;
      ok = leq(E, Rat(1, k) * E.u(), a);
    }
    if (!ok) return Outcome::unknown("every candidate refuted, but " + a.str() + " not shown to generate E");
    ++generated;
  }
  return Outcome::witnessed("every nontrivial candidate refuted; " + std::to_string(generated) +
                            " sampled elements each dominate some u/k; " + b.str());
}

inline bool is_local(SymbolicIdealLattice const& L) { return L.maximal.size() == 1; }

// Quotient by a coordinate-vanishing ideal {x_S = 0}: projection onto S.
struct SymbolicQuotient {
  IntervalEffectAlgebra algebra;
  std::vector<std::size_t> kept;
  Vec project(Vec const& x) const {
    Vec y(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) y[i] = x[kept[i]];
    return y;
  }
};

inline SymbolicQuotient quotient(IntervalEffectAlgebra const& E, SymbolicIdeal const& I) {
  if (!I.vanishing) throw Unsupported("quotient needs a coordinate-vanishing ideal");
  auto const& s = *I.vanishing;
  if (s.empty()) throw Unsupported("quotient by the whole algebra is degenerate");
  std::vector<Domain> ds;
  for (auto i : s) ds.push_back(E.group.domains[i]);
  Vec u(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) u[i] = E.u()[s[i]];
  if (s.size() == E.rank()) return {E, s};
  Cone c;
  if (E.group.cone.kind() == Cone::Kind::product) c = Cone::product(s.size());
  else if (detail::lex_prefix(E, s)) c = lex_split(E.group, s.size())->first.cone;
  else throw Unsupported("quotient by " + I.str() + " is not a product face or lexicographic tail");
  return {gamma(make_group(std::move(ds), std::move(c)), std::move(u)), s};
}

inline Outcome is_strict(IntervalEffectAlgebra const& E, SymbolicIdeal const& I, Budget const& b = {}) {
  if (I.vanishing && I.vanishing->size() == E.rank()) return Outcome::proved("zero ideal");
  if (I.vanishing && detail::lex_prefix(E, *I.vanishing))
    return Outcome::proved("quotient order is the leading lexicographic factor");
  SymbolicQuotient q;
  try {
    q = quotient(E, I);
  } catch (Unsupported const& e) {
    return Outcome::unknown(e.what());
  }
  auto pts = detail::probe_points(E, b);
  for (auto const& x : pts)
    for (auto const& y : pts)
      if (less(q.algebra, q.project(x), q.project(y)) && !less(E, x, y))
        return Outcome::refuted(x.str() + "/I < " + y.str() + "/I but not " + x.str() + " < " + y.str());
  return Outcome::witnessed("on " + std::to_string(pts.size()) + " probe points; " + b.str());
}

struct SymbolicRetraction {
  Outcome outcome;
  // Section t -> x with x_S = t and x_T = M t (T the other coordinates).
  std::optional<Matrix> tail_map;
  std::vector<std::size_t> head;
  std::vector<std::size_t> tail;

  Vec section(Vec const& t, std::size_t rank) const {
    Vec x(rank);
    for (std::size_t i = 0; i < head.size(); ++i) x[head[i]] = t[i];
    Vec m = effectkit::apply(*tail_map, t);
    for (std::size_t j = 0; j < tail.size(); ++j) x[tail[j]] = m[j];
    return x;
  }
};

namespace detail {

inline std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = a < 0 ? -1 : 1;
    y = 0;
    return a < 0 ? -a : a;
  }
  std::int64_t x1, y1;
  std::int64_t g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace detail

// Linear section of the quotient map. Homomorphisms out of an RDP interval
// extend to group homomorphisms, so a section exists iff M u_S = u_T has a
// solution with integral rows on integral tail coordinates (and zero columns
// on rational head coordinates).
inline SymbolicRetraction is_retractive(IntervalEffectAlgebra const& E, SymbolicIdeal const& I,
                                        Budget const& b = {}) {
  SymbolicRetraction R;
  SymbolicQuotient q;
  try {
    q = quotient(E, I);
  } catch (Unsupported const& e) {
    R.outcome = Outcome::unknown(e.what());
    return R;
  }
  R.head = q.kept;
  for (std::size_t i = 0; i < E.rank(); ++i)
    if (std::find(R.head.begin(), R.head.end(), i) == R.head.end()) R.tail.push_back(i);
  Vec const& uS = q.algebra.u();
  Matrix M = zero_matrix(R.tail.size(), R.head.size());
  for (std::size_t j = 0; j < R.tail.size(); ++j) {
    Rat target = E.u()[R.tail[j]];
    if (target.is_zero()) continue;
    bool integral = E.group.domains[R.tail[j]] == Domain::integer;
    if (integral) {
      // Combine integral head coordinates with extended gcd.
      std::int64_t g = 0;
      std::vector<std::int64_t> coef(R.head.size(), 0);
      for (std::size_t i = 0; i < R.head.size(); ++i) {
        if (q.algebra.group.domains[i] != Domain::integer || uS[i].is_zero()) continue;
        std::int64_t x, y;
        std::int64_t ng = detail::ext_gcd(g, uS[i].num(), x, y);
        for (auto& c : coef) c *= x;
        coef[i] = y;
        g = ng;
      }
      if (g == 0 || target.num() % g != 0) {
        std::string cert;
        if (R.head.size() == 1)
          cert = uS[0].str() + "·c₁ = " + E.u().str() + " unsolvable";
        else
          cert = "M·" + uS.str() + " = " + target.str() + " has no integral solution (gcd " + std::to_string(g) + ")";
        R.outcome = Outcome::refuted(cert);
        return R;
      }
      for (std::size_t i = 0; i < R.head.size(); ++i) M[j][i] = Rat(coef[i] * (target.num() / g));
    } else {
      std::size_t pick = R.head.size();
      for (std::size_t i = 0; i < R.head.size() && pick == R.head.size(); ++i)
        if (!uS[i].is_zero()) pick = i;
      if (pick == R.head.size()) {
        R.outcome = Outcome::refuted("section needs " + target.str() + " from a zero head unit");
        return R;
      }
      M[j][pick] = target / uS[pick];
    }
  }
  R.tail_map = M;
  // The section must land in the carrier and respect sums.
  auto ts = window_elements(q.algebra, b);
  for (auto const& t : ts) {
    Vec x = R.section(t, E.rank());
    if (!in_carrier(E, x)) {
      R.outcome = Outcome::unknown("candidate section sends " + t.str() + " to " + x.str() + " outside the carrier");
      return R;
    }
  }
  std::string shape = "section t -> " + R.section(uS, E.rank()).str() + " at u, tail map " + matrix_str(M);
  if (detail::lex_prefix(E, R.head) || (I.vanishing && I.vanishing->size() == E.rank()))
    R.outcome = Outcome::proved(shape);
  else
    R.outcome = Outcome::witnessed(shape + "; checked on " + std::to_string(ts.size()) + " quotient points");
  return R;
}

inline Outcome is_prime(IntervalEffectAlgebra const& E, SymbolicIdeal const& I, Budget const& b = {}) {
  if (is_whole(E, I)) return Outcome::refuted("ideal is not proper");
  SymbolicQuotient q;
  try {
    q = quotient(E, I);
  } catch (Unsupported const& e) {
    return Outcome::unknown(e.what());
  }
  Outcome a = classify_order(q.algebra, b).antilattice;
  a.detail = "quotient antilattice: " + a.detail;
  return a;
}

struct SymbolicLexVerdict {
  Outcome strict, retractive, prime, nontrivial;
  Outcome overall() const { return both(both(strict, retractive), both(prime, nontrivial)); }
  Outcome weak() const { return both(both(strict, retractive), prime); }
};

inline SymbolicLexVerdict is_lexicographic(IntervalEffectAlgebra const& E, SymbolicIdeal const& I,
                                           Budget const& b = {}) {
  SymbolicLexVerdict v;
  auto pts = detail::probe_points(E, b);
  bool trivial = is_whole(E, I) || is_zero(E, I, pts);
  v.nontrivial = trivial ? Outcome::refuted("ideal is trivial") : Outcome::proved();
  if (is_whole(E, I)) {
    v.strict = v.retractive = v.prime = Outcome::refuted("ideal is not proper");
    return v;
  }
  v.strict = is_strict(E, I, b);
  v.retractive = is_retractive(E, I, b).outcome;
  v.prime = is_prime(E, I, b);
  return v;
}

inline Outcome is_riesz(IntervalEffectAlgebra const& E, SymbolicIdeal const&, Budget const& b = {}) {
  Outcome r = check_rdp(E, b).outcome;
  if (r.holds()) return r.verdict == Verdict::proved ? Outcome::proved("host has RDP")
                                                     : Outcome::witnessed("host has RDP on the window");
  return Outcome::unknown("host RDP not established");
}

// Ideal generated by A: the least valid candidate containing A, cross-checked
// against the windowed closure of sums of elements below A.
inline std::pair<std::optional<SymbolicIdeal>, Outcome> generated_ideal(IntervalEffectAlgebra const& E,
                                                                        std::vector<Vec> const& A,
                                                                        Budget const& b = {}) {
  for (auto const& a : A) require_member(E, a);
  auto pts = window_elements(E, b);
  std::vector<bool> reach(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (auto const& a : A) reach[i] = reach[i] || leq(E, pts[i], a);
  std::vector<bool> below = reach;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!reach[i]) continue;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (!below[j]) continue;
        Vec s = pts[i] + pts[j];
        auto it = std::lower_bound(pts.begin(), pts.end(), s);
        if (it != pts.end() && *it == s && !reach[it - pts.begin()]) {
          reach[it - pts.begin()] = true;
          changed = true;
        }
      }
    }
  }
  std::optional<SymbolicIdeal> best;
  std::size_t best_count = 0;
  for (auto& I : symbolic_ideals(E, b)) {
    bool ok = true;
    for (auto const& a : A) ok = ok && I.membership.holds(a);
    if (!ok) continue;
    std::size_t c = 0;
    for (auto const& x : pts) c += I.membership.holds(x);
    if (!best || c < best_count) {
      best = I;
      best_count = c;
    }
  }
  if (!best) return {std::nullopt, Outcome::unknown("no candidate ideal contains the generators")};
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (reach[i] != best->membership.holds(pts[i]))
      return {best, Outcome::unknown("closure disagrees with " + best->str() + " at " + pts[i].str())};
  return {best, Outcome::witnessed("matches the windowed sum closure on " + std::to_string(pts.size()) +
                                   " points; " + b.str())};
}

// ⟨I⟩ = I ∪ I⁻ as a membership predicate.
inline Predicate subalgebra_of_ideal(IntervalEffectAlgebra const& E, SymbolicIdeal const& I) {
  return Predicate::any_of({I.membership, detail::substitute_complement(I.membership, E.u())});
}

struct SymbolicLargestStrict {
  std::optional<SymbolicIdeal> largest;
  bool zero_is_strict = true;
  Outcome basis;
};

inline SymbolicLargestStrict largest_strict_ideal(IntervalEffectAlgebra const& E, Budget const& b = {}) {
  SymbolicLargestStrict r;
  auto pts = detail::probe_points(E, b);
  std::size_t best = 0;
  for (auto& I : symbolic_ideals(E, b)) {
    if (is_whole(E, I) || is_zero(E, I, pts) || !is_strict(E, I, b).holds()) continue;
    std::size_t c = 0;
    for (auto const& x : pts) c += contains(E, I, x);
    if (!r.largest || c > best) {
      r.largest = I;
      best = c;
    }
  }
  r.basis = Outcome::witnessed("strict ideals among generated candidates; " + b.str());
  return r;
}

}  // namespace effectkit
