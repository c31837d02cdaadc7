#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "effectkit/verdict.hpp"

namespace effectkit {

// Subset of a finite carrier, indexed by element.
using ElementSet = std::vector<bool>;

inline ElementSet empty_set(std::size_t n) { return ElementSet(n, false); }
inline ElementSet full_set(std::size_t n) { return ElementSet(n, true); }

inline std::size_t count(ElementSet const& s) {
  std::size_t k = 0;
  for (bool b : s) k += b;
  return k;
}
inline bool subset_of(ElementSet const& a, ElementSet const& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}
inline ElementSet intersect(ElementSet a, ElementSet const& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] && b[i];
  return a;
}
inline ElementSet unite(ElementSet a, ElementSet const& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] || b[i];
  return a;
}

// Effect algebra on indices 0..n-1 given by its partial addition table.
class FiniteEffectAlgebra {
 public:
  static constexpr int undefined = -1;

  FiniteEffectAlgebra() = default;
  FiniteEffectAlgebra(std::vector<std::string> labels, std::vector<std::vector<int>> table, int zero, int one)
      : labels_(std::move(labels)), table_(std::move(table)), zero_(zero), one_(one) {
    int n = static_cast<int>(labels_.size());
    if (n == 0) throw std::invalid_argument("empty carrier");
    if (table_.size() != labels_.size()) throw std::invalid_argument("table has wrong row count");
    for (auto const& row : table_) {
      if (row.size() != labels_.size()) throw std::invalid_argument("table has wrong column count");
      for (int v : row)
        if (v < undefined || v >= n) throw std::invalid_argument("table entry out of range: " + std::to_string(v));
    }
    if (zero_ < 0 || zero_ >= n || one_ < 0 || one_ >= n) throw std::invalid_argument("zero or one out of range");
    le_.assign(labels_.size(), std::vector<int>(labels_.size(), undefined));
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c)
        if (int b = table_[a][c]; b != undefined && le_[a][b] == undefined) le_[a][b] = c;
  }

  std::size_t size() const { return labels_.size(); }
  int n() const { return static_cast<int>(labels_.size()); }
  int zero() const { return zero_; }
  int one() const { return one_; }
  std::string const& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }
  std::vector<std::string> const& labels() const { return labels_; }
  std::vector<std::vector<int>> const& table() const { return table_; }

  std::optional<int> index_of(std::string_view l) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == l) return static_cast<int>(i);
    return std::nullopt;
  }

  int sum(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  bool defined(int a, int b) const { return sum(a, b) != undefined; }

  // a <= b iff a + c = b for some c.
  bool leq(int a, int b) const { return witness(a, b) != undefined; }
  bool less(int a, int b) const { return a != b && leq(a, b); }
  bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }

  // The c with a + c = b, or undefined.
  int witness(int a, int b) const { return le_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }

  std::string set_str(ElementSet const& s) const {
    std::string r = "{";
    bool first = true;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i]) {
        r += (first ? "" : ", ") + labels_[i];
        first = false;
      }
    return r + "}";
  }

  friend bool operator==(FiniteEffectAlgebra const& a, FiniteEffectAlgebra const& b) {
    return a.labels_ == b.labels_ && a.table_ == b.table_ && a.zero_ == b.zero_ && a.one_ == b.one_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> table_;
  int zero_ = 0;
  int one_ = 0;
  std::vector<std::vector<int>> le_;
};

// Checks commutativity, associativity, unique complements, the zero-one law,
// neutrality of the designated zero, cancellativity and positivity.
inline Outcome verify_axioms(FiniteEffectAlgebra const& E) {
  int const n = E.n();
  auto L = [&](int i) { return E.label(i); };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (E.sum(a, b) != E.sum(b, a))
        return Outcome::refuted("axiom (i): " + L(a) + "+" + L(b) + " and " + L(b) + "+" + L(a) + " differ");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int ab = E.sum(a, b), bc = E.sum(b, c);
        bool left = ab != E.undefined && E.sum(ab, c) != E.undefined;
        bool right = bc != E.undefined && E.sum(a, bc) != E.undefined;
        if (left != right || (left && E.sum(ab, c) != E.sum(a, bc)))
          return Outcome::refuted("axiom (ii): (" + L(a) + "+" + L(b) + ")+" + L(c) + " vs " + L(a) + "+(" + L(b) +
                                  "+" + L(c) + ")");
      }
  for (int a = 0; a < n; ++a) {
    int k = 0;
    for (int b = 0; b < n; ++b) k += E.sum(a, b) == E.one();
    if (k != 1)
      return Outcome::refuted("axiom (iii): " + L(a) + " has " + std::to_string(k) + " complements");
  }
  for (int a = 0; a < n; ++a)
    if (E.defined(a, E.one()) && a != E.zero())
      return Outcome::refuted("axiom (iv): " + L(a) + "+" + L(E.one()) + " is defined");
  for (int a = 0; a < n; ++a)
    if (E.sum(a, E.zero()) != a) return Outcome::refuted("zero law: " + L(a) + "+" + L(E.zero()) + " is not " + L(a));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (a != b && E.defined(a, c) && E.sum(a, c) == E.sum(b, c))
          return Outcome::refuted("cancellativity: " + L(a) + "+" + L(c) + " = " + L(b) + "+" + L(c));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (E.sum(a, b) == E.zero() && (a != E.zero() || b != E.zero()))
        return Outcome::refuted("positivity: " + L(a) + "+" + L(b) + " = " + L(E.zero()));
  return Outcome::proved("exhaustive over " + std::to_string(n) + " elements");
}

// b - a; requires a <= b.
inline int minus(FiniteEffectAlgebra const& E, int b, int a) {
  int c = E.witness(a, b);
  if (c == E.undefined) throw std::invalid_argument(E.label(a) + " is not below " + E.label(b));
  return c;
}

inline int complement(FiniteEffectAlgebra const& E, int a) { return minus(E, E.one(), a); }

// ---------------------------------------------------------------------------
// Riesz decomposition

using IndexQuad = std::array<int, 4>;

// c11, c12, c21, c22 with a1 = c11+c12, a2 = c21+c22, b1 = c11+c21, b2 = c12+c22.
inline std::optional<IndexQuad> find_refinement(FiniteEffectAlgebra const& E, int a1, int a2, int b1, int b2) {
  for (int c11 = 0; c11 < E.n(); ++c11) {
    int c12 = E.witness(c11, a1), c21 = E.witness(c11, b1);
    if (c12 == E.undefined || c21 == E.undefined) continue;
    int c22 = E.witness(c21, a2);
    if (c22 == E.undefined) continue;
    if (E.sum(c12, c22) == b2) return IndexQuad{c11, c12, c21, c22};
  }
  return std::nullopt;
}

struct FiniteRdp {
  Outcome outcome;
  std::optional<IndexQuad> counterexample;  // a1, a2, b1, b2
};

inline FiniteRdp check_rdp(FiniteEffectAlgebra const& E) {
  int const n = E.n();
  for (int a1 = 0; a1 < n; ++a1)
    for (int a2 = 0; a2 < n; ++a2) {
      int s = E.sum(a1, a2);
      if (s == E.undefined) continue;
      for (int b1 = 0; b1 < n; ++b1) {
        int b2 = E.witness(b1, s);
        if (b2 == E.undefined) continue;
        if (!find_refinement(E, a1, a2, b1, b2)) {
          auto L = [&](int i) { return E.label(i); };
          return {Outcome::refuted(L(a1) + "+" + L(a2) + " = " + L(b1) + "+" + L(b2) + " has no refinement"),
                  IndexQuad{a1, a2, b1, b2}};
        }
      }
    }
  return {Outcome::proved("exhaustive over " + std::to_string(n) + " elements"), std::nullopt};
}

// ---------------------------------------------------------------------------
// Order structure

inline std::optional<int> meet(FiniteEffectAlgebra const& E, int a, int b) {
  for (int m = 0; m < E.n(); ++m) {
    if (!E.leq(m, a) || !E.leq(m, b)) continue;
    bool greatest = true;
    for (int l = 0; l < E.n() && greatest; ++l)
      if (E.leq(l, a) && E.leq(l, b) && !E.leq(l, m)) greatest = false;
    if (greatest) return m;
  }
  return std::nullopt;
}

inline std::optional<int> join(FiniteEffectAlgebra const& E, int a, int b) {
  for (int m = 0; m < E.n(); ++m) {
    if (!E.leq(a, m) || !E.leq(b, m)) continue;
    bool least = true;
    for (int l = 0; l < E.n() && least; ++l)
      if (E.leq(a, l) && E.leq(b, l) && !E.leq(m, l)) least = false;
    if (least) return m;
  }
  return std::nullopt;
}

struct OrderClass {
  bool lattice = true;
  bool antilattice = true;
  bool linear = true;
  bool mv = false;
  std::optional<std::pair<int, int>> lattice_witness;      // pair lacking a meet or join
  std::optional<std::pair<int, int>> antilattice_witness;  // incomparable pair with a meet or join
  std::vector<std::vector<int>> mv_table;                  // a (+) b when mv
};

inline OrderClass classify_order(FiniteEffectAlgebra const& E) {
  OrderClass c;
  for (int a = 0; a < E.n(); ++a)
    for (int b = a + 1; b < E.n(); ++b) {
      bool cmp = E.comparable(a, b);
      bool bounded = meet(E, a, b).has_value() && join(E, a, b).has_value();
      bool some = meet(E, a, b).has_value() || join(E, a, b).has_value();
      if (!cmp) c.linear = false;
      if (!bounded && c.lattice) {
        c.lattice = false;
        c.lattice_witness = std::make_pair(a, b);
      }
      if (!cmp && some && c.antilattice) {
        c.antilattice = false;
        c.antilattice_witness = std::make_pair(a, b);
      }
    }
  if (c.lattice && check_rdp(E).outcome.holds()) {
    c.mv = true;
    c.mv_table.assign(E.size(), std::vector<int>(E.size(), 0));
    for (int a = 0; a < E.n(); ++a)
      for (int b = 0; b < E.n(); ++b) c.mv_table[a][b] = E.sum(a, *meet(E, complement(E, a), b));
  }
  return c;
}

// Commutative monoid with neutral 0, x** = x, x (+) 1 = 1, 1 = 0*, and
// x (+) (x (+) y*)* = y (+) (y (+) x*)*.
inline Outcome check_mv_axioms(FiniteEffectAlgebra const& E, std::vector<std::vector<int>> const& op) {
  int const n = E.n(), z = E.zero(), o = E.one();
  auto neg = [&](int x) { return complement(E, x); };
  for (int x = 0; x < n; ++x) {
    if (op[x][z] != x) return Outcome::refuted("0 is not neutral for " + E.label(x));
    if (neg(neg(x)) != x) return Outcome::refuted("double complement fails at " + E.label(x));
    if (op[x][o] != o) return Outcome::refuted("x (+) 1 != 1 at " + E.label(x));
    for (int y = 0; y < n; ++y) {
      if (op[x][y] != op[y][x]) return Outcome::refuted("(+) not commutative");
      for (int w = 0; w < n; ++w)
        if (op[op[x][y]][w] != op[x][op[y][w]]) return Outcome::refuted("(+) not associative");
      if (op[x][neg(op[x][neg(y)])] != op[y][neg(op[y][neg(x)])])
        return Outcome::refuted("Lukasiewicz identity fails at " + E.label(x) + ", " + E.label(y));
    }
  }
  if (neg(z) != o) return Outcome::refuted("0* != 1");
  return Outcome::proved("exhaustive");
}

// n-fold sum of a, or undefined.
inline int multiple(FiniteEffectAlgebra const& E, int a, int times) {
  int acc = E.zero();
  for (int k = 0; k < times && acc != E.undefined; ++k) acc = E.sum(acc, a);
  return acc;
}

inline ElementSet infinitesimals(FiniteEffectAlgebra const& E) {
  ElementSet s = empty_set(E.size());
  for (int a = 0; a < E.n(); ++a) {
    // A nonzero a strictly increases each step, so n steps settle it.
    s[a] = a == E.zero() || multiple(E, a, E.n() + 1) != E.undefined;
  }
  return s;
}

inline Outcome is_archimedean(FiniteEffectAlgebra const& E) {
  auto inf = infinitesimals(E);
  for (int a = 0; a < E.n(); ++a)
    if (inf[a] && a != E.zero()) return Outcome::refuted(E.label(a) + " is infinitesimal");
  return Outcome::proved("exhaustive");
}

}  // namespace effectkit
