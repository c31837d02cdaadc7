#pragma once

#include <array>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "effectkit/cone.hpp"
#include "effectkit/lp.hpp"
#include "effectkit/verdict.hpp"

namespace effectkit {

enum class Domain { integer, rational };

inline char domain_char(Domain d) { return d == Domain::integer ? 'Z' : 'Q'; }

// Rational-vector Abelian po-group Z^a x Q^b (per-coordinate domain) with a
// positive cone and an optional strong unit.
struct ConePoGroup {
  std::vector<Domain> domains;
  Cone cone;
  std::optional<Vec> unit;

  std::size_t rank() const { return domains.size(); }

  bool is_element(Vec const& g) const {
    if (g.rank() != rank()) return false;
    for (std::size_t i = 0; i < rank(); ++i)
      if (domains[i] == Domain::integer && !g[i].is_integer()) return false;
    return true;
  }
  void require_element(Vec const& g) const {
    if (g.rank() != rank())
      throw std::invalid_argument("rank mismatch: " + g.str() + " in a rank " +
                                  std::to_string(rank()) + " group");
    if (!is_element(g)) throw std::invalid_argument(g.str() + " has a non-integral integer coordinate");
  }
  bool all_integer() const {
    for (auto d : domains)
      if (d != Domain::integer) return false;
    return true;
  }
  bool all_rational() const {
    for (auto d : domains)
      if (d != Domain::rational) return false;
    return true;
  }
  Vec zero() const { return Vec(rank()); }

  // Literal form: DOMAINS:CONE[@u0,u1,...]
  std::string str() const {
    std::string d;
    bool uniform = true;
    for (auto x : domains)
      if (x != domains.front()) uniform = false;
    if (domains.empty()) d = "Z";
    else if (uniform) d = std::string(1, domain_char(domains.front()));
    else
      for (auto x : domains) d += domain_char(x);
    std::string s = d + ":" + cone.str();
    if (unit) {
      s += "@";
      for (std::size_t i = 0; i < unit->rank(); ++i) s += (i ? "," : "") + (*unit)[i].str();
    }
    return s;
  }

  friend bool operator==(ConePoGroup const&, ConePoGroup const&) = default;
};

inline ConePoGroup make_group(std::vector<Domain> domains, Cone cone, std::optional<Vec> unit = {}) {
  if (cone.rank() != domains.size())
    throw std::invalid_argument("cone rank " + std::to_string(cone.rank()) + " does not match " +
                                std::to_string(domains.size()) + " coordinates");
  ConePoGroup g{std::move(domains), std::move(cone), std::move(unit)};
  if (g.unit) {
    g.require_element(*g.unit);
    if (!g.cone.contains(*g.unit)) throw std::invalid_argument("unit " + g.unit->str() + " is not positive");
    if (g.unit->is_zero()) throw std::invalid_argument("unit must be nonzero");
  }
  return g;
}

inline ConePoGroup make_group(Domain d, Cone cone, std::optional<Vec> unit = {}) {
  std::vector<Domain> ds(cone.rank(), d);
  return make_group(std::move(ds), std::move(cone), std::move(unit));
}

inline std::vector<Domain> parse_domains(std::string_view s, std::size_t rank) {
  std::vector<Domain> ds;
  for (char c : s) {
    if (c == 'Z') ds.push_back(Domain::integer);
    else if (c == 'Q') ds.push_back(Domain::rational);
    else throw ParseError("domain must be Z or Q, got '" + std::string(1, c) + "'");
  }
  if (ds.size() == 1 && rank != 1) ds.assign(rank, ds.front());
  if (ds.size() != rank)
    throw ParseError("expected " + std::to_string(rank) + " domains, got " + std::to_string(ds.size()));
  return ds;
}

// Parses DOMAINS:CONE[@u0,u1,...]; the domain prefix defaults to Z.
inline ConePoGroup parse_group_literal(std::string_view text) {
  text = detail::trim(text);
  std::string_view dom = "Z";
  auto colon = text.find(':');
  auto paren = text.find('(');
  if (colon != std::string_view::npos && (paren == std::string_view::npos || colon < paren)) {
    dom = detail::trim(text.substr(0, colon));
    text = text.substr(colon + 1);
  }
  std::optional<Vec> unit;
  auto at = text.rfind('@');
  std::string_view cone_text = text;
  std::string_view unit_text;
  if (at != std::string_view::npos) {
    cone_text = text.substr(0, at);
    unit_text = text.substr(at + 1);
  }
  Cone c = parse_cone(cone_text);
  if (at != std::string_view::npos) {
    std::vector<Rat> xs;
    std::size_t b = 0;
    while (b <= unit_text.size()) {
      auto e = unit_text.find(',', b);
      if (e == std::string_view::npos) e = unit_text.size();
      try {
        xs.push_back(Rat::parse(detail::trim(unit_text.substr(b, e - b))));
      } catch (std::exception const& ex) {
        throw ParseError(std::string("bad unit: ") + ex.what());
      }
      b = e + 1;
    }
    unit = Vec(std::move(xs));
  }
  try {
    return make_group(parse_domains(dom, c.rank()), std::move(c), std::move(unit));
  } catch (std::invalid_argument const& e) {
    throw ParseError(e.what());
  }
}

inline bool cone_contains(ConePoGroup const& G, Vec const& g) {
  G.require_element(g);
  return G.cone.contains(g);
}

inline bool leq(ConePoGroup const& G, Vec const& g, Vec const& h) {
  G.require_element(g);
  G.require_element(h);
  return G.cone.contains(h - g);
}

// Strictly below: g <= h and g != h.
inline bool less(ConePoGroup const& G, Vec const& g, Vec const& h) { return g != h && leq(G, g, h); }

inline ConePoGroup lex_product(ConePoGroup const& H, ConePoGroup const& G) {
  if (!H.unit) throw std::invalid_argument("lexicographic product needs a unit on the left factor");
  std::vector<Domain> ds = H.domains;
  ds.insert(ds.end(), G.domains.begin(), G.domains.end());
  Vec u = Vec::concat(*H.unit, G.zero());
  return make_group(std::move(ds), Cone::lex(H.cone, G.cone), std::move(u));
}

// Splits a group whose cone is a lexicographic chain at coordinate k, which
// must fall on a factor boundary. Head keeps the unit prefix; the tail has no
// unit. Returns nothing when k is not a boundary.
inline std::optional<std::pair<ConePoGroup, ConePoGroup>> lex_split(ConePoGroup const& G, std::size_t k) {
  auto factors = G.cone.lex_factors();
  std::size_t acc = 0;
  std::size_t cut = 0;
  for (; cut < factors.size() && acc < k; ++cut) acc += factors[cut].rank();
  if (acc != k || k == 0) return std::nullopt;
  std::vector<Cone> head(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(cut));
  std::vector<Cone> tail(factors.begin() + static_cast<std::ptrdiff_t>(cut), factors.end());
  std::vector<Domain> hd(G.domains.begin(), G.domains.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<Domain> td(G.domains.begin() + static_cast<std::ptrdiff_t>(k), G.domains.end());
  std::optional<Vec> hu;
  if (G.unit) hu = G.unit->slice(0, k);
  ConePoGroup h{std::move(hd), Cone::lex_chain(std::move(head)), hu};
  ConePoGroup t{std::move(td), Cone::lex_chain(std::move(tail)), std::nullopt};
  return std::make_pair(std::move(h), std::move(t));
}

// ---------------------------------------------------------------------------
// Windows and sampling

// Grid values in [lo, hi]: integers, plus k/q for q <= denominator when the
// coordinate is rational.
inline std::vector<Rat> grid_values(Domain d, Rat lo, Rat hi, int denominator) {
  std::vector<Rat> out;
  int qmax = d == Domain::rational ? std::max(1, denominator) : 1;
  for (int q = 1; q <= qmax; ++q) {
    Rat a = lo * Rat(q), b = hi * Rat(q);
    std::int64_t from = a.num() / a.den();
    if (Rat(from) < a) ++from;
    std::int64_t to = b.num() / b.den();
    if (Rat(to) > b) --to;
    for (std::int64_t k = from; k <= to; ++k) {
      Rat v(k, q);
      if (v.den() == q) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// All grid points of the box [lo, hi] accepted by `keep`. Throws if the box is
// too large to enumerate.
inline std::vector<Vec> box_points(ConePoGroup const& G, Vec const& lo, Vec const& hi, int denominator,
                                   std::function<bool(Vec const&)> const& keep,
                                   std::size_t limit = 2'000'000) {
  std::vector<std::vector<Rat>> axes;
  std::size_t total = 1;
  for (std::size_t i = 0; i < G.rank(); ++i) {
    axes.push_back(grid_values(G.domains[i], lo[i], hi[i], denominator));
    total *= std::max<std::size_t>(1, axes.back().size());
    if (axes.back().empty()) return {};
    if (total > limit) throw std::length_error("window too large to enumerate");
  }
  std::vector<Vec> out;
  std::vector<std::size_t> idx(G.rank(), 0);
  Vec cur(G.rank());
  for (;;) {
    for (std::size_t i = 0; i < G.rank(); ++i) cur[i] = axes[i][idx[i]];
    if (keep(cur)) out.push_back(cur);
    std::size_t i = 0;
    for (; i < G.rank(); ++i) {
      if (++idx[i] < axes[i].size()) break;
      idx[i] = 0;
    }
    if (i == G.rank()) break;
  }
  return out;
}

inline Vec filled(std::size_t rank, Rat v) {
  Vec r(rank);
  for (std::size_t i = 0; i < rank; ++i) r[i] = v;
  return r;
}

// Deterministic random source for sampled verdicts.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) return lo;
    std::uniform_int_distribution<std::int64_t> d(lo, hi);
    return d(rng_);
  }
  Rat coord(Domain d, Rat lo, Rat hi) {
    std::int64_t q = d == Domain::rational ? integer(1, 12) : 1;
    Rat a = lo * Rat(q), b = hi * Rat(q);
    std::int64_t from = a.num() / a.den();
    if (Rat(from) < a) ++from;
    std::int64_t to = b.num() / b.den();
    if (Rat(to) > b) --to;
    if (to < from) return lo;
    return Rat(integer(from, to), q);
  }
  Vec vec(ConePoGroup const& G, Vec const& lo, Vec const& hi) {
    Vec v(G.rank());
    for (std::size_t i = 0; i < G.rank(); ++i) v[i] = coord(G.domains[i], lo[i], hi[i]);
    return v;
  }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(n) - 1)); }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Structural properties

inline Outcome check_cone_axioms(ConePoGroup const& G, Budget const& b = {}) {
  if (G.cone.kind() != Cone::Kind::custom) return Outcome::proved("structural cone");
  if (!G.cone.contains(G.zero())) return Outcome::refuted("0 is not in the cone");
  Vec lo = filled(G.rank(), Rat(-b.window)), hi = filled(G.rank(), Rat(b.window));
  auto pos = box_points(G, lo, hi, b.denominator, [&](Vec const& v) { return G.cone.contains(v); });
  Sampler s(b.seed);
  for (int i = 0; i < b.samples; ++i) {
    Vec v = s.vec(G, lo, hi);
    if (G.cone.contains(v)) pos.push_back(v);
  }
  for (auto const& p : pos)
    if (!p.is_zero() && G.cone.contains(-p)) return Outcome::refuted(p.str() + " and its negative are both positive");
  for (int i = 0; i < b.samples * 4 && !pos.empty(); ++i) {
    Vec const& x = pos[s.index(pos.size())];
    Vec const& y = pos[s.index(pos.size())];
    if (!G.cone.contains(x + y)) return Outcome::refuted(x.str() + " + " + y.str() + " leaves the cone");
  }
  return Outcome::witnessed(b.str());
}

inline Outcome strong_unit(ConePoGroup const& G, Budget const& b = {}) {
  if (!G.unit) return Outcome::refuted("no unit");
  std::function<Outcome(Cone const&, Vec const&)> structural = [&](Cone const& c, Vec const& u) -> Outcome {
    switch (c.kind()) {
      case Cone::Kind::product:
        for (std::size_t i = 0; i < u.rank(); ++i)
          if (u[i].sign() <= 0) return Outcome::refuted("unit coordinate " + std::to_string(i) + " is not positive");
        return Outcome::proved("product cone with positive unit");
      case Cone::Kind::lex: {
        Vec l = u.slice(0, c.left().rank());
        if (l.is_zero()) return Outcome::refuted("unit vanishes on the leading lexicographic factor");
        return structural(c.left(), l);
      }
      case Cone::Kind::custom: return Outcome::unknown();
    }
    return Outcome::unknown();
  };
  Outcome o = structural(G.cone, *G.unit);
  if (o.verdict != Verdict::unknown) return o;
  Sampler s(b.seed);
  Vec lo = filled(G.rank(), Rat(-b.window)), hi = filled(G.rank(), Rat(b.window));
  int const nmax = 64 * std::max(1, b.window);
  for (int i = 0; i < b.samples; ++i) {
    Vec g = s.vec(G, lo, hi);
    bool found = false;
    for (int n = 0; n <= nmax && !found; ++n) found = G.cone.contains(Rat(n) * *G.unit - g);
    if (!found) return Outcome::unknown("no n <= " + std::to_string(nmax) + " with " + g.str() + " <= n*u");
  }
  return Outcome::witnessed("unverified for custom cone; sampled " + b.str());
}

inline Outcome is_directed(ConePoGroup const& G, Budget const& b = {}) {
  std::function<bool(Cone const&)> structural = [&](Cone const& c) {
    switch (c.kind()) {
      case Cone::Kind::product: return true;
      case Cone::Kind::lex: return c.left().rank() > 0 && structural(c.left());
      case Cone::Kind::custom: return false;
    }
    return false;
  };
  if (structural(G.cone)) return Outcome::proved("product or lexicographic over a directed leading factor");
  Sampler s(b.seed);
  Vec lo = filled(G.rank(), Rat(-b.window)), hi = filled(G.rank(), Rat(b.window));
  Vec step = G.unit ? *G.unit : filled(G.rank(), Rat(1));
  for (int i = 0; i < b.samples; ++i) {
    Vec x = s.vec(G, lo, hi), y = s.vec(G, lo, hi);
    Vec m(G.rank());
    for (std::size_t k = 0; k < G.rank(); ++k) m[k] = std::max(x[k], y[k]);
    bool found = false;
    for (int k = 0; k <= 4 * b.window && !found; ++k) {
      Vec z = m + Rat(k) * step;
      found = G.cone.contains(z - x) && G.cone.contains(z - y);
    }
    if (!found) return Outcome::unknown("no upper bound found for " + x.str() + ", " + y.str());
  }
  return Outcome::witnessed("upper bounds found for sampled pairs; " + b.str());
}

// ---------------------------------------------------------------------------
// Riesz decomposition

using Quadruple = std::array<Vec, 4>;

enum class RefinementSearch { found, none_exact, none_in_window };

struct RefinementResult {
  RefinementSearch status = RefinementSearch::none_exact;
  Quadruple matrix;  // c11, c12, c21, c22
};

namespace detail {

// Cone membership of s*c + d for all four refinement entries, as one LP per
// choice of disjuncts. Returns a rational c11 when any choice is feasible.
inline std::optional<Vec> refinement_lp(ConePoGroup const& G, Vec const& a1, Vec const& a2, Vec const& b1) {
  std::size_t const r = G.rank();
  Dnf const d = G.cone.dnf(false);
  std::array<std::pair<int, Vec>, 4> shifts{{{1, G.zero()}, {-1, a1}, {-1, b1}, {1, a2 - b1}}};
  std::array<std::size_t, 4> pick{0, 0, 0, 0};
  for (;;) {
    // Variables: p (r), q (r), eps. c11 = p - q.
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> rhs;
    bool strict = false;
    auto row = [&](LinearAtom const& a, int s, Vec const& shift, bool flip, bool with_eps) {
      std::vector<Rat> rr(2 * r + 1);
      Rat k = flip ? Rat(1) : Rat(-1);
      for (std::size_t i = 0; i < r; ++i) {
        Rat w = a.coeffs[i] * Rat(s) * k;
        rr[i] = w;
        rr[r + i] = -w;
      }
      if (with_eps) rr[2 * r] = 1;
      Rat c = a.constant;
      for (std::size_t i = 0; i < r; ++i) c += a.coeffs[i] * shift[i];
      A.push_back(std::move(rr));
      rhs.push_back(flip ? -c : c);
    };
    for (std::size_t e = 0; e < 4; ++e) {
      for (auto const& a : d[pick[e]]) {
        auto const& [s, shift] = shifts[e];
        switch (a.rel) {
          case Rel::ge: row(a, s, shift, false, false); break;
          case Rel::gt: row(a, s, shift, false, true); strict = true; break;
          case Rel::eq:
            row(a, s, shift, false, false);
            row(a, s, shift, true, false);
            break;
        }
      }
    }
    std::vector<Rat> cap(2 * r + 1);
    cap[2 * r] = 1;
    A.push_back(cap);
    rhs.push_back(Rat(1));
    std::vector<Rat> obj(2 * r + 1);
    obj[2 * r] = 1;
    auto res = lp::maximize(A, rhs, obj);
    if (res.status == lp::Status::optimal && (!strict || res.value.sign() > 0)) {
      Vec c(r);
      for (std::size_t i = 0; i < r; ++i) c[i] = res.x[i] - res.x[r + i];
      return c;
    }
    std::size_t k = 0;
    for (; k < 4; ++k) {
      if (++pick[k] < d.size()) break;
      pick[k] = 0;
    }
    if (k == 4) return std::nullopt;
  }
}

// Bounding box of the order interval {c : 0 <= c <= a} from its rational
// relaxation (strict inequalities closed). Nothing when the relaxation is
// unbounded in some direction.
inline std::optional<std::pair<Vec, Vec>> interval_bounds(ConePoGroup const& G, Vec const& a) {
  std::size_t const r = G.rank();
  Dnf const d = G.cone.dnf(false);
  std::optional<Vec> lo, hi;
  for (auto const& low : d)
    for (auto const& high : d) {
      // Variables p, q >= 0 with c = p - q.
      std::vector<std::vector<Rat>> A;
      std::vector<Rat> rhs;
      auto add = [&](LinearAtom const& t, int sign, Rat bound) {
        std::vector<Rat> row(2 * r);
        for (std::size_t i = 0; i < r; ++i) {
          row[i] = t.coeffs[i] * Rat(sign);
          row[r + i] = -row[i];
        }
        A.push_back(std::move(row));
        rhs.push_back(bound);
      };
      for (auto const& t : low) {  // t(c) >= 0
        add(t, -1, t.constant);
        if (t.rel == Rel::eq) add(t, 1, -t.constant);
      }
      for (auto const& t : high) {  // t(a - c) >= 0
        Rat ta = t.eval(a.coords());
        add(t, 1, ta);
        if (t.rel == Rel::eq) add(t, -1, -ta);
      }
      if (!lp::feasible_point(A, rhs, 2 * r)) continue;
      Vec l(r), h(r);
      for (std::size_t k = 0; k < r; ++k)
        for (int sign : {1, -1}) {
          std::vector<Rat> obj(2 * r);
          obj[k] = Rat(sign);
          obj[r + k] = Rat(-sign);
          auto res = lp::maximize(A, rhs, obj);
          if (res.status == lp::Status::unbounded) return std::nullopt;
          if (res.status != lp::Status::optimal) continue;
          (sign > 0 ? h : l)[k] = sign > 0 ? res.value : -res.value;
        }
      if (!lo) {
        lo = l;
        hi = h;
      } else {
        for (std::size_t k = 0; k < r; ++k) {
          (*lo)[k] = std::min((*lo)[k], l[k]);
          (*hi)[k] = std::max((*hi)[k], h[k]);
        }
      }
    }
  if (!lo) return std::nullopt;
  return std::make_pair(*lo, *hi);
}

}  // namespace detail

// Searches c11..c22 >= 0 with a1 = c11 + c12, a2 = c21 + c22, b1 = c11 + c21,
// b2 = c12 + c22. Non-existence is exact over Q, and exact over Z when the
// interval [0, a1] is bounded; otherwise it is relative to the search window.
inline RefinementResult find_refinement(ConePoGroup const& G, Vec const& a1, Vec const& a2, Vec const& b1,
                                        Vec const& b2, Budget const& b = {}) {
  auto attempt = [&](Vec const& c11) -> std::optional<Quadruple> {
    if (!G.is_element(c11)) return std::nullopt;
    Quadruple q{c11, a1 - c11, b1 - c11, a2 - b1 + c11};
    for (auto const& x : q)
      if (!G.cone.contains(x)) return std::nullopt;
    if (q[1] + q[3] != b2) return std::nullopt;
    return q;
  };
  std::vector<Vec> quick{G.zero(), a1, b1};
  Vec m(G.rank());
  for (std::size_t i = 0; i < G.rank(); ++i) m[i] = std::min(a1[i], b1[i]);
  quick.push_back(m);
  for (auto const& c : quick)
    if (auto q = attempt(c)) return {RefinementSearch::found, *q};

  auto rational = detail::refinement_lp(G, a1, a2, b1);
  if (!rational) return {RefinementSearch::none_exact, {}};
  if (auto q = attempt(*rational)) return {RefinementSearch::found, *q};

  if (G.cone.kind() == Cone::Kind::product) {
    Vec lo(G.rank()), hi(G.rank());
    for (std::size_t i = 0; i < G.rank(); ++i) {
      lo[i] = std::max(Rat(0), b1[i] - a2[i]);
      hi[i] = std::min(a1[i], b1[i]);
    }
    std::optional<Quadruple> hit;
    box_points(G, lo, hi, 1, [&](Vec const& c) {
      if (!hit) hit = attempt(c);
      return false;
    });
    if (hit) return {RefinementSearch::found, *hit};
    return {RefinementSearch::none_exact, {}};
  }
  std::optional<Quadruple> hit;
  if (G.all_integer()) {
    // c11 lies in [0, a1]; when that interval is bounded the scan is exact.
    if (auto box = detail::interval_bounds(G, a1)) {
      try {
        box_points(G, box->first, box->second, 1, [&](Vec const& c) {
          if (!hit) hit = attempt(c);
          return false;
        });
        if (hit) return {RefinementSearch::found, *hit};
        return {RefinementSearch::none_exact, {}};
      } catch (std::length_error const&) {
      }
    }
  }
  Vec lo = *rational - filled(G.rank(), Rat(b.window)), hi = *rational + filled(G.rank(), Rat(b.window));
  box_points(G, lo, hi, 1, [&](Vec const& c) {
    if (!hit) hit = attempt(c);
    return false;
  });
  if (hit) return {RefinementSearch::found, *hit};
  return {RefinementSearch::none_in_window, {}};
}

struct RdpResult {
  Outcome outcome;
  std::optional<Quadruple> counterexample;  // a1, a2, b1, b2
  std::size_t tested = 0;
};

// Runs the refinement search over quadruples drawn from `points`, keeping
// only those accepted by `admissible`. Exhaustive when the candidate space is
// small, otherwise seeded random selection up to the quadruple budget.
inline RdpResult rdp_search(ConePoGroup const& G, std::vector<Vec> const& points,
                            std::function<bool(Vec const&, Vec const&)> const& sum_ok,
                            std::function<bool(Vec const&)> const& member, Budget const& b) {
  RdpResult res;
  bool window_only = false;
  auto test = [&](Vec const& a1, Vec const& a2, Vec const& b1) -> bool {
    Vec b2 = a1 + a2 - b1;
    if (!member(b2) || !G.cone.contains(b2)) return true;
    ++res.tested;
    auto r = find_refinement(G, a1, a2, b1, b2, b);
    if (r.status == RefinementSearch::found) return true;
    if (r.status == RefinementSearch::none_in_window) window_only = true;
    res.counterexample = Quadruple{a1, a2, b1, b2};
    return false;
  };
  std::size_t n = points.size();
  bool exhaustive = n * n * n <= 200000;
  bool ok = true;
  if (exhaustive) {
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (!sum_ok(points[i], points[j])) continue;
        Vec s = points[i] + points[j];
        for (std::size_t k = 0; k < n && ok; ++k)
          if (G.cone.contains(s - points[k])) ok = test(points[i], points[j], points[k]);
      }
  } else if (n > 0) {
    Sampler smp(b.seed);
    for (int t = 0; t < b.quadruples * 20 && ok && res.tested < static_cast<std::size_t>(b.quadruples); ++t) {
      Vec const& a1 = points[smp.index(n)];
      Vec const& a2 = points[smp.index(n)];
      if (!sum_ok(a1, a2)) continue;
      Vec s = a1 + a2;
      Vec const& b1 = points[smp.index(n)];
      if (!G.cone.contains(s - b1)) continue;
      ok = test(a1, a2, b1);
    }
  }
  std::string scope = (exhaustive ? "exhaustive over " : "sampled from ") + std::to_string(n) +
                      " window points, " + std::to_string(res.tested) + " quadruples; " + b.str();
  if (!ok) {
    auto const& q = *res.counterexample;
    std::string w = q[0].str() + " + " + q[1].str() + " = " + q[2].str() + " + " + q[3].str() + " has no refinement";
    res.outcome = window_only ? Outcome::unknown(w + " inside the search window")
                              : Outcome::refuted(w);
    return res;
  }
  res.outcome = Outcome::witnessed(scope);
  return res;
}

inline RdpResult check_rdp_cone(ConePoGroup const& G, Budget const& b = {}) {
  std::function<bool(Cone const&)> structural = [&](Cone const& c) {
    if (c.linear()) return true;
    return c.kind() == Cone::Kind::lex && c.left().linear() && structural(c.right());
  };
  if (structural(G.cone)) return {Outcome::proved("linear, or lexicographic over a linear factor with RDP"), {}, 0};
  Vec lo = filled(G.rank(), Rat(-b.window)), hi = filled(G.rank(), Rat(b.window));
  auto pos = box_points(G, lo, hi, b.denominator, [&](Vec const& v) { return G.cone.contains(v); });
  if (pos.size() > 400) {
    Vec lo0 = G.zero();
    pos = box_points(G, lo0, hi, b.denominator, [&](Vec const& v) { return G.cone.contains(v); });
  }
  return rdp_search(G, pos, [](Vec const&, Vec const&) { return true; }, [](Vec const&) { return true; }, b);
}

}  // namespace effectkit
