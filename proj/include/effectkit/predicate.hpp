#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "effectkit/errors.hpp"
#include "effectkit/vec.hpp"

namespace effectkit {

enum class Rel { gt, ge, eq };

// sum_i coeffs[i] * x_i + constant  REL  0
struct LinearAtom {
  std::vector<Rat> coeffs;
  Rat constant;
  Rel rel = Rel::ge;

  Rat eval(std::span<Rat const> x) const {
    Rat s = constant;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (!coeffs[i].is_zero()) s += coeffs[i] * x[i];
    return s;
  }
  bool holds(std::span<Rat const> x) const {
    Rat v = eval(x);
    switch (rel) {
      case Rel::gt: return v.sign() > 0;
      case Rel::ge: return v.sign() >= 0;
      case Rel::eq: return v.is_zero();
    }
    return false;
  }
  bool homogeneous() const { return constant.is_zero(); }
  friend bool operator==(LinearAtom const&, LinearAtom const&) = default;
};

// Boolean combination of linear atoms over a fixed number of coordinates.
class Predicate {
 public:
  enum class Kind { truth, atom, all_of, any_of };

  Predicate() = default;
  static Predicate truth(std::size_t rank) {
    Predicate p;
    p.rank_ = rank;
    return p;
  }
  static Predicate atom(LinearAtom a) {
    Predicate p;
    p.kind_ = Kind::atom;
    p.rank_ = a.coeffs.size();
    p.atom_ = std::move(a);
    return p;
  }
  static Predicate all_of(std::vector<Predicate> ps) { return combine(Kind::all_of, std::move(ps)); }
  static Predicate any_of(std::vector<Predicate> ps) { return combine(Kind::any_of, std::move(ps)); }

  // x_i = 0 for every i in coords.
  static Predicate vanishing(std::size_t rank, std::vector<std::size_t> const& coords) {
    std::vector<Predicate> ps;
    for (auto i : coords) {
      LinearAtom a{std::vector<Rat>(rank), Rat(0), Rel::eq};
      a.coeffs[i] = 1;
      ps.push_back(atom(std::move(a)));
    }
    if (ps.empty()) return truth(rank);
    if (ps.size() == 1) return ps.front();
    return all_of(std::move(ps));
  }

  Kind kind() const { return kind_; }
  std::size_t rank() const { return rank_; }
  LinearAtom const& the_atom() const { return atom_; }
  std::vector<Predicate> const& children() const { return kids_; }

  bool holds(std::span<Rat const> x) const {
    switch (kind_) {
      case Kind::truth: return true;
      case Kind::atom: return atom_.holds(x);
      case Kind::all_of:
        for (auto const& k : kids_)
          if (!k.holds(x)) return false;
        return true;
      case Kind::any_of:
        for (auto const& k : kids_)
          if (k.holds(x)) return true;
        return false;
    }
    return false;
  }
  bool holds(Vec const& v) const { return holds(v.coords()); }

  bool homogeneous() const {
    if (kind_ == Kind::atom) return atom_.homogeneous();
    for (auto const& k : kids_)
      if (!k.homogeneous()) return false;
    return true;
  }

  // Disjunctive normal form: each inner vector is a conjunction of atoms.
  std::vector<std::vector<LinearAtom>> dnf() const {
    switch (kind_) {
      case Kind::truth: return {{}};
      case Kind::atom: return {{atom_}};
      case Kind::any_of: {
        std::vector<std::vector<LinearAtom>> r;
        for (auto const& k : kids_)
          for (auto& c : k.dnf()) r.push_back(std::move(c));
        return r;
      }
      case Kind::all_of: {
        std::vector<std::vector<LinearAtom>> r{{}};
        for (auto const& k : kids_) {
          std::vector<std::vector<LinearAtom>> next;
          for (auto const& left : r)
            for (auto const& right : k.dnf()) {
              auto c = left;
              c.insert(c.end(), right.begin(), right.end());
              next.push_back(std::move(c));
            }
          r = std::move(next);
        }
        return r;
      }
    }
    return {};
  }

  std::string str() const { return str_prec(0); }

  friend bool operator==(Predicate const& a, Predicate const& b) {
    return a.kind_ == b.kind_ && a.rank_ == b.rank_ && a.atom_ == b.atom_ && a.kids_ == b.kids_;
  }

 private:
  static Predicate combine(Kind k, std::vector<Predicate> ps) {
    if (ps.empty()) throw std::invalid_argument("empty predicate combination");
    Predicate p;
    p.kind_ = k;
    p.rank_ = ps.front().rank_;
    for (auto const& q : ps)
      if (q.rank_ != p.rank_) throw std::invalid_argument("predicate rank mismatch");
    p.kids_ = std::move(ps);
    return p;
  }

  std::string str_prec(int prec) const {
    switch (kind_) {
      case Kind::truth: return "true";
      case Kind::atom: return atom_str(atom_);
      case Kind::all_of: {
        std::string s;
        for (std::size_t i = 0; i < kids_.size(); ++i) s += (i ? " & " : "") + kids_[i].str_prec(2);
        return prec > 1 ? "(" + s + ")" : s;
      }
      case Kind::any_of: {
        std::string s;
        for (std::size_t i = 0; i < kids_.size(); ++i) s += (i ? " | " : "") + kids_[i].str_prec(1);
        return prec > 0 ? "(" + s + ")" : s;
      }
    }
    return {};
  }

  static std::string atom_str(LinearAtom const& a) {
    std::string s;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
      Rat c = a.coeffs[i];
      if (c.is_zero()) continue;
      bool neg = c.sign() < 0;
      Rat m = neg ? -c : c;
      if (s.empty())
        s += neg ? "-" : "";
      else
        s += neg ? " - " : " + ";
      if (m != Rat(1)) s += m.str() + "*";
      s += "x" + std::to_string(i);
    }
    if (!a.constant.is_zero() || s.empty()) {
      bool neg = a.constant.sign() < 0;
      Rat m = neg ? -a.constant : a.constant;
      if (s.empty())
        s = (neg ? "-" : "") + m.str();
      else
        s += (neg ? " - " : " + ") + m.str();
    }
    switch (a.rel) {
      case Rel::gt: return s + " > 0";
      case Rel::ge: return s + " >= 0";
      case Rel::eq: return s + " = 0";
    }
    return s;
  }

  Kind kind_ = Kind::truth;
  std::size_t rank_ = 0;
  LinearAtom atom_;
  std::vector<Predicate> kids_;
};

namespace detail {

// Recursive-descent parser for the inequality language:
//   pred := conj ('|' conj)*     conj := unit ('&' unit)*
//   unit := '(' pred ')' | 'true' | lin REL lin
//   lin  := ['-'] term (('+'|'-') term)*   term := [rat '*'] 'x'N | rat
class PredicateParser {
 public:
  PredicateParser(std::string_view text, std::size_t rank, int line = 0, int col0 = 0)
      : s_(text), rank_(rank), line_(line), col0_(col0) {}

  Predicate parse() {
    auto p = disj();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(std::string const& m) const {
    throw ParseError(m, line_, line_ ? col0_ + static_cast<int>(pos_) + 1 : 0);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(std::string_view t) {
    skip();
    if (s_.substr(pos_, t.size()) == t) {
      pos_ += t.size();
      return true;
    }
    return false;
  }

  Predicate disj() {
    std::vector<Predicate> ps{conj()};
    while (eat("|")) ps.push_back(conj());
    return ps.size() == 1 ? ps.front() : Predicate::any_of(std::move(ps));
  }
  Predicate conj() {
    std::vector<Predicate> ps{unit()};
    while (eat("&")) ps.push_back(unit());
    return ps.size() == 1 ? ps.front() : Predicate::all_of(std::move(ps));
  }
  Predicate unit() {
    if (eat("(")) {
      auto p = disj();
      if (!eat(")")) fail("expected ')'");
      return p;
    }
    if (eat("true")) return Predicate::truth(rank_);
    LinearAtom lhs = linear();
    Rel rel;
    bool flip = false;
    if (eat(">=")) rel = Rel::ge;
    else if (eat("<=")) rel = Rel::ge, flip = true;
    else if (eat(">")) rel = Rel::gt;
    else if (eat("<")) rel = Rel::gt, flip = true;
    else if (eat("=")) rel = Rel::eq;
    else fail("expected relation (>, >=, =, <, <=)");
    LinearAtom rhs = linear();
    LinearAtom a{std::vector<Rat>(rank_), Rat(0), rel};
    Rat sgn = flip ? Rat(-1) : Rat(1);
    for (std::size_t i = 0; i < rank_; ++i) a.coeffs[i] = sgn * (lhs.coeffs[i] - rhs.coeffs[i]);
    a.constant = sgn * (lhs.constant - rhs.constant);
    return Predicate::atom(std::move(a));
  }

  LinearAtom linear() {
    LinearAtom a{std::vector<Rat>(rank_), Rat(0), Rel::ge};
    Rat sign = 1;
    if (eat("-")) sign = -1;
    else eat("+");
    term(a, sign);
    for (;;) {
      if (eat("+")) term(a, Rat(1));
      else if (eat("-")) term(a, Rat(-1));
      else break;
    }
    return a;
  }

  void term(LinearAtom& a, Rat sign) {
    skip();
    Rat k = 1;
    bool have_number = false;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t b = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
      try {
        k = Rat::parse(s_.substr(b, pos_ - b));
      } catch (std::exception const&) {
        pos_ = b;
        fail("malformed number");
      }
      have_number = true;
      if (!eat("*")) {
        a.constant += sign * k;
        return;
      }
      skip();
    }
    if (pos_ < s_.size() && s_[pos_] == 'x') {
      ++pos_;
      std::size_t b = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (b == pos_) fail("expected coordinate index after 'x'");
      std::size_t idx = std::stoul(std::string(s_.substr(b, pos_ - b)));
      if (idx >= rank_) {
        pos_ = b;
        fail("coordinate x" + std::to_string(idx) + " out of range for rank " + std::to_string(rank_));
      }
      a.coeffs[idx] += sign * k;
      return;
    }
    fail(have_number ? "expected coordinate after '*'" : "expected term");
  }

  std::string_view s_;
  std::size_t rank_;
  int line_;
  int col0_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Predicate parse_predicate(std::string_view text, std::size_t rank, int line = 0, int col = 0) {
  return detail::PredicateParser(text, rank, line, col).parse();
}

}  // namespace effectkit
