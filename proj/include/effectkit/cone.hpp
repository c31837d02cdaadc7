#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "effectkit/predicate.hpp"

namespace effectkit {

using Dnf = std::vector<std::vector<LinearAtom>>;

// Positive cone of a rational vector group.
//   product(n)      coordinatewise x_i >= 0
//   lex(L, R)       left block strictly positive in L, or zero with right in R
//   custom(n: P)    membership given by a homogeneous predicate P
class Cone {
 public:
  enum class Kind { product, lex, custom };

  Cone() = default;
  static Cone product(std::size_t rank) {
    Cone c;
    c.kind_ = Kind::product;
    c.rank_ = rank;
    return c;
  }
  static Cone lex(Cone left, Cone right) {
    Cone c;
    c.kind_ = Kind::lex;
    c.rank_ = left.rank_ + right.rank_;
    c.left_ = std::make_shared<Cone const>(std::move(left));
    c.right_ = std::make_shared<Cone const>(std::move(right));
    return c;
  }
  static Cone custom(Predicate p) {
    if (!p.homogeneous()) throw std::invalid_argument("cone predicate must be homogeneous");
    Cone c;
    c.kind_ = Kind::custom;
    c.rank_ = p.rank();
    c.pred_ = std::move(p);
    return c;
  }
  // Right-nested lexicographic product of the given factors.
  static Cone lex_chain(std::vector<Cone> factors) {
    if (factors.empty()) return product(0);
    Cone acc = factors.back();
    for (auto it = factors.rbegin() + 1; it != factors.rend(); ++it) acc = lex(*it, acc);
    return acc;
  }

  Kind kind() const { return kind_; }
  std::size_t rank() const { return rank_; }
  Cone const& left() const { return *left_; }
  Cone const& right() const { return *right_; }
  Predicate const& predicate() const { return pred_; }

  bool contains(std::span<Rat const> x) const {
    switch (kind_) {
      case Kind::product:
        for (auto const& v : x)
          if (v.sign() < 0) return false;
        return true;
      case Kind::lex: {
        auto l = x.first(left_->rank_);
        bool lzero = true;
        for (auto const& v : l)
          if (!v.is_zero()) lzero = false;
        if (!lzero) return left_->contains(l);
        return right_->contains(x.subspan(left_->rank_));
      }
      case Kind::custom: return pred_.holds(x);
    }
    return false;
  }
  bool contains(Vec const& v) const { return contains(v.coords()); }

  // Flattened lexicographic factors; a non-lex cone is its own single factor.
  std::vector<Cone> lex_factors() const {
    if (kind_ != Kind::lex) return {*this};
    auto l = left_->lex_factors();
    auto r = right_->lex_factors();
    l.insert(l.end(), r.begin(), r.end());
    return l;
  }

  // True when the order is provably linear from structure alone.
  bool linear() const {
    switch (kind_) {
      case Kind::product: return rank_ <= 1;
      case Kind::lex: return left_->linear() && right_->linear();
      case Kind::custom: return false;
    }
    return false;
  }

  // Membership as a disjunction of conjunctions of atoms. With nonzero set,
  // describes the cone minus the origin.
  Dnf dnf(bool nonzero = false) const {
    switch (kind_) {
      case Kind::product: {
        std::vector<LinearAtom> base;
        for (std::size_t i = 0; i < rank_; ++i) base.push_back(unit_atom(i, Rel::ge));
        if (!nonzero) return {base};
        Dnf r;
        for (std::size_t j = 0; j < rank_; ++j) {
          auto c = base;
          c.push_back(unit_atom(j, Rel::gt));
          r.push_back(std::move(c));
        }
        return r;
      }
      case Kind::lex: {
        std::size_t p = left_->rank_;
        Dnf r;
        for (auto const& c : left_->dnf(true)) r.push_back(lift(c, 0));
        std::vector<LinearAtom> lzero;
        for (std::size_t i = 0; i < p; ++i) lzero.push_back(unit_atom(i, Rel::eq));
        for (auto const& c : right_->dnf(nonzero)) {
          auto conj = lift(lzero, 0);
          auto rc = lift(c, p);
          conj.insert(conj.end(), rc.begin(), rc.end());
          r.push_back(std::move(conj));
        }
        return r;
      }
      case Kind::custom: {
        Dnf base = pred_.dnf();
        if (!nonzero) return base;
        Dnf r;
        for (auto const& c : base)
          for (std::size_t i = 0; i < rank_; ++i)
            for (int s : {1, -1}) {
              auto conj = c;
              LinearAtom a = unit_atom(i, Rel::gt);
              a.coeffs[i] = s;
              conj.push_back(std::move(a));
              r.push_back(std::move(conj));
            }
        return r;
      }
    }
    return {};
  }

  std::string str() const {
    switch (kind_) {
      case Kind::product: return "product(" + std::to_string(rank_) + ")";
      case Kind::lex: return "lex(" + left_->str() + ", " + right_->str() + ")";
      case Kind::custom: return "custom(" + std::to_string(rank_) + ": " + pred_.str() + ")";
    }
    return {};
  }

  friend bool operator==(Cone const& a, Cone const& b) {
    if (a.kind_ != b.kind_ || a.rank_ != b.rank_) return false;
    switch (a.kind_) {
      case Kind::product: return true;
      case Kind::lex: return *a.left_ == *b.left_ && *a.right_ == *b.right_;
      case Kind::custom: return a.pred_ == b.pred_;
    }
    return false;
  }

 private:
  LinearAtom unit_atom(std::size_t i, Rel rel) const {
    LinearAtom a{std::vector<Rat>(rank_), Rat(0), rel};
    a.coeffs[i] = 1;
    return a;
  }
  std::vector<LinearAtom> lift(std::vector<LinearAtom> const& conj, std::size_t offset) const {
    std::vector<LinearAtom> r;
    for (auto const& a : conj) {
      LinearAtom b{std::vector<Rat>(rank_), a.constant, a.rel};
      for (std::size_t i = 0; i < a.coeffs.size(); ++i) b.coeffs[offset + i] = a.coeffs[i];
      r.push_back(std::move(b));
    }
    return r;
  }

  Kind kind_ = Kind::product;
  std::size_t rank_ = 0;
  std::shared_ptr<Cone const> left_, right_;
  Predicate pred_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

class ConeParser {
 public:
  ConeParser(std::string_view s, int line, int col0) : s_(s), line_(line), col0_(col0) {}

  Cone parse() {
    Cone c = cone();
    skip();
    if (pos_ != s_.size()) fail("trailing text after cone expression");
    return c;
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
  void expect(std::string_view t) {
    if (!eat(t)) fail("expected '" + std::string(t) + "'");
  }
  std::size_t number() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (b == pos_) fail("expected rank");
    return std::stoul(std::string(s_.substr(b, pos_ - b)));
  }

  Cone cone() {
    if (eat("product")) {
      expect("(");
      auto n = number();
      expect(")");
      return Cone::product(n);
    }
    if (eat("lex")) {
      expect("(");
      Cone l = cone();
      expect(",");
      Cone r = cone();
      expect(")");
      return Cone::lex(std::move(l), std::move(r));
    }
    if (eat("custom")) {
      expect("(");
      auto n = number();
      expect(":");
      std::size_t b = pos_;
      int depth = 1;
      while (pos_ < s_.size() && depth > 0) {
        if (s_[pos_] == '(') ++depth;
        if (s_[pos_] == ')') --depth;
        if (depth > 0) ++pos_;
      }
      if (depth != 0) fail("unterminated custom cone");
      auto p = parse_predicate(s_.substr(b, pos_ - b), n, line_, line_ ? col0_ + static_cast<int>(b) : 0);
      ++pos_;
      try {
        return Cone::custom(std::move(p));
      } catch (std::invalid_argument const& e) {
        fail(e.what());
      }
    }
    fail("expected product(..), lex(..) or custom(..)");
  }

  std::string_view s_;
  int line_;
  int col0_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Cone parse_cone(std::string_view text, int line = 0, int col = 0) {
  return detail::ConeParser(text, line, col).parse();
}

}  // namespace effectkit
