#pragma once

#include <initializer_list>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "effectkit/rational.hpp"

namespace effectkit {

// Element of a rational vector group. Rank is fixed at construction.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t rank) : c_(rank) {}
  Vec(std::initializer_list<Rat> xs) : c_(xs) {}
  explicit Vec(std::vector<Rat> xs) : c_(std::move(xs)) {}

  std::size_t rank() const { return c_.size(); }
  Rat const& operator[](std::size_t i) const { return c_[i]; }
  Rat& operator[](std::size_t i) { return c_[i]; }
  std::span<Rat const> coords() const { return c_; }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }

  bool is_zero() const {
    for (auto const& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }

  // Coordinates [from, from+len).
  Vec slice(std::size_t from, std::size_t len) const {
    return Vec(std::vector<Rat>(c_.begin() + from, c_.begin() + from + len));
  }
  static Vec concat(Vec const& a, Vec const& b) {
    std::vector<Rat> r(a.c_);
    r.insert(r.end(), b.c_.begin(), b.c_.end());
    return Vec(std::move(r));
  }

  friend Vec operator+(Vec const& a, Vec const& b) {
    check(a, b);
    Vec r(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
  }
  friend Vec operator-(Vec const& a, Vec const& b) {
    check(a, b);
    Vec r(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
  }
  friend Vec operator-(Vec const& a) {
    Vec r(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) r.c_[i] = -a.c_[i];
    return r;
  }
  friend Vec operator*(Rat const& k, Vec const& a) {
    Vec r(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) r.c_[i] = k * a.c_[i];
    return r;
  }
  friend bool operator==(Vec const&, Vec const&) = default;
  // Storage order only; not the group order.
  friend auto operator<=>(Vec const& a, Vec const& b) { return a.c_ <=> b.c_; }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ",";
      s += c_[i].str();
    }
    return s + ")";
  }
  friend std::ostream& operator<<(std::ostream& os, Vec const& v) { return os << v.str(); }

 private:
  static void check(Vec const& a, Vec const& b) {
    if (a.rank() != b.rank())
      throw std::invalid_argument("rank mismatch: " + a.str() + " vs " + b.str());
  }
  std::vector<Rat> c_;
};

struct VecHash {
  std::size_t operator()(Vec const& v) const {
    std::size_t h = v.rank();
    for (auto const& x : v) h = h * 31 + x.hash();
    return h;
  }
};

}  // namespace effectkit
