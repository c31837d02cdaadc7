#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <charconv>

namespace effectkit {

// Exact rational over 64-bit integers. Every operation is overflow checked and
// throws std::overflow_error instead of wrapping.
class Rat {
 public:
  constexpr Rat() = default;
  constexpr Rat(std::int64_t n) : num_(n) {}  // NOLINT(implicit)
  Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    normalize();
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  friend Rat operator+(Rat const& a, Rat const& b) {
    if (a.den_ == 1 && b.den_ == 1) return Rat(add(a.num_, b.num_));
    std::int64_t g = std::gcd(a.den_, b.den_);
    std::int64_t l = mul(a.den_ / g, b.den_);
    return Rat(add(mul(a.num_, l / a.den_), mul(b.num_, l / b.den_)), l);
  }
  friend Rat operator-(Rat const& a) { return Rat(neg(a.num_), a.den_, raw_tag{}); }
  friend Rat operator-(Rat const& a, Rat const& b) { return a + (-b); }
  friend Rat operator*(Rat const& a, Rat const& b) {
    if (a.den_ == 1 && b.den_ == 1) return Rat(mul(a.num_, b.num_));
    std::int64_t g1 = std::gcd(a.num_, b.den_);
    std::int64_t g2 = std::gcd(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return Rat(mul(a.num_ / g1, b.num_ / g2), mul(a.den_ / g2, b.den_ / g1));
  }
  friend Rat operator/(Rat const& a, Rat const& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return a * Rat(b.den_, b.num_);
  }
  Rat& operator+=(Rat const& o) { return *this = *this + o; }
  Rat& operator-=(Rat const& o) { return *this = *this - o; }
  Rat& operator*=(Rat const& o) { return *this = *this * o; }
  Rat& operator/=(Rat const& o) { return *this = *this / o; }

  friend bool operator==(Rat const&, Rat const&) = default;
  friend std::strong_ordering operator<=>(Rat const& a, Rat const& b) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, Rat const& r) {
    return os << r.str();
  }

  // Accepts "p", "-p", "p/q".
  static Rat parse(std::string_view s) {
    auto slash = s.find('/');
    auto read = [](std::string_view t) {
      std::int64_t v{};
      if (!t.empty() && t.front() == '+') t.remove_prefix(1);
      auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
      if (t.empty() || ec != std::errc{} || p != t.data() + t.size())
        throw std::invalid_argument("malformed rational '" + std::string(t) + "'");
      return v;
    };
    if (slash == std::string_view::npos) return Rat(read(s));
    return Rat(read(s.substr(0, slash)), read(s.substr(slash + 1)));
  }

  std::size_t hash() const {
    return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
  }

 private:
  struct raw_tag {};
  Rat(std::int64_t n, std::int64_t d, raw_tag) : num_(n), den_(d) {}

  void normalize() {
    if (den_ < 0) {
      num_ = neg(num_);
      den_ = neg(den_);
    }
    std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }
  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
    return r;
  }
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
    return r;
  }
  static std::int64_t neg(std::int64_t a) { return mul(a, -1); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rat abs(Rat const& r) { return r.sign() < 0 ? -r : r; }

}  // namespace effectkit
