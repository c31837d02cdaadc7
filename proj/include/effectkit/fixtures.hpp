#pragma once

#include <string>
#include <vector>

#include "effectkit/document.hpp"
#include "effectkit/finite.hpp"
#include "effectkit/interval.hpp"

// Built-in copies of the bundled fixture files.
namespace effectkit::fixtures {

inline FiniteEffectAlgebra chain(int n) {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> t(n + 1, std::vector<int>(n + 1, FiniteEffectAlgebra::undefined));
  for (int i = 0; i <= n; ++i) {
    labels.push_back(std::to_string(i));
    for (int j = 0; i + j <= n; ++j) t[i][j] = i + j;
  }
  return FiniteEffectAlgebra(std::move(labels), std::move(t), 0, n);
}

namespace detail {

// Labels 0 a b 1 with the given extra sums among a and b.
inline FiniteEffectAlgebra four(int aa, int ab, int bb) {
  int const U = FiniteEffectAlgebra::undefined;
  std::vector<std::vector<int>> t{{0, 1, 2, 3}, {1, aa, ab, U}, {2, ab, bb, U}, {3, U, U, U}};
  return FiniteEffectAlgebra({"0", "a", "b", "1"}, std::move(t), 0, 3);
}

}  // namespace detail

inline FiniteEffectAlgebra boolean4() {
  int const U = FiniteEffectAlgebra::undefined;
  return detail::four(U, 3, U);
}

inline FiniteEffectAlgebra halves4() {
  int const U = FiniteEffectAlgebra::undefined;
  return detail::four(3, U, 3);
}

inline IntervalEffectAlgebra g22() { return gamma(parse_group_literal("Z:product(2)@2,2")); }

inline IntervalEffectAlgebra with_split(IntervalEffectAlgebra E, std::size_t k) {
  E.split = k;
  return E;
}

inline IntervalEffectAlgebra lex1() { return with_split(gamma(parse_group_literal("Z:lex(product(1), product(1))@1,0")), 1); }
inline IntervalEffectAlgebra lex21() { return with_split(gamma(parse_group_literal("Z:lex(product(1), product(1))@2,1")), 1); }
inline IntervalEffectAlgebra lex3() {
  return with_split(gamma(parse_group_literal("Z:lex(product(1), lex(product(1), product(1)))@1,0,0")), 1);
}
inline IntervalEffectAlgebra square() { return gamma(parse_group_literal("Q:product(2)@1,1")); }
inline IntervalEffectAlgebra open_quadrant() {
  return gamma(parse_group_literal("Q:custom(2: x0 = 0 & x1 = 0 | x0 > 0 & x1 > 0)@1,1"));
}

struct Named {
  std::string name;
  AlgebraDocument doc;
};

inline std::vector<Named> all() {
  std::vector<Named> out;
  for (int n = 1; n <= 4; ++n) out.push_back({"C" + std::to_string(n), {"C" + std::to_string(n), chain(n)}});
  out.push_back({"B4", {"B4", boolean4()}});
  out.push_back({"HS4", {"HS4", halves4()}});
  out.push_back({"G22", {"G22", g22()}});
  out.push_back({"LEX1", {"LEX1", lex1()}});
  out.push_back({"LEX21", {"LEX21", lex21()}});
  out.push_back({"LEX3", {"LEX3", lex3()}});
  out.push_back({"SQ", {"SQ", square()}});
  out.push_back({"K61", {"K61", open_quadrant()}});
  return out;
}

// Finite carriers: table fixtures plus enumerable intervals.
inline std::vector<std::pair<std::string, FiniteEffectAlgebra>> finite() {
  std::vector<std::pair<std::string, FiniteEffectAlgebra>> out;
  for (auto const& f : all()) {
    if (f.doc.is_table()) out.push_back({f.name, f.doc.table()});
    else if (f.doc.interval().enumerable) out.push_back({f.name, enumerate(f.doc.interval())});
  }
  return out;
}

}  // namespace effectkit::fixtures
