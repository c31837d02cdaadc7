#pragma once

#include <numeric>
#include <vector>

#include "effectkit/vec.hpp"

namespace effectkit {

// Row-major rational matrix; each row is a Vec of the column count.
using Matrix = std::vector<Vec>;

inline Matrix zero_matrix(std::size_t rows, std::size_t cols) { return Matrix(rows, Vec(cols)); }

inline Matrix identity_matrix(std::size_t n) {
  Matrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline std::size_t columns(Matrix const& m, std::size_t fallback = 0) { return m.empty() ? fallback : m.front().rank(); }

inline Vec apply(Matrix const& m, Vec const& x) {
  Vec y(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].rank() != x.rank()) throw std::invalid_argument("matrix column count does not match vector rank");
    Rat s;
    for (std::size_t j = 0; j < x.rank(); ++j) s += m[i][j] * x[j];
    y[i] = s;
  }
  return y;
}

inline std::string matrix_str(Matrix const& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "; " : "") + m[i].str();
  return s + "]";
}

// Rank over Q by Gaussian elimination.
inline std::size_t rank_of(Matrix m) {
  std::size_t rows = m.size(), cols = columns(m), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rat f = m[i][c] / m[r][c];
      m[i] = m[i] - f * m[r];
    }
    ++r;
  }
  return r;
}

inline Rat determinant(Matrix m) {
  std::size_t n = m.size();
  Rat det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      Rat f = m[i][c] / m[c][c];
      m[i] = m[i] - f * m[c];
    }
  }
  return det;
}

// gcd of all maximal (rows x rows) minors of an integer matrix with at least
// as many columns as rows; 0 when the rank is deficient.
inline std::int64_t maximal_minor_gcd(Matrix const& m) {
  std::size_t rows = m.size(), cols = columns(m);
  if (rows > cols) return 0;
  std::int64_t g = 0;
  std::vector<std::size_t> pick(rows);
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    Matrix sub = zero_matrix(rows, rows);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < rows; ++j) sub[i][j] = m[i][pick[j]];
    Rat d = determinant(sub);
    if (!d.is_integer()) throw std::invalid_argument("matrix is not integral");
    g = std::gcd(g, d.num() < 0 ? -d.num() : d.num());
    std::size_t k = rows;
    while (k > 0 && pick[k - 1] == cols - rows + k - 1) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < rows; ++j) pick[j] = pick[j - 1] + 1;
  }
  return g;
}

}  // namespace effectkit
