#pragma once

#include <optional>
#include <vector>

#include "effectkit/rational.hpp"

namespace effectkit::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Rat value;
  std::vector<Rat> x;
};

// Exact two-phase simplex with Bland's rule.
//   maximize c.x  subject to  A x <= b,  x >= 0.
// Phase one uses a single auxiliary variable subtracted from every row.
inline Result maximize(std::vector<std::vector<Rat>> const& A, std::vector<Rat> const& b,
                       std::vector<Rat> const& c) {
  std::size_t const m = A.size();
  std::size_t const n = c.size();
  std::size_t const aux = n + m;
  std::size_t const cols = n + m + 1;

  std::vector<std::vector<Rat>> T(m, std::vector<Rat>(cols + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1;
    T[i][aux] = -1;
    T[i][cols] = b[i];
    basis[i] = n + i;
  }

  auto pivot = [&](std::size_t r, std::size_t e) {
    Rat p = T[r][e];
    for (auto& v : T[r]) v /= p;
    for (std::size_t i = 0; i < T.size(); ++i) {
      if (i == r || T[i][e].is_zero()) continue;
      Rat f = T[i][e];
      for (std::size_t j = 0; j <= cols; ++j)
        if (!T[r][j].is_zero()) T[i][j] -= f * T[r][j];
    }
    basis[r] = e;
  };

  // Runs simplex for objective `obj` over allowed columns; false if unbounded.
  auto run = [&](std::vector<Rat> const& obj, std::vector<bool> const& allowed) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < cols && !enter; ++j) {
        if (!allowed[j]) continue;
        Rat r = obj[j];
        for (std::size_t i = 0; i < T.size(); ++i)
          if (!obj[basis[i]].is_zero() && !T[i][j].is_zero()) r -= obj[basis[i]] * T[i][j];
        if (r.sign() > 0) enter = j;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rat best;
      for (std::size_t i = 0; i < T.size(); ++i) {
        if (T[i][*enter].sign() <= 0) continue;
        Rat ratio = T[i][cols] / T[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  };

  std::vector<bool> allowed(cols, true);

  // Phase one.
  std::optional<std::size_t> worst;
  for (std::size_t i = 0; i < m; ++i)
    if (T[i][cols].sign() < 0 && (!worst || T[i][cols] < T[*worst][cols])) worst = i;
  if (worst) {
    pivot(*worst, aux);
    std::vector<Rat> obj(cols);
    obj[aux] = -1;
    run(obj, allowed);
    for (std::size_t i = 0; i < T.size(); ++i)
      if (basis[i] == aux && T[i][cols].sign() != 0) return {Status::infeasible, {}, {}};
    for (std::size_t i = 0; i < T.size(); ++i) {
      if (basis[i] != aux) continue;
      std::optional<std::size_t> e;
      for (std::size_t j = 0; j < aux && !e; ++j)
        if (!T[i][j].is_zero()) e = j;
      if (e) {
        pivot(i, *e);
      } else {
        T.erase(T.begin() + static_cast<std::ptrdiff_t>(i));
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
        --i;
      }
    }
  }
  allowed[aux] = false;

  // Phase two.
  std::vector<Rat> obj(cols);
  for (std::size_t j = 0; j < n; ++j) obj[j] = c[j];
  if (!run(obj, allowed)) return {Status::unbounded, {}, {}};

  Result res{Status::optimal, Rat(0), std::vector<Rat>(n)};
  for (std::size_t i = 0; i < T.size(); ++i)
    if (basis[i] < n) res.x[basis[i]] = T[i][cols];
  for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
  return res;
}

// Feasibility of {A x <= b, x >= 0}; returns a point when feasible.
inline std::optional<std::vector<Rat>> feasible_point(std::vector<std::vector<Rat>> const& A,
                                                      std::vector<Rat> const& b, std::size_t n) {
  auto r = maximize(A, b, std::vector<Rat>(n));
  if (r.status == Status::infeasible) return std::nullopt;
  return r.x;
}

}  // namespace effectkit::lp
