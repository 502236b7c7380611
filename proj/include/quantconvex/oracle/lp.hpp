#pragma once

// Verification-side linear programming. Deliberately separate from
// quantconvex/convex: a dense two-phase tableau simplex with Bland's rule.

#include <cstddef>
#include <optional>
#include <vector>

#include "quantconvex/core/scalar.hpp"
#include "quantconvex/core/types.hpp"

namespace qc::oracle::lp {

using Rows = std::vector<std::vector<Scalar>>;

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  std::vector<Scalar> x;
  Scalar value;
};

namespace detail {

struct Tableau {
  Rows t;                         // m rows, ncols columns
  std::vector<Scalar> rhs;
  std::vector<std::size_t> basis;  // basic column per row

  void pivot(std::size_t r, std::size_t c) {
    const Scalar p = t[r][c];
    for (auto& v : t[r]) v /= p;
    rhs[r] /= p;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == r || t[i][c].is_zero()) continue;
      const Scalar f = t[i][c];
      for (std::size_t j = 0; j < t[i].size(); ++j) {
        if (!t[r][j].is_zero()) t[i][j] -= f * t[r][j];
      }
      rhs[i] -= f * rhs[r];
    }
    basis[r] = c;
  }

  /// Minimizes cost over columns [0, usable); false if unbounded.
  bool run(const std::vector<Scalar>& cost, std::size_t usable) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < usable && !enter; ++j) {
        Scalar r = cost[j];
        for (std::size_t i = 0; i < t.size(); ++i) r -= cost[basis[i]] * t[i][j];
        if (r.sign() < 0) enter = j;
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Scalar best;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i][*enter].sign() <= 0) continue;
        const Scalar q = rhs[i] / t[i][*enter];
        if (!leave || q < best || (q == best && basis[i] < basis[*leave])) {
          leave = i;
          best = q;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }
};

}  // namespace detail

/// min c.x  s.t.  A x = b, x >= 0.
inline Result minimize(const Rows& a, const std::vector<Scalar>& b, const std::vector<Scalar>& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  detail::Tableau tab;
  tab.t.assign(m, std::vector<Scalar>(n + m));
  tab.rhs = b;
  tab.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i].sign() < 0;
    for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = flip ? -a[i][j] : a[i][j];
    if (flip) tab.rhs[i] = -b[i];
    tab.t[i][n + i] = Scalar(1);
    tab.basis[i] = n + i;
  }
  std::vector<Scalar> phase1(n + m);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = Scalar(1);
  tab.run(phase1, n + m);
  Scalar infeas;
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] >= n) infeas += tab.rhs[i];
  }
  Result out;
  if (infeas.sign() > 0) return out;
  // Drive artificials out; rows that cannot pivot are redundant and dropped.
  for (std::size_t i = 0; i < tab.t.size();) {
    if (tab.basis[i] < n) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n && !col; ++j) {
      if (!tab.t[i][j].is_zero()) col = j;
    }
    if (col) {
      tab.pivot(i, *col);
      ++i;
    } else {
      tab.t.erase(tab.t.begin() + static_cast<std::ptrdiff_t>(i));
      tab.rhs.erase(tab.rhs.begin() + static_cast<std::ptrdiff_t>(i));
      tab.basis.erase(tab.basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  std::vector<Scalar> cost(n + m);
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j];
  if (!tab.run(cost, n)) {
    out.status = Status::unbounded;
    return out;
  }
  out.status = Status::optimal;
  out.x.assign(n, Scalar(0));
  for (std::size_t i = 0; i < tab.t.size(); ++i) out.x[tab.basis[i]] = tab.rhs[i];
  for (std::size_t j = 0; j < n; ++j) out.value += c[j] * out.x[j];
  return out;
}

/// max obj.x over free x in R^d with  a_i.x <= b_i.
inline Result maximize(const std::vector<HalfSpace>& hs, const std::vector<Scalar>& obj) {
  const std::size_t d = obj.size();
  const std::size_t m = hs.size();
  // x = u - v, slack s: [A -A I] (u, v, s) = b.
  Rows a(m, std::vector<Scalar>(2 * d + m));
  std::vector<Scalar> b(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      a[i][k] = hs[i].normal()[k];
      a[i][d + k] = -hs[i].normal()[k];
    }
    a[i][2 * d + i] = Scalar(1);
    b[i] = hs[i].offset();
  }
  std::vector<Scalar> c(2 * d + m);
  for (std::size_t k = 0; k < d; ++k) {
    c[k] = -obj[k];
    c[d + k] = obj[k];
  }
  Result r = minimize(a, b, c);
  if (r.status != Status::optimal) return r;
  std::vector<Scalar> x(d);
  for (std::size_t k = 0; k < d; ++k) x[k] = r.x[k] - r.x[d + k];
  r.x = std::move(x);
  r.value = -r.value;
  return r;
}

/// Some lambda >= 0 with sum 1 and sum lambda_j p_j = target, or nullopt.
inline std::optional<std::vector<Scalar>> convex_weights(const std::vector<Point>& pts, const Point& target) {
  const auto d = static_cast<std::size_t>(target.dim());
  Rows a(d + 1, std::vector<Scalar>(pts.size()));
  std::vector<Scalar> b(d + 1);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    for (std::size_t k = 0; k < d; ++k) a[k][j] = pts[j][k];
    a[d][j] = Scalar(1);
  }
  for (std::size_t k = 0; k < d; ++k) b[k] = target[k];
  b[d] = Scalar(1);
  const Result r = minimize(a, b, std::vector<Scalar>(pts.size()));
  if (r.status != Status::optimal) return std::nullopt;
  return r.x;
}

/// A point lying in every conv(groups[k]), or nullopt.
inline std::optional<Point> common_point(const std::vector<std::vector<Point>>& groups) {
  const auto d = static_cast<std::size_t>(groups.front().front().dim());
  std::size_t vars = 0;
  for (const auto& g : groups) vars += g.size();
  // Variables: lambda per group point, then the common point x = u - v.
  const std::size_t cols = vars + 2 * d;
  Rows a;
  std::vector<Scalar> b;
  std::size_t off = 0;
  for (const auto& g : groups) {
    std::vector<Scalar> sum(cols);
    for (std::size_t j = 0; j < g.size(); ++j) sum[off + j] = Scalar(1);
    a.push_back(std::move(sum));
    b.emplace_back(1);
    for (std::size_t k = 0; k < d; ++k) {
      std::vector<Scalar> row(cols);
      for (std::size_t j = 0; j < g.size(); ++j) row[off + j] = g[j][k];
      row[vars + k] = Scalar(-1);
      row[vars + d + k] = Scalar(1);
      a.push_back(std::move(row));
      b.emplace_back(0);
    }
    off += g.size();
  }
  const Result r = minimize(a, b, std::vector<Scalar>(cols));
  if (r.status != Status::optimal) return std::nullopt;
  std::vector<Scalar> x(d);
  for (std::size_t k = 0; k < d; ++k) x[k] = r.x[vars + k] - r.x[vars + d + k];
  return Point(std::move(x));
}

}  // namespace qc::oracle::lp
