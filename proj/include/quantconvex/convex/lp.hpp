#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quantconvex/convex/linalg.hpp"
#include "quantconvex/core/types.hpp"

namespace qc::convex {

// Exact two-phase tableau simplex with Bland's rule (lowest index enters,
// lowest basic index leaves on ratio ties). Pivot paths are deterministic.

enum class LPStatus { feasible, infeasible, unbounded };

/// Outcome of a standard-form program  min c.x  s.t.  A x = b, x >= 0.
struct StandardResult {
  LPStatus status = LPStatus::infeasible;
  std::vector<Scalar> x;       // optimal basic solution (feasible)
  Scalar value;                // optimal objective (feasible)
  std::vector<Scalar> duals;   // y with A^T y <= c, b.y = value (feasible)
  std::vector<Scalar> farkas;  // y with A^T y <= 0, b.y > 0 (infeasible)
  std::vector<Scalar> ray;     // d >= 0, A d = 0, c.d < 0 (unbounded)
  std::vector<std::size_t> basis;
};

namespace detail {

class Tableau {
 public:
  Tableau(const Matrix& a, const std::vector<Scalar>& b) : m_(a.size()), n_(a.empty() ? 0 : a.front().size()) {
    // Columns: n structural, then m artificials; last column is the rhs.
    t_.assign(m_, std::vector<Scalar>(n_ + m_ + 1));
    flip_.assign(m_, false);
    for (std::size_t i = 0; i < m_; ++i) {
      flip_[i] = b[i].sign() < 0;
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = flip_[i] ? -a[i][j] : a[i][j];
      t_[i][n_ + i] = Scalar(1);
      t_[i][n_ + m_] = flip_[i] ? -b[i] : b[i];
    }
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  /// Sets reduced costs for cost vector `cost` over all n+m columns.
  void price(const std::vector<Scalar>& cost) {
    cost_ = cost;
    z_.assign(n_ + m_ + 1, Scalar(0));
    for (std::size_t j = 0; j < n_ + m_; ++j) z_[j] = cost[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const Scalar& cb = cost[basis_[i]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j <= n_ + m_; ++j) {
        if (!t_[i][j].is_zero()) z_[j] -= cb * t_[i][j];
      }
    }
  }

  /// Runs Bland pivots over columns < `allowed`. Returns the entering column
  /// that proved unboundedness, or nullopt at optimality.
  std::optional<std::size_t> optimize(std::size_t allowed) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (z_[j].sign() < 0) {
          enter = j;
          break;
        }
      }
      if (!enter) return std::nullopt;
      std::optional<std::size_t> leave;
      Scalar best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][*enter].sign() <= 0) continue;
        Scalar ratio = t_[i][n_ + m_] / t_[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (!leave) return enter;
      pivot(*leave, *enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const std::size_t w = n_ + m_ + 1;
    const Scalar inv = Scalar(1) / t_[r][c];
    for (std::size_t j = 0; j < w; ++j) {
      if (!t_[r][j].is_zero()) t_[r][j] *= inv;
    }
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < w; ++j) {
      if (!t_[r][j].is_zero()) nz.push_back(j);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || t_[i][c].is_zero()) continue;
      const Scalar f = t_[i][c];
      for (auto j : nz) t_[i][j] -= f * t_[r][j];
    }
    if (!z_[c].is_zero()) {
      const Scalar f = z_[c];
      for (auto j : nz) z_[j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  /// Pivots basic artificials out where a structural column can replace them.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!t_[i][j].is_zero()) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  [[nodiscard]] Scalar objective() const { return -z_[n_ + m_]; }

  [[nodiscard]] std::vector<Scalar> primal(std::size_t count) const {
    std::vector<Scalar> x(count);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < count) x[basis_[i]] = t_[i][n_ + m_];
    }
    return x;
  }

  /// Simplex multipliers y = c_B B^{-1}, read off the artificial columns,
  /// mapped back through the row sign flips.
  [[nodiscard]] std::vector<Scalar> multipliers() const {
    std::vector<Scalar> y(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      Scalar v = cost_[n_ + i] - z_[n_ + i];
      y[i] = flip_[i] ? -v : v;
    }
    return y;
  }

  [[nodiscard]] std::vector<Scalar> ray(std::size_t enter) const {
    std::vector<Scalar> d(n_);
    d[enter] = Scalar(1);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) d[basis_[i]] = -t_[i][enter];
    }
    return d;
  }

  [[nodiscard]] const std::vector<std::size_t>& basis() const { return basis_; }
  [[nodiscard]] std::size_t rows() const { return m_; }
  [[nodiscard]] std::size_t cols() const { return n_; }

 private:
  std::size_t m_;
  std::size_t n_;
  Matrix t_;
  std::vector<Scalar> z_;
  std::vector<Scalar> cost_;
  std::vector<bool> flip_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Solves  min c.x  s.t.  A x = b, x >= 0  exactly.
inline StandardResult solve_standard(const Matrix& a, const std::vector<Scalar>& b, const std::vector<Scalar>& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  require(b.size() == m, ErrorCode::dimension, "rhs length mismatch");
  for (const auto& row : a) require(row.size() == n, ErrorCode::dimension, "constraint row length mismatch");

  StandardResult res;
  detail::Tableau tab(a, b);

  // Phase 1: minimize the sum of artificials.
  std::vector<Scalar> phase1(n + m);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = Scalar(1);
  tab.price(phase1);
  tab.optimize(n + m);
  if (tab.objective().sign() > 0) {
    res.status = LPStatus::infeasible;
    res.farkas = tab.multipliers();
    return res;
  }
  tab.drive_out_artificials();

  // Phase 2: artificial columns stay in the tableau but may not enter.
  std::vector<Scalar> phase2(n + m);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  tab.price(phase2);
  if (auto enter = tab.optimize(n)) {
    res.status = LPStatus::unbounded;
    res.ray = tab.ray(*enter);
    res.x = tab.primal(n);
    return res;
  }
  res.status = LPStatus::feasible;
  res.x = tab.primal(n);
  res.value = tab.objective();
  res.duals = tab.multipliers();
  res.basis = tab.basis();
  return res;
}

/// Result of maximizing a linear objective over a list of half-spaces.
struct LPResult {
  LPStatus status = LPStatus::infeasible;
  Point witness;                // optimal point (feasible)
  Scalar value;                 // optimal objective (feasible)
  std::vector<Scalar> duals;    // y >= 0, sum y_i a_i = objective, y.b = value (feasible)
  std::vector<Scalar> farkas;   // y >= 0, sum y_i a_i = 0, y.b < 0 (infeasible)
  Point ray;                    // a_i . ray <= 0 for all i, objective . ray > 0 (unbounded)

  [[nodiscard]] bool feasible() const { return status == LPStatus::feasible; }
};

/// maximize objective . x  subject to  a_i . x <= b_i.
inline LPResult lp_solve(std::span<const HalfSpace> constraints, const Point& objective) {
  const int d = objective.dim();
  require(d >= 1, ErrorCode::dimension, "objective needs dimension >= 1");
  for (const auto& h : constraints) require(h.dim() == d, ErrorCode::dimension, "constraint dimension mismatch");
  const std::size_t m = constraints.size();
  const auto du = static_cast<std::size_t>(d);

  // x = u - v with u, v >= 0; one slack per constraint.
  Matrix a(m, std::vector<Scalar>(2 * du + m));
  std::vector<Scalar> b(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < du; ++j) {
      a[i][j] = constraints[i].normal()[j];
      a[i][du + j] = -constraints[i].normal()[j];
    }
    a[i][2 * du + i] = Scalar(1);
    b[i] = constraints[i].offset();
  }
  std::vector<Scalar> c(2 * du + m);
  for (std::size_t j = 0; j < du; ++j) {
    c[j] = -objective[j];
    c[du + j] = objective[j];
  }

  LPResult out;
  if (m == 0) {
    if (objective.is_zero()) {
      out.status = LPStatus::feasible;
      out.witness = Point::zero(d);
      return out;
    }
    out.status = LPStatus::unbounded;
    out.ray = objective;
    return out;
  }

  const StandardResult s = solve_standard(a, b, c);
  out.status = s.status;
  auto to_point = [&](const std::vector<Scalar>& z) {
    std::vector<Scalar> x(du);
    for (std::size_t j = 0; j < du; ++j) x[j] = z[j] - z[du + j];
    return Point(std::move(x));
  };
  switch (s.status) {
    case LPStatus::feasible: {
      out.witness = to_point(s.x);
      out.value = -s.value;
      out.duals.resize(m);
      for (std::size_t i = 0; i < m; ++i) out.duals[i] = -s.duals[i];
      break;
    }
    case LPStatus::infeasible: {
      out.farkas.resize(m);
      for (std::size_t i = 0; i < m; ++i) out.farkas[i] = -s.farkas[i];
      break;
    }
    case LPStatus::unbounded: {
      out.ray = to_point(s.ray);
      out.witness = to_point(s.x);
      break;
    }
  }
  return out;
}

/// Convex-combination feasibility: weights lambda >= 0, sum 1, sum lambda_j p_j = target.
struct HullMembership {
  bool inside = false;
  std::vector<Scalar> weights;         // basic solution: at most d+1 nonzeros
  std::optional<HalfSpace> separator;  // contains every point, excludes the target
};

inline HullMembership hull_membership(std::span<const Point> points, const Point& target) {
  const int d = target.dim();
  require(!points.empty(), ErrorCode::precondition, "empty point set");
  const auto du = static_cast<std::size_t>(d);
  const std::size_t n = points.size();
  Matrix a(du + 1, std::vector<Scalar>(n));
  std::vector<Scalar> b(du + 1);
  for (std::size_t j = 0; j < n; ++j) {
    require(points[j].dim() == d, ErrorCode::dimension, "point dimension mismatch");
    for (std::size_t i = 0; i < du; ++i) a[i][j] = points[j][i];
    a[du][j] = Scalar(1);
  }
  for (std::size_t i = 0; i < du; ++i) b[i] = target[i];
  b[du] = Scalar(1);

  const StandardResult s = solve_standard(a, b, std::vector<Scalar>(n));
  HullMembership out;
  if (s.status == LPStatus::feasible) {
    out.inside = true;
    out.weights = s.x;
    return out;
  }
  // y = (w, w0):  w.p_j + w0 <= 0 for all j,  w.target + w0 > 0.
  std::vector<Scalar> w(s.farkas.begin(), s.farkas.begin() + static_cast<std::ptrdiff_t>(du));
  Point normal(std::move(w));
  if (!normal.is_zero()) out.separator = HalfSpace(normal, -s.farkas[du]);
  return out;
}

inline bool in_hull(std::span<const Point> points, const Point& target) {
  return hull_membership(points, target).inside;
}

/// Some y != 0 with a_i . y <= 0 for all i, if the recession cone is nontrivial.
inline std::optional<Point> recession_direction(std::span<const HalfSpace> hs, int d) {
  std::vector<HalfSpace> cone;
  cone.reserve(hs.size());
  for (const auto& h : hs) cone.emplace_back(h.normal(), Scalar(0));
  for (int k = 0; k < d; ++k) {
    for (int sgn : {1, -1}) {
      Point obj = Point::zero(d);
      obj[static_cast<std::size_t>(k)] = Scalar(sgn);
      const LPResult r = lp_solve(cone, obj);
      if (r.status == LPStatus::unbounded) return r.ray;
    }
  }
  return std::nullopt;
}

}  // namespace qc::convex
