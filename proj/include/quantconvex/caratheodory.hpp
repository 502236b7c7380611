#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quantconvex/convex/linalg.hpp"
#include "quantconvex/convex/lp.hpp"
#include "quantconvex/convex/ops.hpp"
#include "quantconvex/core/types.hpp"

namespace qc {

/// A subset of a point list together with convex weights reproducing a target.
struct Support {
  std::vector<std::size_t> indices;  // into the source list, ascending
  std::vector<Point> points;
  std::vector<Scalar> weights;       // positive, summing to one
};

/// One point per color class plus convex weights; `anchor_weight` is the
/// coefficient of the extra anchor point in the very colorful variant.
struct RainbowSelection {
  std::vector<std::size_t> choice;  // choice[i] indexes class i
  std::vector<Point> points;
  std::vector<Scalar> weights;      // weights[i] belongs to points[i]
  Scalar anchor_weight;
  std::size_t pivots = 0;
};

namespace detail {

/// Drops points from a convex representation until the support is affinely
/// independent; the represented point is unchanged.
inline void eliminate_affine_dependence(std::vector<std::size_t>& ids, std::vector<Point>& pts,
                                        std::vector<Scalar>& w) {
  for (;;) {
    for (std::size_t i = 0; i < w.size();) {
      if (w[i].is_zero()) {
        ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(i));
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        ++i;
      }
    }
    if (pts.size() <= 1) return;
    const auto d = static_cast<std::size_t>(pts.front().dim());
    convex::Matrix m(d + 1, std::vector<Scalar>(pts.size()));
    for (std::size_t j = 0; j < pts.size(); ++j) {
      for (std::size_t k = 0; k < d; ++k) m[k][j] = pts[j][k];
      m[d][j] = Scalar(1);
    }
    const auto null = convex::nullspace(m, pts.size());
    if (null.empty()) return;
    auto mu = null.front();
    if (std::none_of(mu.begin(), mu.end(), [](const Scalar& s) { return s.sign() > 0; })) {
      for (auto& x : mu) x = -x;
    }
    std::optional<Scalar> t;
    for (std::size_t j = 0; j < mu.size(); ++j) {
      if (mu[j].sign() <= 0) continue;
      Scalar r = w[j] / mu[j];
      if (!t || r < *t) t = std::move(r);
    }
    for (std::size_t j = 0; j < w.size(); ++j) w[j] -= *t * mu[j];
  }
}

}  // namespace detail

/// Carathéodory reduction: at most d+1 points of S whose hull contains x.
inline Support caratheodory_reduce(std::span<const Point> s, const Point& x) {
  require(!s.empty(), ErrorCode::precondition, "empty point set");
  for (std::size_t i = 0; i < s.size(); ++i) {
    require(s[i].dim() == x.dim(), ErrorCode::dimension, "point dimension mismatch");
    if (s[i] == x) return {{i}, {s[i]}, {Scalar(1)}};
  }
  auto hm = convex::hull_membership(s, x);
  require(hm.inside, ErrorCode::precondition, "target is not in the convex hull");
  Support out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (hm.weights[i].sign() != 0) {
      out.indices.push_back(i);
      out.points.push_back(s[i]);
      out.weights.push_back(hm.weights[i]);
    }
  }
  detail::eliminate_affine_dependence(out.indices, out.points, out.weights);
  return out;
}

/// Minimum-norm point of conv{q_i : i in ids}, by Wolfe's algorithm in exact
/// arithmetic. Only inner products are used, so the points can live in any
/// inner-product space. Returns weights aligned with `ids`.
struct MinNormPoint {
  std::vector<Scalar> weights;
  Scalar norm_squared;
};

template <class InnerProduct>
MinNormPoint min_norm_point(const std::vector<std::size_t>& ids, InnerProduct&& ip) {
  const std::size_t k = ids.size();
  require(k > 0, ErrorCode::internal, "min-norm point of an empty set");
  std::vector<std::vector<Scalar>> g(k, std::vector<Scalar>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) g[i][j] = g[j][i] = ip(ids[i], ids[j]);

  // Active set (positions into ids) with positive weights.
  std::size_t first = 0;
  for (std::size_t i = 1; i < k; ++i) {
    if (g[i][i] < g[first][first]) first = i;
  }
  std::vector<std::size_t> act{first};
  std::vector<Scalar> w{Scalar(1)};

  auto y_dot = [&](std::size_t j) {
    Scalar s;
    for (std::size_t a = 0; a < act.size(); ++a) s += w[a] * g[act[a]][j];
    return s;
  };

  for (;;) {
    Scalar yy;
    for (std::size_t a = 0; a < act.size(); ++a) yy += w[a] * y_dot(act[a]);
    if (yy.is_zero()) break;
    std::optional<std::size_t> enter;
    Scalar best;
    for (std::size_t j = 0; j < k; ++j) {
      Scalar v = y_dot(j);
      if (!enter || v < best) {
        enter = j;
        best = std::move(v);
      }
    }
    if (best >= yy) break;
    if (std::find(act.begin(), act.end(), *enter) != act.end()) break;
    act.push_back(*enter);
    w.emplace_back(0);

    for (;;) {
      // Affine minimizer over aff(act): [G 1; 1^T 0] [alpha; lambda] = [0; 1].
      const std::size_t n = act.size();
      convex::Matrix sys(n + 1, std::vector<Scalar>(n + 1));
      std::vector<Scalar> rhs(n + 1);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) sys[a][b] = g[act[a]][act[b]];
        sys[a][n] = Scalar(1);
        sys[n][a] = Scalar(1);
      }
      rhs[n] = Scalar(1);
      const auto sol = convex::solve(sys, rhs);
      require(sol.has_value(), ErrorCode::internal, "degenerate active set in min-norm point");
      std::vector<Scalar> alpha(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(n));
      if (std::all_of(alpha.begin(), alpha.end(), [](const Scalar& s) { return s.sign() > 0; })) {
        w = std::move(alpha);
        break;
      }
      std::optional<Scalar> theta;
      for (std::size_t a = 0; a < n; ++a) {
        if (alpha[a].sign() > 0) continue;
        Scalar t = w[a] / (w[a] - alpha[a]);
        if (!theta || t < *theta) theta = std::move(t);
      }
      for (std::size_t a = 0; a < n; ++a) w[a] = *theta * alpha[a] + (Scalar(1) - *theta) * w[a];
      for (std::size_t a = 0; a < act.size();) {
        if (w[a].is_zero()) {
          act.erase(act.begin() + static_cast<std::ptrdiff_t>(a));
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(a));
        } else {
          ++a;
        }
      }
    }
  }

  MinNormPoint out;
  out.weights.assign(k, Scalar(0));
  for (std::size_t a = 0; a < act.size(); ++a) out.weights[act[a]] = w[a];
  for (std::size_t a = 0; a < act.size(); ++a) out.norm_squared += w[a] * y_dot(act[a]);
  return out;
}

/// Colorful pivoting toward the origin of an abstract inner-product space.
/// `classes[i]` lists global point ids; returns, per class, the position of
/// the chosen id and its weight. Throws with the offending class if a class
/// cannot move the current nearest point (its hull misses the target).
struct PivotOutcome {
  std::vector<std::size_t> choice;
  std::vector<Scalar> weights;
  std::size_t pivots = 0;
};

template <class InnerProduct>
PivotOutcome colorful_pivot(const std::vector<std::vector<std::size_t>>& classes, InnerProduct&& ip,
                            std::vector<std::size_t> start = {}) {
  const std::size_t n = classes.size();
  if (start.empty()) start.assign(n, 0);
  PivotOutcome out{std::move(start), {}, 0};
  std::optional<Scalar> last;
  for (;;) {
    std::vector<std::size_t> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = classes[i][out.choice[i]];
    MinNormPoint mn = min_norm_point(ids, ip);
    require(!last || mn.norm_squared < *last, ErrorCode::internal, "pivoting distance did not decrease");
    if (mn.norm_squared.is_zero()) {
      out.weights = std::move(mn.weights);
      return out;
    }
    last = mn.norm_squared;
    std::optional<std::size_t> missing;
    for (std::size_t i = 0; i < n && !missing; ++i) {
      if (mn.weights[i].is_zero()) missing = i;
    }
    require(missing.has_value(), ErrorCode::internal, "nearest point uses every class");
    const auto& cls = classes[*missing];
    std::optional<std::size_t> pick;
    Scalar best;
    for (std::size_t j = 0; j < cls.size(); ++j) {
      Scalar v;
      for (std::size_t i = 0; i < n; ++i) {
        if (!mn.weights[i].is_zero()) v += mn.weights[i] * ip(ids[i], cls[j]);
      }
      if (!pick || v < best) {
        pick = j;
        best = std::move(v);
      }
    }
    require(best < mn.norm_squared, ErrorCode::precondition,
            "target is not in the convex hull of class " + std::to_string(*missing));
    out.choice[*missing] = *pick;
    ++out.pivots;
  }
}

/// Colorful Carathéodory: one point per class whose hull contains x.
inline RainbowSelection colorful_caratheodory(const PointFamily& f, const Point& x) {
  require(f.dim() == x.dim(), ErrorCode::dimension, "target dimension mismatch");
  std::vector<Point> shifted;
  std::vector<std::vector<std::size_t>> ids;
  for (std::size_t i = 0; i < f.size(); ++i) {
    ids.emplace_back();
    for (const auto& p : f[i]) {
      ids.back().push_back(shifted.size());
      shifted.push_back(p - x);
    }
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    require(convex::in_hull(f[i], x), ErrorCode::precondition,
            "target is not in the convex hull of class " + std::to_string(i));
  }
  auto ip = [&](std::size_t a, std::size_t b) { return dot(shifted[a], shifted[b]); };
  PivotOutcome po = colorful_pivot(ids, ip);
  RainbowSelection sel;
  sel.choice = po.choice;
  sel.weights = po.weights;
  sel.pivots = po.pivots;
  for (std::size_t i = 0; i < f.size(); ++i) sel.points.push_back(f[i][po.choice[i]]);
  return sel;
}

/// Very colorful Carathéodory: d classes and an anchor q, with p in the hull
/// of the rainbow selection together with q.
///
/// Distance pivoting on conv(selection + {q_s}) with q_s = p + s (q - p).
/// Membership of p does not depend on s > 0. A nearest point supported only
/// by the d class points (the facet opposite q_s) cannot be improved by a swap;
/// in that case s shrinks until |q_s - p| is below the current distance, which
/// rules the configuration out, and pivoting resumes.
inline RainbowSelection very_colorful_caratheodory(const PointFamily& f, const Point& p, const Point& q) {
  require(f.dim() == p.dim() && p.dim() == q.dim(), ErrorCode::dimension, "dimension mismatch");
  const std::size_t n = f.size();
  RainbowSelection sel;
  sel.choice.assign(n, 0);
  if (p == q) {
    for (std::size_t i = 0; i < n; ++i) sel.points.push_back(f[i][0]);
    sel.weights.assign(n, Scalar(0));
    sel.anchor_weight = Scalar(1);
    return sel;
  }
  for (std::size_t i = 0; i < n; ++i) {
    require(convex::in_hull(f[i], p), ErrorCode::precondition,
            "target is not in the convex hull of class " + std::to_string(i));
  }
  const Point dir = q - p;
  const Scalar dir2 = norm_squared(dir);
  // Start from the points reaching farthest away from q.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j < f[i].size(); ++j) {
      if (dot(f[i][j] - p, dir) < dot(f[i][sel.choice[i]] - p, dir)) sel.choice[i] = j;
    }
  }
  Scalar s(1);
  std::optional<Scalar> last;
  for (;;) {
    std::vector<Point> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(f[i][sel.choice[i]] - p);
    v.push_back(dir * s);
    std::vector<std::size_t> ids(n + 1);
    for (std::size_t i = 0; i <= n; ++i) ids[i] = i;
    const MinNormPoint mn = min_norm_point(ids, [&](std::size_t a, std::size_t b) { return dot(v[a], v[b]); });
    if (mn.norm_squared.is_zero()) {
      // p = sum w_i x_i + mu q_s, rewritten with q itself.
      const Scalar& mu = mn.weights[n];
      const Scalar scale = Scalar(1) - mu + mu * s;
      for (std::size_t i = 0; i < n; ++i) {
        sel.points.push_back(f[i][sel.choice[i]]);
        sel.weights.push_back(mn.weights[i] / scale);
      }
      sel.anchor_weight = mu * s / scale;
      return sel;
    }
    require(!last || mn.norm_squared < *last, ErrorCode::internal, "pivoting distance did not decrease");
    last = mn.norm_squared;
    std::optional<std::size_t> missing;
    for (std::size_t i = 0; i < n && !missing; ++i) {
      if (mn.weights[i].is_zero()) missing = i;
    }
    if (!missing) {
      while (s * s * dir2 >= mn.norm_squared) s /= Scalar(2);
      last.reset();
      continue;
    }
    Point y = Point::zero(p.dim());
    for (std::size_t a = 0; a <= n; ++a) {
      if (!mn.weights[a].is_zero()) y += v[a] * mn.weights[a];
    }
    const auto& cls = f[*missing];
    std::size_t pick = 0;
    Scalar best = dot(y, cls[0] - p);
    for (std::size_t j = 1; j < cls.size(); ++j) {
      Scalar val = dot(y, cls[j] - p);
      if (val < best) {
        best = std::move(val);
        pick = j;
      }
    }
    require(best < mn.norm_squared, ErrorCode::internal, "no improving point in a class containing the target");
    sel.choice[*missing] = pick;
    ++sel.pivots;
  }
}

/// Subset of X of size at most (d+1)^2 whose hull contains every vertex of P.
inline std::vector<std::size_t> reduce_support(std::span<const Point> x, const VPolytope& p) {
  std::vector<std::size_t> keep;
  for (const auto& v : p.vertices()) {
    Support s;
    try {
      s = caratheodory_reduce(x, v);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::precondition) fail(ErrorCode::precondition, "polytope vertex " + v.str() + " is not in the hull");
      throw;
    }
    keep.insert(keep.end(), s.indices.begin(), s.indices.end());
  }
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  return keep;
}

/// Lexicographically first rainbow choice whose hull (with the optional anchor)
/// contains x, by full enumeration. Throws on budget exhaustion.
inline std::optional<std::vector<std::size_t>> exhaustive_rainbow(const PointFamily& f, const Point& x,
                                                                   const std::optional<Point>& anchor,
                                                                   std::size_t budget) {
  std::vector<std::size_t> idx(f.size(), 0);
  std::size_t visited = 0;
  for (;;) {
    require(++visited <= budget, ErrorCode::budget, "rainbow enumeration budget exhausted");
    std::vector<Point> pts;
    for (std::size_t i = 0; i < f.size(); ++i) pts.push_back(f[i][idx[i]]);
    if (anchor) pts.push_back(*anchor);
    if (convex::in_hull(pts, x)) return idx;
    std::size_t k = f.size();
    while (k > 0) {
      --k;
      if (++idx[k] < f[k].size()) break;
      idx[k] = 0;
      if (k == 0) return std::nullopt;
    }
    if (f.size() == 0) return std::nullopt;
  }
}

/// Certificate for a (very) colorful selection: one pick per class, the
/// target, and the convex weights (the anchor's weight last when present).
inline Certificate selection_certificate(const PointFamily& f, const Point& target, const RainbowSelection& sel,
                                         const std::optional<Point>& anchor = std::nullopt) {
  Certificate c;
  c.kind = CertificateKind::caratheodory_selection;
  c.dim = f.dim();
  for (std::size_t i = 0; i < sel.choice.size(); ++i) c.witness.points.push_back({{i, sel.choice[i]}, f[i][sel.choice[i]]});
  c.claim.target = target;
  std::vector<Scalar> w = sel.weights;
  if (anchor) {
    c.claim.anchor = *anchor;
    w.push_back(sel.anchor_weight);
  }
  c.claim.weights.push_back(std::move(w));
  return c;
}

}  // namespace qc
