#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "quantconvex/convex/double_description.hpp"
#include "quantconvex/convex/linalg.hpp"
#include "quantconvex/convex/lp.hpp"
#include "quantconvex/core/types.hpp"

namespace qc::convex {

/// Highest dimension for which volumes count as certified.
inline constexpr int kCertifiedVolumeDim = 3;

inline Point centroid(std::span<const Point> pts) {
  require(!pts.empty(), ErrorCode::precondition, "centroid of an empty set");
  Point c = Point::zero(pts.front().dim());
  for (const auto& p : pts) c += p;
  return c / Scalar(static_cast<long>(pts.size()));
}

inline std::vector<Point> sorted_unique(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// Feasibility of an H-polytope (one phase-1 solve).
inline bool is_empty(const HPolytope& p) {
  if (p.size() == 0) return false;
  return lp_solve(p.halfspaces(), Point::zero(p.dim())).status == LPStatus::infeasible;
}

/// True iff the polytope is empty or has a trivial recession cone.
inline bool is_bounded(const HPolytope& p) {
  if (is_empty(p)) return true;
  return !recession_direction(p.halfspaces(), p.dim()).has_value();
}

struct VertexEnumeration {
  std::vector<Point> vertices;  // lexicographically sorted
  std::vector<Point> rays;      // extreme recession directions (empty when bounded)
  bool empty = false;
};

/// Vertices and recession rays of an H-polyhedron via double description.
/// Polyhedra with a lineality space are reported through a single ray.
inline VertexEnumeration enumerate(const HPolytope& p) {
  const int d = p.dim();
  const auto du = static_cast<std::size_t>(d);
  VertexEnumeration out;
  Matrix normals;
  for (const auto& h : p.halfspaces()) normals.emplace_back(h.normal().begin(), h.normal().end());
  if (rank(normals) < du) {
    if (is_empty(p)) {
      out.empty = true;
    } else {
      out.rays.push_back(*recession_direction(p.halfspaces(), d));
    }
    return out;
  }
  Matrix rows;
  for (const auto& h : p.halfspaces()) {
    std::vector<Scalar> r(h.normal().begin(), h.normal().end());
    r.push_back(-h.offset());
    rows.push_back(std::move(r));
  }
  std::vector<Scalar> t(du + 1);
  t[du] = Scalar(-1);
  rows.push_back(std::move(t));

  for (auto& r : extreme_rays(rows)) {
    const Scalar last = r[du];
    r.pop_back();
    Point v(std::move(r));
    if (last.is_zero()) {
      out.rays.push_back(std::move(v));
    } else {
      out.vertices.push_back(v / last);
    }
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  out.empty = out.vertices.empty();
  return out;
}

/// Vertices of a bounded H-polytope (empty list if the polytope is empty).
inline std::vector<Point> h_to_v(const HPolytope& p) {
  auto e = enumerate(p);
  if (e.empty) return {};
  require(e.rays.empty(), ErrorCode::precondition, "polyhedron is unbounded");
  return std::move(e.vertices);
}

/// Irredundant facets of a full-dimensional point hull, canonical and sorted.
inline std::vector<HalfSpace> v_to_h(std::span<const Point> pts) {
  require(!pts.empty(), ErrorCode::precondition, "empty point set");
  const int d = pts.front().dim();
  std::vector<Point> list(pts.begin(), pts.end());
  require(affine_dimension(list) == d, ErrorCode::precondition, "point set is not full-dimensional");
  Matrix rows;
  for (const auto& v : sorted_unique(list)) {
    std::vector<Scalar> r(v.begin(), v.end());
    r.emplace_back(-1);
    rows.push_back(std::move(r));
  }
  std::vector<HalfSpace> out;
  for (auto& r : extreme_rays(rows)) {
    const Scalar b = r.back();
    r.pop_back();
    Point a(std::move(r));
    if (a.is_zero()) continue;
    out.push_back(HalfSpace(std::move(a), b).canonical());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<HalfSpace> v_to_h(const VPolytope& v) { return v_to_h(std::span<const Point>(v.vertices())); }

/// Extreme points of a finite set, sorted lexicographically.
inline std::vector<Point> hull_vertices(std::span<const Point> pts) {
  require(!pts.empty(), ErrorCode::precondition, "empty point set");
  std::vector<Point> list = sorted_unique(std::vector<Point>(pts.begin(), pts.end()));
  const int d = list.front().dim();
  std::vector<Point> out;
  if (affine_dimension(list) == d) {
    const auto facets = v_to_h(list);
    for (const auto& p : list) {
      std::vector<Point> tight;
      for (const auto& f : facets) {
        if (f.slack(p).is_zero()) tight.push_back(f.normal());
      }
      if (rank(tight) == static_cast<std::size_t>(d)) out.push_back(p);
    }
    return out;
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::vector<Point> others;
    for (std::size_t j = 0; j < list.size(); ++j) {
      if (j != i) others.push_back(list[j]);
    }
    if (others.empty() || !in_hull(others, list[i])) out.push_back(list[i]);
  }
  return out;
}

namespace detail {

inline std::vector<Point> gather(const std::vector<Point>& verts, const std::vector<std::size_t>& ids) {
  std::vector<Point> out;
  out.reserve(ids.size());
  for (auto i : ids) out.push_back(verts[i]);
  return out;
}

/// Sums |det| over a fan triangulation of the face `face` (dimension k) with
/// the apex chain already fixed; recursion goes through face centroids.
inline void fan(const std::vector<Point>& verts, const std::vector<std::vector<std::size_t>>& facets,
                const std::vector<std::size_t>& face, int k, std::vector<Point>& apexes, Scalar& acc) {
  if (k == 1) {
    require(face.size() == 2, ErrorCode::internal, "edge without two vertices");
    std::vector<Point> simplex = apexes;
    simplex.push_back(verts[face[0]]);
    simplex.push_back(verts[face[1]]);
    acc += simplex_det(simplex).abs();
    return;
  }
  apexes.push_back(centroid(gather(verts, face)));
  std::set<std::vector<std::size_t>> seen;
  for (const auto& f : facets) {
    std::vector<std::size_t> sub;
    std::set_intersection(face.begin(), face.end(), f.begin(), f.end(), std::back_inserter(sub));
    if (sub.size() < static_cast<std::size_t>(k) || sub == face) continue;
    if (affine_dimension(gather(verts, sub)) != k - 1) continue;
    if (!seen.insert(sub).second) continue;
    fan(verts, facets, sub, k - 1, apexes, acc);
  }
  apexes.pop_back();
}

/// Volume of a full-dimensional polytope from its vertices and facet-vertex incidences.
inline Scalar fan_volume(const std::vector<Point>& verts, const std::vector<std::vector<std::size_t>>& facets, int d) {
  if (d == 1) {
    const auto [lo, hi] = std::minmax_element(verts.begin(), verts.end());
    return (*hi)[0] - (*lo)[0];
  }
  std::vector<std::size_t> all(verts.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<Point> apexes;
  Scalar acc;
  fan(verts, facets, all, d, apexes, acc);
  return acc / factorial(d);
}

/// Facet-vertex incidences: for each half-space, the vertices it is tight at,
/// keeping only those spanning a (d-1)-face.
inline std::vector<std::vector<std::size_t>> incidences(const std::vector<Point>& verts,
                                                        std::span<const HalfSpace> hs, int d) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& h : hs) {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (h.slack(verts[i]).is_zero()) ids.push_back(i);
    }
    if (ids.size() < static_cast<std::size_t>(d)) continue;
    if (affine_dimension(gather(verts, ids)) == d - 1) out.insert(std::move(ids));
  }
  return {out.begin(), out.end()};
}

inline Scalar volume_of_vertices(const std::vector<Point>& pts, int d) {
  if (pts.empty() || affine_dimension(pts) < d) return Scalar(0);
  const auto facets = v_to_h(pts);
  const auto verts = hull_vertices(pts);
  return fan_volume(verts, incidences(verts, facets, d), d);
}

}  // namespace detail

/// Exact volume in any dimension; callers above kCertifiedVolumeDim must
/// label the value as uncertified.
inline Scalar volume_uncertified(const VPolytope& p) { return detail::volume_of_vertices(p.vertices(), p.dim()); }

inline Scalar volume_uncertified(const HPolytope& p) {
  const int d = p.dim();
  const auto verts = h_to_v(p);
  if (verts.empty() || affine_dimension(verts) < d) return Scalar(0);
  return detail::fan_volume(verts, detail::incidences(verts, p.halfspaces(), d), d);
}

/// Exact volume; 0 for lower-dimensional bodies.
inline Scalar volume(const VPolytope& p) {
  require(p.dim() <= kCertifiedVolumeDim, ErrorCode::unsupported, "exact volume is certified only for d <= 3");
  return volume_uncertified(p);
}

inline Scalar volume(const HPolytope& p) {
  require(p.dim() <= kCertifiedVolumeDim, ErrorCode::unsupported, "exact volume is certified only for d <= 3");
  return volume_uncertified(p);
}

/// Squared diameter: the maximum squared distance over point pairs.
inline Scalar diameter_squared(std::span<const Point> pts) {
  Scalar best;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = max(best, distance_squared(pts[i], pts[j]));
  return best;
}

inline Scalar diameter_squared(const VPolytope& p) { return diameter_squared(std::span<const Point>(p.vertices())); }

struct InscribedBall {
  Point center;
  Scalar radius;  // certified lower bound on the true inradius
};

/// Chebyshev center: maximize r subject to a_i.c + r*N_i <= b_i with N_i >= |a_i|.
inline InscribedBall chebyshev_center(const HPolytope& p, const Scalar& precision = default_precision()) {
  const int d = p.dim();
  const auto du = static_cast<std::size_t>(d);
  require(p.size() > 0, ErrorCode::precondition, "unbounded inradius");
  std::vector<HalfSpace> lifted;
  for (const auto& h : p.halfspaces()) {
    std::vector<Scalar> a(h.normal().begin(), h.normal().end());
    a.push_back(sqrt_upper(norm_squared(h.normal()), precision));
    lifted.emplace_back(Point(std::move(a)), h.offset());
  }
  std::vector<Scalar> nonneg(du + 1);
  nonneg[du] = Scalar(-1);
  lifted.emplace_back(Point(std::move(nonneg)), Scalar(0));
  std::vector<Scalar> obj(du + 1);
  obj[du] = Scalar(1);
  const LPResult r = lp_solve(lifted, Point(std::move(obj)));
  require(r.status != LPStatus::infeasible, ErrorCode::precondition, "empty polytope");
  require(r.status != LPStatus::unbounded, ErrorCode::precondition, "unbounded inradius");
  std::vector<Scalar> c(r.witness.begin(), r.witness.begin() + d);
  return {Point(std::move(c)), r.witness[du]};
}

struct RadiusBound {
  Scalar radius_squared;  // exact squared distance to the nearest facet
  Scalar radius;          // rational lower bound of its square root
};

/// Largest ball around `center` inside conv(pts); zero if center is not interior.
inline RadiusBound ball_in_hull_radius(std::span<const Point> pts, const Point& center,
                                       const Scalar& precision = default_precision()) {
  require(!pts.empty(), ErrorCode::precondition, "empty point set");
  const int d = center.dim();
  std::vector<Point> list(pts.begin(), pts.end());
  for (const auto& p : list) require(p.dim() == d, ErrorCode::dimension, "point dimension mismatch");
  if (affine_dimension(list) < d) return {Scalar(0), Scalar(0)};
  std::optional<Scalar> best;
  for (const auto& f : v_to_h(list)) {
    const Scalar s = f.slack(center);
    if (s.sign() <= 0) return {Scalar(0), Scalar(0)};
    Scalar r2 = s * s / norm_squared(f.normal());
    if (!best || r2 < *best) best = std::move(r2);
  }
  return {*best, sqrt_lower(*best, precision)};
}

inline RadiusBound ball_in_hull_radius(const VPolytope& v, const Point& center,
                                       const Scalar& precision = default_precision()) {
  return ball_in_hull_radius(std::span<const Point>(v.vertices()), center, precision);
}

/// Polar of an H-polytope with the origin interior: the points a/b.
inline VPolytope polar(const HPolytope& p) {
  std::vector<Point> pts;
  for (const auto& h : p.halfspaces()) {
    require(h.offset().sign() > 0, ErrorCode::precondition, "origin is not interior");
    Point v = h.normal() / h.offset();
    if (std::find(pts.begin(), pts.end(), v) == pts.end()) pts.push_back(std::move(v));
  }
  require(!pts.empty(), ErrorCode::precondition, "polar of the whole space is not a polytope");
  return VPolytope(p.dim(), std::move(pts));
}

/// Polar of a V-polytope with the origin interior: the half-spaces v.x <= 1.
inline HPolytope polar(const VPolytope& v) {
  const auto facets = v_to_h(v);
  for (const auto& f : facets) require(f.offset().sign() > 0, ErrorCode::precondition, "origin is not interior");
  std::vector<HalfSpace> hs;
  for (const auto& p : v.vertices()) {
    if (p.is_zero()) continue;
    HalfSpace h(p, Scalar(1));
    if (std::find(hs.begin(), hs.end(), h) == hs.end()) hs.push_back(std::move(h));
  }
  return HPolytope(v.dim(), std::move(hs));
}

struct InscribedSimplex {
  VPolytope simplex;
  Scalar inradius;  // certified: B_inradius(0) lies in the simplex
};

/// A regular simplex inscribed in the unit sphere, with rational vertices
/// scaled inward so that every vertex has norm at most 1.
inline InscribedSimplex make_inscribed_simplex(int d) {
  require(d >= 1, ErrorCode::dimension, "dimension must be positive");
  const auto du = static_cast<std::size_t>(d);
  if (d == 1) return {VPolytope(1, {Point{Scalar(-1)}, Point{Scalar(1)}}), Scalar(1)};

  // Orthonormal basis of {x in R^(d+1) : sum x = 0} by Gram-Schmidt on e_i - e_(d+1).
  std::vector<std::vector<double>> basis;
  for (std::size_t i = 0; i < du; ++i) {
    std::vector<double> v(du + 1, 0.0);
    v[i] = 1.0;
    v[du] = -1.0;
    for (const auto& b : basis) {
      double dp = 0;
      for (std::size_t k = 0; k <= du; ++k) dp += v[k] * b[k];
      for (std::size_t k = 0; k <= du; ++k) v[k] -= dp * b[k];
    }
    double n = 0;
    for (double x : v) n += x * x;
    n = std::sqrt(n);
    for (double& x : v) x /= n;
    basis.push_back(std::move(v));
  }
  const double scale = std::sqrt(static_cast<double>(d + 1) / static_cast<double>(d));
  std::vector<Point> verts;
  for (std::size_t j = 0; j <= du; ++j) {
    std::vector<Scalar> c(du);
    for (std::size_t i = 0; i < du; ++i) {
      // e_j - centroid, expressed in the basis, scaled to unit length.
      double coord = basis[i][j] * scale;
      c[i] = dyadic(coord);
    }
    verts.emplace_back(std::move(c));
  }
  Scalar worst;
  for (const auto& v : verts) worst = max(worst, norm_squared(v));
  if (worst > Scalar(1)) {
    const Scalar shrink = Scalar(1) / sqrt_upper(worst);
    for (auto& v : verts) v *= shrink;
  }
  VPolytope s(d, std::move(verts));
  Scalar r = ball_in_hull_radius(s, Point::zero(d)).radius;
  return {std::move(s), std::move(r)};
}

}  // namespace qc::convex
