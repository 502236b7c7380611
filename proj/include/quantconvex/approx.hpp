#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "quantconvex/convex/linalg.hpp"
#include "quantconvex/convex/lp.hpp"
#include "quantconvex/convex/ops.hpp"
#include "quantconvex/core/types.hpp"

namespace qc::approx {

enum class Kind { inscribed_volume, circumscribed_volume, sandwich_bms, circumscribed_diameter };

inline std::string_view to_string(Kind k) {
  switch (k) {
    case Kind::inscribed_volume: return "inscribed-volume";
    case Kind::circumscribed_volume: return "circumscribed-volume";
    case Kind::sandwich_bms: return "sandwich-bms";
    case Kind::circumscribed_diameter: return "circumscribed-diameter";
  }
  return "";
}

/// Accepts the full names and the short forms inscribed, circumscribed, sandwich, diameter.
inline Kind kind_from_string(std::string_view s) {
  if (s == "inscribed" || s == "inscribed-volume") return Kind::inscribed_volume;
  if (s == "circumscribed" || s == "circumscribed-volume") return Kind::circumscribed_volume;
  if (s == "sandwich" || s == "sandwich-bms" || s == "bms") return Kind::sandwich_bms;
  if (s == "diameter" || s == "circumscribed-diameter") return Kind::circumscribed_diameter;
  fail(ErrorCode::parse, "unknown approximation kind '" + std::string(s) + "'");
}

using Body = std::variant<Ball, VPolytope, HPolytope>;

inline int body_dim(const Body& b) {
  return std::visit([](const auto& x) {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Ball>) {
      return x.center().dim();
    } else {
      return x.dim();
    }
  }, b);
}

inline constexpr std::size_t kDefaultBudget = 512;

struct ApproxRequest {
  Body body;
  Kind kind = Kind::inscribed_volume;
  Scalar epsilon;
  std::optional<std::size_t> budget;
};

/// A certified approximating polytope P for a body K.
///
/// `ratio` is the achieved value of the quantity the kind is judged by, and
/// `bound` the target it meets:
///   inscribed-volume        lower bound of vol(P)/vol(K)       >= 1 - eps
///   circumscribed-volume    upper bound of vol(P)/vol(K)       <= 1 + eps
///   sandwich-bms            upper bound of the least t with
///                           K - c inside t (P - c)             <= 1 + eps
///   circumscribed-diameter  diam(P)^2 / diam(K)^2              <= (1 + eps)^2
struct Approximation {
  Kind kind = Kind::inscribed_volume;
  int dim = 0;
  std::vector<Point> vertices;
  std::vector<HalfSpace> facets;  // circumscribed kinds only: the defining half-spaces
  std::size_t k = 0;              // vertex count, or facet count for circumscribed kinds
  Scalar ratio;
  Scalar bound;
  bool minimal = false;           // no smaller k exists within the searched family
  Point center;                   // sandwich center
};

namespace detail {

inline Scalar cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Twice the signed area of a polygon.
inline Scalar shoelace2(const std::vector<Point>& poly) {
  Scalar s;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    s += p[0] * q[1] - p[1] * q[0];
  }
  return s;
}

/// Strictly convex hull in counterclockwise order (monotone chain).
inline std::vector<Point> ccw_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p).sign() <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]).sign() <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

/// Rational point on the unit circle near angle theta (exactly on the circle).
inline Point circle_point(double theta) {
  theta = std::remainder(theta, 2 * std::numbers::pi);
  bool flip = false;
  if (theta > std::numbers::pi / 2) {
    theta -= std::numbers::pi;
    flip = true;
  } else if (theta < -std::numbers::pi / 2) {
    theta += std::numbers::pi;
    flip = true;
  }
  const Scalar t = dyadic(std::tan(theta / 2));
  const Scalar den = Scalar(1) + t * t;
  Point p{(Scalar(1) - t * t) / den, Scalar(2) * t / den};
  return flip ? -p : p;
}

/// Rational point on the unit sphere S^2 near (x, y, z), by inverse stereographic projection.
inline Point sphere_point(double x, double y, double z) {
  const Scalar u = dyadic(x / (1 - z), 30);
  const Scalar v = dyadic(y / (1 - z), 30);
  const Scalar s = u * u + v * v;
  return Point{Scalar(2) * u / (s + 1), Scalar(2) * v / (s + 1), (s - 1) / (s + 1)};
}

/// n nearly uniform rational unit vectors (Fibonacci lattice).
inline std::vector<Point> sphere_directions(std::size_t n) {
  std::vector<Point> out;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    out.push_back(sphere_point(r * std::cos(phi), r * std::sin(phi), z));
  }
  return out;
}

/// Directions for the k-gon or the k-point sphere sample.
inline std::vector<Point> unit_directions(int d, std::size_t k) {
  std::vector<Point> out;
  if (d == 2) {
    for (std::size_t j = 0; j < k; ++j) out.push_back(circle_point(2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k)));
  } else {
    out = sphere_directions(k);
  }
  return out;
}

inline std::vector<Point> ball_vertices(const Ball& b, const std::vector<Point>& dirs) {
  std::vector<Point> v;
  v.reserve(dirs.size());
  for (const auto& u : dirs) v.push_back(b.center() + u * b.radius());
  return v;
}

inline std::vector<HalfSpace> ball_tangents(const Ball& b, const std::vector<Point>& dirs) {
  std::vector<HalfSpace> hs;
  hs.reserve(dirs.size());
  for (const auto& u : dirs) hs.emplace_back(u, b.radius() * dot(u, u) + dot(u, b.center()));
  return hs;
}

/// Volume of the ball as an enclosure [lo, hi] (d = 2, 3).
inline std::pair<Scalar, Scalar> ball_volume(const Ball& b) {
  const Scalar& r = b.radius();
  if (b.center().dim() == 2) return {pi_lower() * r * r, pi_upper() * r * r};
  const Scalar c = Scalar(4, 3) * r * r * r;
  return {c * pi_lower(), c * pi_upper()};
}

/// Growth schedule for sample counts in d = 3.
inline std::size_t next_count(std::size_t n) { return std::max(n + 1, n + n / 4); }

inline std::vector<Point> body_vertices(const Body& body) {
  if (const auto* v = std::get_if<VPolytope>(&body)) return convex::hull_vertices(v->vertices());
  const auto* h = std::get_if<HPolytope>(&body);
  require(h != nullptr, ErrorCode::internal, "body has no vertices");
  require(convex::is_bounded(*h), ErrorCode::precondition, "body must be bounded");
  return convex::hull_vertices(convex::h_to_v(*h));
}

inline std::vector<HalfSpace> body_facets(const Body& body) { return convex::v_to_h(body_vertices(body)); }

inline void check_body(const Body& body) {
  const int d = body_dim(body);
  if (const auto* b = std::get_if<Ball>(&body)) {
    require(b->radius().sign() > 0, ErrorCode::precondition, "body must have positive volume");
    require(d <= 3, ErrorCode::unsupported, "balls are supported in dimensions 1 to 3");
    return;
  }
  require(d <= 3, ErrorCode::unsupported, "polytope bodies are supported in dimensions 1 to 3");
  const auto v = body_vertices(body);
  require(!v.empty() && convex::affine_dimension(v) == d, ErrorCode::precondition, "body must have positive volume");
}

/// Segment bodies in d = 1: every kind returns the body itself.
inline Approximation segment(const Body& body, Kind kind, const Scalar& eps) {
  Approximation a;
  a.kind = kind;
  a.dim = 1;
  if (const auto* b = std::get_if<Ball>(&body)) {
    a.vertices = {b->center() - Point{b->radius()}, b->center() + Point{b->radius()}};
  } else {
    a.vertices = body_vertices(body);
  }
  a.facets = convex::v_to_h(a.vertices);
  a.k = 2;
  a.ratio = Scalar(1);
  a.minimal = true;
  a.center = (a.vertices[0] + a.vertices[1]) / Scalar(2);
  switch (kind) {
    case Kind::inscribed_volume: a.bound = Scalar(1) - eps; break;
    case Kind::circumscribed_volume:
    case Kind::sandwich_bms: a.bound = Scalar(1) + eps; break;
    case Kind::circumscribed_diameter: a.bound = (Scalar(1) + eps) * (Scalar(1) + eps); break;
  }
  return a;
}

inline Scalar polygon_area(const std::vector<Point>& ccw) { return shoelace2(ccw) / Scalar(2); }

/// Max-area k-gon with vertices among a convex polygon's vertices, for all k.
/// best[k] is twice the area (k = 3..n).
inline std::vector<Scalar> max_inscribed_areas(const std::vector<Point>& w, std::vector<std::vector<std::size_t>>* picks) {
  const std::size_t n = w.size();
  std::vector<Scalar> best(n + 1);
  if (picks) picks->assign(n + 1, {});
  for (std::size_t s = 0; s < n; ++s) {
    // chain[c][j]: best doubled area of a fan from w[s] through c vertices ending at w[s + j].
    std::vector<std::vector<std::optional<Scalar>>> chain(n + 1, std::vector<std::optional<Scalar>>(n));
    std::vector<std::vector<std::size_t>> from(n + 1, std::vector<std::size_t>(n, 0));
    for (std::size_t j = 1; j < n; ++j) chain[2][j] = Scalar(0);
    for (std::size_t c = 3; c <= n; ++c) {
      for (std::size_t j = c - 1; j < n; ++j) {
        for (std::size_t i = c - 2; i < j; ++i) {
          if (!chain[c - 1][i]) continue;
          Scalar v = *chain[c - 1][i] + cross(w[s], w[(s + i) % n], w[(s + j) % n]);
          if (!chain[c][j] || v > *chain[c][j]) {
            chain[c][j] = std::move(v);
            from[c][j] = i;
          }
        }
        if (chain[c][j] && *chain[c][j] > best[c]) {
          best[c] = *chain[c][j];
          if (picks) {
            std::vector<std::size_t> ids;
            std::size_t cur = j;
            for (std::size_t cc = c; cc >= 2; --cc) {
              ids.push_back((s + cur) % n);
              if (cc == 2) break;
              cur = from[cc][cur];
            }
            ids.push_back(s);
            std::sort(ids.begin(), ids.end());
            (*picks)[c] = std::move(ids);
          }
        }
      }
    }
  }
  return best;
}

/// For a convex polygon with CCW vertices w, edge i runs from w[i] to w[i+1].
/// Doubled area added when edges i and j are kept consecutively and the
/// edges strictly between them are dropped; nullopt if the two lines do not
/// close the region.
inline std::optional<Scalar> cap_area2(const std::vector<Point>& w, std::size_t i, std::size_t j) {
  const std::size_t n = w.size();
  if ((i + 1) % n == j) return Scalar(0);
  const Point& a0 = w[i];
  const Point& a1 = w[(i + 1) % n];
  const Point& b0 = w[j];
  const Point& b1 = w[(j + 1) % n];
  const Point da = a1 - a0;
  const Point db = b1 - b0;
  const Scalar den = da[0] * db[1] - da[1] * db[0];
  if (den.sign() <= 0) return std::nullopt;
  const Scalar t = ((b0[0] - a0[0]) * db[1] - (b0[1] - a0[1]) * db[0]) / den;
  const Point x = a0 + da * t;
  std::vector<Point> poly{x};
  for (std::size_t m = j;; m = (m + n - 1) % n) {
    poly.push_back(w[m]);
    if (m == (i + 1) % n) break;
  }
  return shoelace2(poly).abs();
}

inline HalfSpace edge_halfspace(const std::vector<Point>& w, std::size_t i) {
  const Point& p = w[i];
  const Point& q = w[(i + 1) % w.size()];
  Point a{q[1] - p[1], p[0] - q[0]};
  Scalar b = dot(a, p);
  return HalfSpace(std::move(a), std::move(b)).canonical();
}

/// Min-area circumscribed polygons whose sides lie on edges of the polygon w.
/// Returns, per k, twice the added area and the kept edges.
inline std::vector<std::optional<std::pair<Scalar, std::vector<std::size_t>>>> min_flush_caps(
    const std::vector<Point>& w) {
  const std::size_t n = w.size();
  std::vector<std::vector<std::optional<Scalar>>> cap(n, std::vector<std::optional<Scalar>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) cap[i][j] = cap_area2(w, i, j);
    }
  }
  std::vector<std::optional<std::pair<Scalar, std::vector<std::size_t>>>> best(n + 1);
  for (std::size_t s = 0; s < n; ++s) {
    // chain[c][j]: c kept edges s = e_1 < ... < e_c = s + j (offsets), cost so far.
    std::vector<std::vector<std::optional<Scalar>>> chain(n + 1, std::vector<std::optional<Scalar>>(n));
    std::vector<std::vector<std::size_t>> from(n + 1, std::vector<std::size_t>(n, 0));
    chain[1][0] = Scalar(0);
    for (std::size_t c = 2; c <= n; ++c) {
      for (std::size_t j = c - 1; j < n; ++j) {
        for (std::size_t i = c - 2; i < j; ++i) {
          if (!chain[c - 1][i]) continue;
          const auto& add = cap[(s + i) % n][(s + j) % n];
          if (!add) continue;
          Scalar v = *chain[c - 1][i] + *add;
          if (!chain[c][j] || v < *chain[c][j]) {
            chain[c][j] = std::move(v);
            from[c][j] = i;
          }
        }
      }
    }
    for (std::size_t c = 3; c <= n; ++c) {
      for (std::size_t j = c - 1; j < n; ++j) {
        if (!chain[c][j]) continue;
        const auto& close = cap[(s + j) % n][s];
        if (!close) continue;
        Scalar total = *chain[c][j] + *close;
        if (best[c] && !(total < best[c]->first)) continue;
        std::vector<std::size_t> ids;
        std::size_t cur = j;
        for (std::size_t cc = c; cc >= 1; --cc) {
          ids.push_back((s + cur) % n);
          if (cc == 1) break;
          cur = from[cc][cur];
        }
        std::sort(ids.begin(), ids.end());
        best[c] = std::make_pair(std::move(total), std::move(ids));
      }
    }
  }
  return best;
}

inline std::vector<HalfSpace> irredundant(const std::vector<HalfSpace>& hs, int d) {
  const auto v = convex::h_to_v(HPolytope(d, hs));
  return convex::v_to_h(v);
}

/// Greedy removal of elements from `keep` while `ok` accepts the remainder;
/// each round removes the element whose removal scores lowest.
template <class T, class Score>
std::vector<T> greedy_remove(std::vector<T> keep, std::size_t min_size, Score score) {
  for (;;) {
    std::optional<std::pair<Scalar, std::size_t>> best;
    if (keep.size() <= min_size) break;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      std::vector<T> trial;
      for (std::size_t j = 0; j < keep.size(); ++j) {
        if (j != i) trial.push_back(keep[j]);
      }
      auto s = score(trial);
      if (s && (!best || *s < best->first)) best = std::make_pair(std::move(*s), i);
    }
    if (!best) break;
    keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(best->second));
  }
  return keep;
}

inline void check_epsilon(const Scalar& eps, bool below_one) {
  require(eps.sign() >= 0, ErrorCode::precondition, "epsilon must be nonnegative");
  if (below_one) require(eps < Scalar(1), ErrorCode::precondition, "epsilon must be below 1");
}

}  // namespace detail

/// Inscribed polytope P in K with vol(P) >= (1 - eps) vol(K).
inline Approximation inscribed_poly(const Body& body, const Scalar& eps, std::size_t budget = kDefaultBudget) {
  detail::check_body(body);
  detail::check_epsilon(eps, true);
  const int d = body_dim(body);
  if (d == 1) return detail::segment(body, Kind::inscribed_volume, eps);
  Approximation a;
  a.kind = Kind::inscribed_volume;
  a.dim = d;
  a.bound = Scalar(1) - eps;
  if (const auto* ball = std::get_if<Ball>(&body)) {
    require(eps.sign() > 0, ErrorCode::budget, "a ball has no inscribed polytope of full volume");
    const auto [vlo, vhi] = detail::ball_volume(*ball);
    for (std::size_t k = static_cast<std::size_t>(d) + 1; k <= budget; k = d == 2 ? k + 1 : detail::next_count(k)) {
      auto verts = detail::ball_vertices(*ball, detail::unit_directions(d, k));
      const Scalar vol = d == 2 ? detail::polygon_area(verts) : convex::volume(VPolytope(d, verts));
      if (vol / vhi >= a.bound) {
        a.vertices = std::move(verts);
        a.k = k;
        a.ratio = vol / vhi;
        a.minimal = d == 2;  // regular polygons are optimal among inscribed k-gons of a disk
        return a;
      }
    }
    fail(ErrorCode::budget, "inscribed approximation exceeds the vertex budget");
  }
  const auto w = detail::body_vertices(body);
  if (d == 2) {
    const auto ccw = detail::ccw_hull(w);
    const Scalar full = detail::shoelace2(ccw);
    std::vector<std::vector<std::size_t>> picks;
    const auto best = detail::max_inscribed_areas(ccw, &picks);
    for (std::size_t k = 3; k <= ccw.size() && k <= budget; ++k) {
      if (best[k] / full >= a.bound) {
        for (auto i : picks[k]) a.vertices.push_back(ccw[i]);
        a.k = k;
        a.ratio = best[k] / full;
        a.minimal = true;
        return a;
      }
    }
    fail(ErrorCode::budget, "inscribed approximation exceeds the vertex budget");
  }
  const Scalar full = convex::volume(VPolytope(d, w));
  auto keep = detail::greedy_remove(w, static_cast<std::size_t>(d) + 1, [&](const std::vector<Point>& t) -> std::optional<Scalar> {
    if (convex::affine_dimension(t) < d) return std::nullopt;
    const Scalar r = convex::volume(VPolytope(d, t)) / full;
    if (r < a.bound) return std::nullopt;
    return -r;
  });
  require(keep.size() <= budget, ErrorCode::budget, "inscribed approximation exceeds the vertex budget");
  a.ratio = convex::volume(VPolytope(d, keep)) / full;
  a.vertices = std::move(keep);
  a.k = a.vertices.size();
  return a;
}

/// Circumscribed polytope P of K with vol(P) <= (1 + eps) vol(K).
inline Approximation circumscribed_poly(const Body& body, const Scalar& eps, std::size_t budget = kDefaultBudget) {
  detail::check_body(body);
  detail::check_epsilon(eps, false);
  const int d = body_dim(body);
  if (d == 1) return detail::segment(body, Kind::circumscribed_volume, eps);
  Approximation a;
  a.kind = Kind::circumscribed_volume;
  a.dim = d;
  a.bound = Scalar(1) + eps;
  if (const auto* ball = std::get_if<Ball>(&body)) {
    require(eps.sign() > 0, ErrorCode::budget, "a ball has no circumscribed polytope of equal volume");
    const auto [vlo, vhi] = detail::ball_volume(*ball);
    for (std::size_t k = static_cast<std::size_t>(d) + 1; k <= budget; k = d == 2 ? k + 1 : detail::next_count(k)) {
      auto hs = detail::ball_tangents(*ball, detail::unit_directions(d, k));
      HPolytope p(d, hs);
      if (!convex::is_bounded(p)) continue;
      auto verts = convex::h_to_v(p);
      const Scalar vol = d == 2 ? detail::polygon_area(detail::ccw_hull(verts)) : convex::volume(p);
      if (vol / vlo <= a.bound) {
        a.facets = std::move(hs);
        a.vertices = std::move(verts);
        a.k = a.facets.size();
        a.ratio = vol / vlo;
        a.minimal = d == 2;  // regular tangent polygons are optimal for a disk
        return a;
      }
    }
    fail(ErrorCode::budget, "circumscribed approximation exceeds the facet budget");
  }
  const auto w = detail::body_vertices(body);
  if (d == 2) {
    const auto ccw = detail::ccw_hull(w);
    const Scalar full = detail::shoelace2(ccw);
    const auto best = detail::min_flush_caps(ccw);
    for (std::size_t k = 3; k <= ccw.size() && k <= budget; ++k) {
      if (!best[k]) continue;
      const Scalar r = (full + best[k]->first) / full;
      if (r <= a.bound) {
        for (auto i : best[k]->second) a.facets.push_back(detail::edge_halfspace(ccw, i));
        a.vertices = convex::h_to_v(HPolytope(d, a.facets));
        a.k = k;
        a.ratio = r;
        a.minimal = true;  // among polygons whose sides lie on edges of K
        return a;
      }
    }
    fail(ErrorCode::budget, "circumscribed approximation exceeds the facet budget");
  }
  const Scalar full = convex::volume(VPolytope(d, w));
  auto keep = detail::greedy_remove(convex::v_to_h(w), static_cast<std::size_t>(d) + 1,
                                    [&](const std::vector<HalfSpace>& t) -> std::optional<Scalar> {
                                      HPolytope p(d, t);
                                      if (!convex::is_bounded(p)) return std::nullopt;
                                      Scalar r = convex::volume(p) / full;
                                      if (r > a.bound) return std::nullopt;
                                      return r;
                                    });
  require(keep.size() <= budget, ErrorCode::budget, "circumscribed approximation exceeds the facet budget");
  HPolytope p(d, keep);
  a.ratio = convex::volume(p) / full;
  a.vertices = convex::h_to_v(p);
  a.facets = std::move(keep);
  a.k = a.facets.size();
  return a;
}

namespace detail {

/// Least t (upper bound) with every point of `outer` - c inside t (conv(inner) - c).
inline std::optional<Scalar> gauge_factor(const std::vector<Point>& inner, const std::vector<Point>& outer, const Point& c) {
  if (convex::affine_dimension(inner) < c.dim()) return std::nullopt;
  Scalar t;
  for (const auto& f : convex::v_to_h(inner)) {
    const Scalar beta = f.slack(c);
    if (beta.sign() <= 0) return std::nullopt;
    for (const auto& v : outer) t = max(t, dot(f.normal(), v - c) / beta);
  }
  return t;
}

}  // namespace detail

/// Sandwich P inside K inside (1 + eps) P about the center of a centrally symmetric K.
inline Approximation sandwich_bms(const Body& body, const Scalar& eps, std::size_t budget = kDefaultBudget) {
  detail::check_body(body);
  detail::check_epsilon(eps, false);
  const int d = body_dim(body);
  if (d == 1) return detail::segment(body, Kind::sandwich_bms, eps);
  Approximation a;
  a.kind = Kind::sandwich_bms;
  a.dim = d;
  a.bound = Scalar(1) + eps;
  if (const auto* ball = std::get_if<Ball>(&body)) {
    require(eps.sign() > 0, ErrorCode::budget, "a ball has no polytope sandwich with factor 1");
    a.center = ball->center();
    const Scalar r2 = ball->radius() * ball->radius();
    for (std::size_t k = static_cast<std::size_t>(d) + 1; k <= budget; k = d == 2 ? k + 1 : detail::next_count(k)) {
      std::vector<Point> dirs;
      if (d == 2) {
        dirs = detail::unit_directions(d, k);
      } else {
        if (k % 2 == 1) continue;
        for (const auto& u : detail::sphere_directions(k / 2)) {
          dirs.push_back(u);
          dirs.push_back(-u);
        }
      }
      auto verts = detail::ball_vertices(*ball, dirs);
      const auto in = convex::ball_in_hull_radius(verts, ball->center());
      if (in.radius_squared.is_zero()) continue;
      const Scalar t = sqrt_upper(r2 / in.radius_squared);
      if (t <= a.bound) {
        a.vertices = std::move(verts);
        a.k = a.vertices.size();
        a.ratio = t;
        a.minimal = d == 2;  // regular polygons maximize the inradius among inscribed k-gons
        return a;
      }
    }
    fail(ErrorCode::budget, "sandwich approximation exceeds the vertex budget");
  }
  const auto w = detail::body_vertices(body);
  Point c = convex::centroid(w);
  for (const auto& v : w) {
    require(std::find(w.begin(), w.end(), c * Scalar(2) - v) != w.end(), ErrorCode::precondition,
            "sandwich approximation needs a centrally symmetric body");
  }
  a.center = c;
  // Antipodal vertex pairs; removal keeps the polytope symmetric.
  std::vector<std::pair<Point, Point>> pairs;
  for (const auto& v : w) {
    if (v < c * Scalar(2) - v) pairs.emplace_back(v, c * Scalar(2) - v);
  }
  auto flatten = [](const std::vector<std::pair<Point, Point>>& ps) {
    std::vector<Point> out;
    for (const auto& [p, q] : ps) {
      out.push_back(p);
      out.push_back(q);
    }
    return out;
  };
  auto keep = detail::greedy_remove(pairs, 1, [&](const std::vector<std::pair<Point, Point>>& t) -> std::optional<Scalar> {
    auto f = detail::gauge_factor(flatten(t), w, c);
    if (!f || *f > a.bound) return std::nullopt;
    return f;
  });
  a.vertices = flatten(keep);
  require(a.vertices.size() <= budget, ErrorCode::budget, "sandwich approximation exceeds the vertex budget");
  a.ratio = *detail::gauge_factor(a.vertices, w, c);
  a.k = a.vertices.size();
  a.minimal = a.k == w.size();
  return a;
}

/// Circumscribed polytope P of K with diam(P) <= (1 + eps) diam(K).
inline Approximation diameter_poly(const Body& body, const Scalar& eps, std::size_t budget = kDefaultBudget) {
  detail::check_body(body);
  detail::check_epsilon(eps, false);
  const int d = body_dim(body);
  if (d == 1) return detail::segment(body, Kind::circumscribed_diameter, eps);
  Approximation a;
  a.kind = Kind::circumscribed_diameter;
  a.dim = d;
  a.bound = (Scalar(1) + eps) * (Scalar(1) + eps);
  if (const auto* ball = std::get_if<Ball>(&body)) {
    require(eps.sign() > 0, ErrorCode::budget, "a ball has no circumscribed polytope of equal diameter");
    const Scalar full = Scalar(4) * ball->radius() * ball->radius();
    for (std::size_t k = static_cast<std::size_t>(d) + 1; k <= budget; k = d == 2 ? k + 1 : detail::next_count(k)) {
      auto hs = detail::ball_tangents(*ball, detail::unit_directions(d, k));
      HPolytope p(d, hs);
      if (!convex::is_bounded(p)) continue;
      auto verts = convex::h_to_v(p);
      const Scalar r = convex::diameter_squared(verts) / full;
      if (r <= a.bound) {
        a.facets = std::move(hs);
        a.vertices = std::move(verts);
        a.k = a.facets.size();
        a.ratio = r;
        a.minimal = d == 2;  // among regular tangent polygons
        return a;
      }
    }
    fail(ErrorCode::budget, "diameter approximation exceeds the facet budget");
  }
  const auto w = detail::body_vertices(body);
  const Scalar full = convex::diameter_squared(w);
  auto keep = detail::greedy_remove(convex::v_to_h(w), static_cast<std::size_t>(d) + 1,
                                    [&](const std::vector<HalfSpace>& t) -> std::optional<Scalar> {
                                      HPolytope p(d, t);
                                      if (!convex::is_bounded(p)) return std::nullopt;
                                      Scalar r = convex::diameter_squared(convex::h_to_v(p)) / full;
                                      if (r > a.bound) return std::nullopt;
                                      return r;
                                    });
  require(keep.size() <= budget, ErrorCode::budget, "diameter approximation exceeds the facet budget");
  HPolytope p(d, keep);
  a.vertices = convex::h_to_v(p);
  a.ratio = convex::diameter_squared(a.vertices) / full;
  a.facets = std::move(keep);
  a.k = a.facets.size();
  a.minimal = a.k == convex::v_to_h(w).size();
  return a;
}

inline Approximation approximate(const ApproxRequest& req) {
  const std::size_t budget = req.budget.value_or(kDefaultBudget);
  switch (req.kind) {
    case Kind::inscribed_volume: return inscribed_poly(req.body, req.epsilon, budget);
    case Kind::circumscribed_volume: return circumscribed_poly(req.body, req.epsilon, budget);
    case Kind::sandwich_bms: return sandwich_bms(req.body, req.epsilon, budget);
    case Kind::circumscribed_diameter: return diameter_poly(req.body, req.epsilon, budget);
  }
  fail(ErrorCode::internal, "unknown approximation kind");
}

/// CSV rows "epsilon,k" for the given body over an epsilon grid.
inline std::string curve_csv(const Body& body, Kind kind, const std::vector<Scalar>& grid,
                             std::size_t budget = kDefaultBudget) {
  std::ostringstream os;
  os << "epsilon,k\n";
  for (const auto& e : grid) {
    os << e.str() << ',' << approximate({body, kind, e, budget}).k << '\n';
  }
  return os.str();
}

}  // namespace qc::approx
