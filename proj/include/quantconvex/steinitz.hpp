#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "quantconvex/approx.hpp"
#include "quantconvex/caratheodory.hpp"
#include "quantconvex/convex/linalg.hpp"
#include "quantconvex/convex/lp.hpp"
#include "quantconvex/convex/ops.hpp"
#include "quantconvex/core/types.hpp"

namespace qc {

/// Record of the cone-covering argument behind the colored Steinitz selection.
///
/// The rainbow cones spanned by one point from each of the first d classes
/// cover R^d. Some cone C then holds at least 1/n of the sphere's surface area
/// omega_(d-1), so its spherical inradius alpha (the largest angle from a unit
/// vector a in C to all facets of C) satisfies alpha >= 2 pi / (d n). The
/// selection adds a rainbow point set capturing a' = -rho a / |a| with the
/// origin as anchor.
struct ConeCoverTrace {
  std::vector<std::vector<std::size_t>> cones;  // class-local indices of each cone's generators
  std::size_t chosen = 0;                       // index into `cones` of the cone used
  std::size_t tried = 0;                        // cones evaluated before acceptance
  Point a;                                      // incenter direction of the chosen cone (not normalized)
  Scalar alpha;                                 // certified lower bound of the chosen cone's inradius angle
  Scalar alpha_max;                             // largest certified angle over all cones
  Scalar alpha_floor;                           // 2 pi / (d n), with pi rounded down
  Scalar chain_constant;                        // pi / (n d^2), the count-based radius bound
  Scalar rho;                                   // radius of the ball inside every reduced class hull
  Scalar predicted;                             // rho sin(alpha / 2): the ball inside conv(a', cap)
  Scalar tan_formula;                           // tan(alpha) / (2d) lower bound, for reference
  Scalar radius;                                // certified radius of the final selection
  bool predicted_met = false;                   // radius >= predicted
  bool cover_exact = false;                     // cover verified by an exact angular sweep (d <= 2)
  std::size_t cover_samples = 0;                // directions checked when the sweep does not apply
};

struct SteinitzResult {
  Certificate certificate;
  std::optional<ConeCoverTrace> trace;
  std::vector<std::size_t> choice;  // chosen index per class
};

namespace detail {

/// Partial sum of the arcsin series at x in [0, 1); `upper` adds a bound on the tail.
inline Scalar arcsin_series(const Scalar& x, bool upper) {
  const Scalar x2 = x * x;
  Scalar term = x;  // x^(2n+1) (2n)! / (4^n (n!)^2)
  Scalar sum;
  for (int n = 0; n < 40; ++n) {
    sum += term / Scalar(2 * n + 1);
    term *= x2 * Scalar((2 * n + 1) * (2 * n + 2)) / Scalar(4 * (n + 1) * (n + 1));
  }
  // Remaining coefficients are at most 1, so the tail is below x^81 / (1 - x^2).
  if (upper) sum += pow(x, 81) / (Scalar(1) - x2);
  return sum;
}

inline Scalar round_down(const Scalar& s) {
  const mpz_class scale = mpz_class(1) << 50;
  return Scalar(floor(s * Scalar(scale))) / Scalar(scale);
}

/// Lower bound of arcsin(s) for 0 <= s <= 1.
inline Scalar arcsin_lower(const Scalar& s, const Scalar& precision = default_precision()) {
  if (s.sign() <= 0) return Scalar(0);
  if (s * s <= Scalar(1, 2)) return arcsin_series(round_down(s), false);
  // arcsin(s) = pi/2 - arcsin(sqrt(1 - s^2))
  const Scalar c = sqrt_upper(Scalar(1) - min(s, Scalar(1)) * min(s, Scalar(1)), precision);
  return pi_lower() / Scalar(2) - arcsin_series(c, true);
}

inline void require_unit_ball(const std::vector<Point>& cls, std::size_t i) {
  const int d = cls.front().dim();
  const auto rb = convex::ball_in_hull_radius(cls, Point::zero(d));
  require(rb.radius_squared >= Scalar(1), ErrorCode::precondition,
          "class " + std::to_string(i) + " does not contain the unit ball around the origin");
}

struct ConeAngle {
  Point a;
  Scalar sin_alpha;  // lower bound
  Scalar alpha;      // lower bound
};

/// Certified inradius angle of the simplicial cone spanned by `gens`, with
/// the (approximate) incenter direction; nullopt if the cone is degenerate.
inline std::optional<ConeAngle> cone_angle(const std::vector<Point>& gens, const Scalar& precision) {
  const auto d = static_cast<std::size_t>(gens.front().dim());
  convex::Matrix x(d, std::vector<Scalar>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) x[i][j] = gens[j][i];
  }
  if (convex::determinant(x).is_zero()) return std::nullopt;
  const convex::Matrix inv = convex::inverse(x);  // row j: inward normal of the facet opposite gens[j]
  // Incenter: equal sines to every facet, i.e. unit normals . a = 1.
  std::vector<std::vector<double>> m(d, std::vector<double>(d + 1, 1.0));
  for (std::size_t j = 0; j < d; ++j) {
    double nn = 0;
    for (std::size_t k = 0; k < d; ++k) nn += inv[j][k].to_double() * inv[j][k].to_double();
    nn = std::sqrt(nn);
    for (std::size_t k = 0; k < d; ++k) m[j][k] = inv[j][k].to_double() / nn;
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < d; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    std::swap(m[c], m[piv]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || m[c][c] == 0) continue;
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k <= d; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<double> ad(d);
  double norm = 0;
  for (std::size_t k = 0; k < d; ++k) {
    ad[k] = m[k][d] / m[k][k];
    norm += ad[k] * ad[k];
  }
  norm = std::sqrt(norm);
  std::vector<Scalar> ac(d);
  for (std::size_t k = 0; k < d; ++k) ac[k] = dyadic(ad[k] / norm, 30);
  Point a(std::move(ac));
  if (a.is_zero()) return std::nullopt;
  std::optional<Scalar> s;
  for (std::size_t j = 0; j < d; ++j) {
    const Point n(inv[j]);
    const Scalar num = dot(n, a);
    if (num.sign() <= 0) return ConeAngle{a, Scalar(0), Scalar(0)};
    Scalar sj = num / sqrt_upper(norm_squared(n) * norm_squared(a), precision);
    if (!s || sj < *s) s = std::move(sj);
  }
  Scalar alpha = arcsin_lower(*s, precision);
  return ConeAngle{std::move(a), std::move(*s), std::move(alpha)};
}

/// Solves w = l u + m v in the plane; true if l, m >= 0.
inline bool in_planar_cone(const Point& u, const Point& v, const Point& w) {
  const Scalar det = u[0] * v[1] - u[1] * v[0];
  if (det.is_zero()) return false;
  const Scalar l = (w[0] * v[1] - w[1] * v[0]) / det;
  const Scalar m = (u[0] * w[1] - u[1] * w[0]) / det;
  return l.sign() >= 0 && m.sign() >= 0;
}

inline bool in_cone(const std::vector<Point>& gens, const Point& w) {
  const auto d = static_cast<std::size_t>(w.dim());
  if (d == 1) return (gens[0][0] * w[0]).sign() >= 0;
  if (d == 2) return in_planar_cone(gens[0], gens[1], w);
  convex::Matrix x(d, std::vector<Scalar>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) x[i][j] = gens[j][i];
  }
  const auto sol = convex::solve(x, std::vector<Scalar>(w.begin(), w.end()));
  if (!sol) return false;
  return std::all_of(sol->begin(), sol->end(), [](const Scalar& s) { return s.sign() >= 0; });
}

/// Half-plane index then cross product: a strict weak order of directions by angle.
inline bool angle_less(const Point& p, const Point& q) {
  auto half = [](const Point& v) { return v[1].sign() > 0 || (v[1].is_zero() && v[0].sign() > 0) ? 0 : 1; };
  if (half(p) != half(q)) return half(p) < half(q);
  return (p[0] * q[1] - p[1] * q[0]).sign() > 0;
}

/// Exact check that the union of planar cones is the whole plane: every
/// generator direction and one direction inside each gap between consecutive
/// generator directions must lie in some cone.
inline bool planar_cover(const std::vector<std::vector<Point>>& cones) {
  std::vector<Point> dirs;
  for (const auto& c : cones) dirs.insert(dirs.end(), c.begin(), c.end());
  std::sort(dirs.begin(), dirs.end(), angle_less);
  std::vector<Point> uniq;
  for (const auto& v : dirs) {
    if (!uniq.empty() && !angle_less(uniq.back(), v) && !angle_less(v, uniq.back())) continue;
    uniq.push_back(v);
  }
  if (uniq.empty()) return false;
  std::vector<Point> probes = uniq;
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    const Point& p = uniq[i];
    const Point& q = uniq[(i + 1) % uniq.size()];
    const Scalar cr = p[0] * q[1] - p[1] * q[0];
    if (uniq.size() == 1) {
      probes.push_back(-p);
      probes.push_back(Point{-p[1], p[0]});
      probes.push_back(Point{p[1], -p[0]});
    } else if (cr.sign() > 0) {
      probes.push_back(p * norm_squared(q) + q * norm_squared(p));
    } else if (cr.sign() < 0) {
      probes.push_back(-(p * norm_squared(q) + q * norm_squared(p)));
    } else {
      probes.push_back(Point{-p[1], p[0]});
    }
  }
  return std::all_of(probes.begin(), probes.end(), [&](const Point& w) {
    return std::any_of(cones.begin(), cones.end(), [&](const auto& c) { return in_planar_cone(c[0], c[1], w); });
  });
}

inline PointFamily subfamily(const PointFamily& f, std::size_t first, std::size_t count,
                             const std::vector<std::vector<std::size_t>>* keep = nullptr) {
  std::vector<std::vector<Point>> cls;
  for (std::size_t i = first; i < first + count; ++i) {
    if (keep) {
      std::vector<Point> c;
      for (auto j : (*keep)[i]) c.push_back(f[i][j]);
      cls.push_back(std::move(c));
    } else {
      cls.push_back(f[i]);
    }
  }
  return PointFamily(std::move(cls));
}

inline PointFamily translated(const PointFamily& f, const Point& shift) {
  std::vector<std::vector<Point>> cls;
  for (const auto& c : f) {
    std::vector<Point> t;
    for (const auto& p : c) t.push_back(p - shift);
    cls.push_back(std::move(t));
  }
  return PointFamily(std::move(cls));
}

inline Certificate selection_certificate(CertificateKind kind, const PointFamily& f, const std::vector<std::size_t>& choice) {
  Certificate c;
  c.kind = kind;
  c.dim = f.dim();
  for (std::size_t i = 0; i < choice.size(); ++i) c.witness.points.push_back({{i, choice[i]}, f[i][choice[i]]});
  return c;
}

inline std::vector<Point> chosen_points(const PointFamily& f, const std::vector<std::size_t>& choice) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < choice.size(); ++i) pts.push_back(f[i][choice[i]]);
  return pts;
}

}  // namespace detail

/// Colored Steinitz selection: 2d classes whose hulls contain the unit ball
/// around the origin; returns one point per class whose hull contains a
/// certified ball around the origin.
inline SteinitzResult colored_steinitz_ball(const PointFamily& f, const Scalar& precision = default_precision()) {
  const int d = f.dim();
  const auto du = static_cast<std::size_t>(d);
  require(f.size() == 2 * du, ErrorCode::precondition,
          "colored Steinitz needs exactly 2d = " + std::to_string(2 * du) + " classes, got " + std::to_string(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i) detail::require_unit_ball(f[i], i);

  const auto simplex = convex::make_inscribed_simplex(d);
  ConeCoverTrace trace;
  trace.rho = simplex.inradius;
  std::vector<std::vector<std::size_t>> reduced;
  for (std::size_t i = 0; i < f.size(); ++i) reduced.push_back(reduce_support(f[i], simplex.simplex));

  // All rainbow cones from the first d reduced classes.
  struct Cone {
    std::vector<std::size_t> ids;  // class-local indices
    std::vector<Point> gens;
    std::optional<detail::ConeAngle> angle;
  };
  std::vector<Cone> cones;
  std::vector<std::size_t> pos(du, 0);
  for (;;) {
    Cone c;
    for (std::size_t i = 0; i < du; ++i) {
      c.ids.push_back(reduced[i][pos[i]]);
      c.gens.push_back(f[i][reduced[i][pos[i]]]);
    }
    c.angle = detail::cone_angle(c.gens, precision);
    cones.push_back(std::move(c));
    std::size_t k = du;
    while (k > 0 && ++pos[k - 1] == reduced[k - 1].size()) pos[--k] = 0;
    if (k == 0) break;
  }
  for (const auto& c : cones) trace.cones.push_back(c.ids);
  const std::size_t n = cones.size();

  // The cones cover R^d (very colorful Caratheodory with anchor 0).
  std::vector<std::vector<Point>> live;
  for (const auto& c : cones) {
    if (c.angle) live.push_back(c.gens);
  }
  if (d <= 2) {
    trace.cover_exact = true;
    const bool covered = d == 1 ? std::any_of(live.begin(), live.end(), [](const auto& g) { return g[0][0].sign() > 0; }) &&
                                      std::any_of(live.begin(), live.end(), [](const auto& g) { return g[0][0].sign() < 0; })
                                : detail::planar_cover(live);
    require(covered, ErrorCode::internal, "rainbow cones do not cover the plane");
  } else {
    const auto sample = approx::detail::sphere_directions(64);
    for (const auto& w : sample) {
      const bool hit = std::any_of(live.begin(), live.end(), [&](const auto& g) { return detail::in_cone(g, w); });
      require(hit, ErrorCode::internal, "rainbow cones miss a sampled direction");
    }
    trace.cover_samples = sample.size();
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto alpha_of = [&](std::size_t i) { return cones[i].angle ? cones[i].angle->alpha : Scalar(0); };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return alpha_of(x) > alpha_of(y); });
  trace.alpha_max = alpha_of(order.front());
  trace.alpha_floor = Scalar(2) * pi_lower() / Scalar(static_cast<long>(du * n));
  // On the line the cones are rays and the area count says nothing.
  require(d == 1 || trace.alpha_max >= trace.alpha_floor * (Scalar(1) - precision), ErrorCode::internal,
          "largest cone angle is below 2 pi / (d n)");
  // pi / (n d^2) >= (pi / e^2) d^(-2d-2) uses n <= (d+1)^(2d) <= e^2 d^(2d).
  trace.chain_constant = pi_lower() / Scalar(static_cast<long>(n * du * du));
  require(n <= static_cast<std::size_t>(std::pow(d + 1, 2 * d)) && trace.chain_constant >= steinitz_radius_upper(d),
          ErrorCode::internal, "cone count exceeds the (d+1)^(2d) budget");

  const Scalar bound = steinitz_radius_upper(d);
  const Point origin = Point::zero(d);
  const PointFamily second = detail::subfamily(f, du, du, &reduced);
  std::optional<std::pair<Scalar, std::vector<std::size_t>>> best;
  ConeCoverTrace best_trace;
  for (std::size_t rank = 0; rank < n; ++rank) {
    const Cone& cone = cones[order[rank]];
    if (!cone.angle) break;
    const Point& a = cone.angle->a;
    const Point target = -(a * (trace.rho / sqrt_upper(norm_squared(a), precision)));
    const RainbowSelection sel = very_colorful_caratheodory(second, target, origin);
    std::vector<std::size_t> choice = cone.ids;
    for (std::size_t i = 0; i < du; ++i) choice.push_back(reduced[du + i][sel.choice[i]]);
    const auto pts = detail::chosen_points(f, choice);
    const auto rb = convex::ball_in_hull_radius(pts, origin, precision);

    ConeCoverTrace t = trace;
    t.chosen = order[rank];
    t.tried = rank + 1;
    t.a = a;
    t.alpha = cone.angle->alpha;
    const Scalar& s = cone.angle->sin_alpha;
    const Scalar cos_up = sqrt_upper(Scalar(1) - s * s, precision);
    t.predicted = trace.rho * sqrt_lower((Scalar(1) - min(cos_up, Scalar(1))) / Scalar(2), precision);
    t.tan_formula = cos_up.is_zero() ? Scalar(0) : s / cos_up / Scalar(2 * d);
    t.radius = rb.radius;
    t.predicted_met = rb.radius >= t.predicted;

    if (!best || rb.radius_squared > best->first) {
      best = std::make_pair(rb.radius_squared, choice);
      best_trace = t;
    }
    if (rb.radius_squared >= bound * bound) break;
  }
  require(best.has_value(), ErrorCode::internal, "no nondegenerate rainbow cone");
  const auto pts = detail::chosen_points(f, best->second);
  require(convex::in_hull(pts, origin), ErrorCode::internal, "selection hull misses the origin");

  SteinitzResult out;
  out.choice = best->second;
  out.certificate = detail::selection_certificate(CertificateKind::steinitz_ball, f, out.choice);
  auto& claim = out.certificate.claim;
  claim.center = origin;
  claim.radius_squared = best->first;
  claim.radius = sqrt_lower(best->first, precision);
  claim.bound = bound;
  claim.bound_met = best->first >= bound * bound;
  out.trace = std::move(best_trace);
  return out;
}

/// Volume Steinitz selection: classes whose hulls contain K; returns a
/// rainbow selection whose hull has volume at least (1 - eps) vol(K).
/// `inner` overrides the inscribed polytope P of K taken from the approximation module.
inline SteinitzResult thrifty_steinitz_volume(const PointFamily& f, const VPolytope& k, const Scalar& eps,
                                              const std::optional<VPolytope>& inner = std::nullopt) {
  const int d = k.dim();
  const auto du = static_cast<std::size_t>(d);
  require(f.dim() == d, ErrorCode::dimension, "class and body dimensions differ");
  require(d <= convex::kCertifiedVolumeDim, ErrorCode::unsupported, "volume certificates need d <= 3");
  const auto kv = convex::hull_vertices(k.vertices());
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (const auto& v : kv) {
      require(convex::in_hull(f[i], v), ErrorCode::precondition,
              "K is not contained in the hull of class " + std::to_string(i));
    }
  }
  const Scalar vol_k = convex::volume(VPolytope(d, kv));
  require(vol_k.sign() > 0, ErrorCode::precondition, "K must have positive volume");

  std::vector<Point> p;
  if (inner) {
    for (const auto& v : inner->vertices()) {
      require(convex::in_hull(kv, v), ErrorCode::precondition, "supplied polytope is not inside K");
    }
    p = convex::hull_vertices(inner->vertices());
    require(convex::volume(VPolytope(d, p)) >= (Scalar(1) - eps) * vol_k, ErrorCode::precondition,
            "supplied polytope has less than (1 - eps) of the volume of K");
  } else {
    p = approx::inscribed_poly(VPolytope(d, kv), eps).vertices;
  }
  const std::size_t blocks = p.size();
  require(f.size() >= du * blocks, ErrorCode::budget,
          "infeasible budget: " + std::to_string(f.size()) + " classes, the construction needs d k = " +
              std::to_string(du * blocks));

  // An interior point of P becomes the origin (the anchor of every block).
  const Point c = convex::centroid(p);
  const PointFamily shifted = detail::translated(f, c);
  std::vector<std::size_t> choice(f.size(), 0);
  for (std::size_t j = 0; j < blocks; ++j) {
    const PointFamily block = detail::subfamily(shifted, j * du, du);
    const RainbowSelection sel = very_colorful_caratheodory(block, p[j] - c, Point::zero(d));
    for (std::size_t i = 0; i < du; ++i) choice[j * du + i] = sel.choice[i];
  }
  const auto pts = detail::chosen_points(f, choice);
  for (const auto& v : p) require(convex::in_hull(pts, v), ErrorCode::internal, "selection hull misses a vertex of P");
  const Scalar vol = convex::affine_dimension(pts) < d ? Scalar(0) : convex::volume(VPolytope(d, pts));

  SteinitzResult out;
  out.choice = choice;
  out.certificate = detail::selection_certificate(CertificateKind::steinitz_volume, f, choice);
  auto& claim = out.certificate.claim;
  claim.ratio = vol / vol_k;
  claim.bound = Scalar(1) - eps;
  claim.bound_met = *claim.ratio >= *claim.bound;
  return out;
}

namespace detail {

/// Reflection x -> x - 2 v (v.x) / (v.v); exact and orthogonal for rational v.
inline Point reflect(const Point& x, const Point& v) { return x - v * (Scalar(2) * dot(v, x) / norm_squared(v)); }

}  // namespace detail

/// Ball Steinitz selection with (k-1)d + 1 classes, k the vertex count of a
/// sandwich polytope P inside B_1(0) inside (1 + eps) P.
inline SteinitzResult steinitz_ball_eps(const PointFamily& f, const Scalar& eps, const Scalar& precision = default_precision()) {
  const int d = f.dim();
  const auto du = static_cast<std::size_t>(d);
  require(eps.sign() > 0, ErrorCode::precondition, "epsilon must be positive");
  const Point origin = Point::zero(d);
  const Scalar target = Scalar(1) / ((Scalar(1) + eps) * (Scalar(1) + eps));

  const auto sandwich = approx::sandwich_bms(Ball(origin, Scalar(1)), eps);
  std::vector<Point> p = sandwich.vertices;
  const std::size_t k = p.size();
  const std::size_t needed = (k - 1) * du + 1;
  require(f.size() >= needed, ErrorCode::budget,
          "infeasible budget: " + std::to_string(f.size()) + " classes, the construction needs (k - 1) d + 1 = " +
              std::to_string(needed));

  // The last class captures the last vertex alone: pick its farthest point and
  // turn P by an exact reflection so that vertex points at it.
  // The last class only has to reach the unit sphere; every other class must contain B_1(0).
  const std::size_t last = (k - 1) * du;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i != last) detail::require_unit_ball(f[i], i);
  }
  require(std::any_of(f[last].begin(), f[last].end(), [](const Point& x) { return norm_squared(x) >= Scalar(1); }),
          ErrorCode::precondition, "class " + std::to_string(last) + " has no point outside the open unit ball");
  std::size_t far = 0;
  for (std::size_t j = 1; j < f[last].size(); ++j) {
    if (norm_squared(f[last][j]) > norm_squared(f[last][far])) far = j;
  }
  const Point& xl = f[last][far];
  if (d == 1) {
    if ((p.back()[0] * xl[0]).sign() < 0) std::swap(p.front(), p.back());
  } else {
    std::vector<double> v(du);
    double yn = 0;
    double xn = 0;
    for (std::size_t i = 0; i < du; ++i) {
      yn += p.back()[i].to_double() * p.back()[i].to_double();
      xn += xl[i].to_double() * xl[i].to_double();
    }
    std::vector<Scalar> vc(du);
    for (std::size_t i = 0; i < du; ++i) vc[i] = dyadic(p.back()[i].to_double() / std::sqrt(yn) - xl[i].to_double() / std::sqrt(xn), 40);
    const Point mirror(std::move(vc));
    if (!mirror.is_zero()) {
      for (auto& y : p) y = detail::reflect(y, mirror);
    }
  }
  p.back() = xl * (sqrt_lower(norm_squared(p.back()), precision) / sqrt_upper(norm_squared(xl), precision));
  const auto inner = convex::ball_in_hull_radius(p, origin, precision);
  require(inner.radius_squared >= target, ErrorCode::internal, "aligned sandwich polytope lost its inradius");

  std::vector<std::size_t> choice(f.size(), 0);
  choice[last] = far;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    const PointFamily block = detail::subfamily(f, j * du, du);
    const RainbowSelection sel = very_colorful_caratheodory(block, p[j], origin);
    for (std::size_t i = 0; i < du; ++i) choice[j * du + i] = sel.choice[i];
  }
  const auto pts = detail::chosen_points(f, choice);
  for (const auto& v : p) require(convex::in_hull(pts, v), ErrorCode::internal, "selection hull misses a vertex of P");
  const auto rb = convex::ball_in_hull_radius(pts, origin, precision);

  SteinitzResult out;
  out.choice = choice;
  out.certificate = detail::selection_certificate(CertificateKind::steinitz_ball, f, choice);
  auto& claim = out.certificate.claim;
  claim.center = origin;
  claim.radius_squared = rb.radius_squared;
  claim.radius = rb.radius;
  claim.bound = Scalar(1) / (Scalar(1) + eps);
  claim.bound_met = rb.radius_squared >= target;
  return out;
}

}  // namespace qc
