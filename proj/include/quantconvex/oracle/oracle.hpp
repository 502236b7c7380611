#pragma once

// Independent certificate checker. Uses only core types plus the oracle's
// own LP and brute-force geometry; nothing from quantconvex/convex.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quantconvex/core/error.hpp"
#include "quantconvex/core/instance.hpp"
#include "quantconvex/core/types.hpp"
#include "quantconvex/oracle/geometry.hpp"
#include "quantconvex/oracle/lp.hpp"

namespace qc::oracle {

struct Report {
  bool ok = true;
  std::vector<std::string> violations;

  void fail(std::string what) {
    ok = false;
    violations.push_back(std::move(what));
  }
  [[nodiscard]] std::string text() const {
    if (ok) return "PASS\n";
    std::string s = "FAIL\n";
    for (const auto& v : violations) s += "  violated: " + v + "\n";
    return s;
  }
};

/// Slack allowed between the certified radius and the exact inradius: the
/// radius r must satisfy r^2 <= radius_squared < (r + 10^-6)^2.
inline Scalar radius_tolerance() { return Scalar(1, 1'000'000); }

namespace detail {

inline std::string at_str(const std::vector<std::size_t>& at) {
  std::string s = "[";
  for (std::size_t i = 0; i < at.size(); ++i) s += (i ? "," : "") + std::to_string(at[i]);
  return s + "]";
}

/// Fields each kind must carry, and nothing else.
struct Shape {
  bool points = false, halfspaces = false, parts = false, unused = false;
  bool target = false, weights = false, center = false, radius = false, ratio = false, bound = false;
};

inline Shape shape_of(const Instance& in) {
  Shape s;
  switch (in.kind) {
    case CertificateKind::caratheodory_selection:
      s.points = s.target = s.weights = true;
      break;
    case CertificateKind::steinitz_ball:
      s.points = s.center = s.radius = s.bound = true;
      break;
    case CertificateKind::steinitz_volume:
      s.points = s.ratio = s.bound = true;
      break;
    case CertificateKind::helly_volume:
    case CertificateKind::helly_diameter:
    case CertificateKind::colorful_helly:
      s.halfspaces = s.ratio = s.bound = true;
      break;
    case CertificateKind::tverberg:
      if (in.classic_tverberg()) {
        s.points = s.parts = s.target = s.weights = true;
        break;
      }
      [[fallthrough]];
    case CertificateKind::colorful_tverberg:
      s.points = s.parts = s.unused = s.center = s.radius = s.bound = true;
      break;
  }
  return s;
}

inline void check_shape(const Certificate& c, const Instance& in, Report& r) {
  const Shape s = shape_of(in);
  auto expect = [&](bool want, bool has, const char* name) {
    if (want && !has) r.fail(std::string("missing ") + name);
    if (!want && has) r.fail(std::string("unexpected ") + name + " for this kind");
  };
  expect(s.points, !c.witness.points.empty(), "witness.points");
  expect(s.halfspaces, !c.witness.halfspaces.empty(), "witness.halfspaces");
  expect(s.parts, !c.witness.parts.empty(), "witness.parts");
  if (!s.unused && !c.witness.unused.empty()) r.fail("unexpected witness.unused for this kind");
  expect(s.target, c.claim.target.has_value(), "claim.target");
  if (!(in.kind == CertificateKind::caratheodory_selection && in.anchor) && c.claim.anchor) r.fail("unexpected claim.anchor");
  expect(s.weights, !c.claim.weights.empty(), "claim.weights");
  expect(s.center, c.claim.center.has_value(), "claim.center");
  expect(s.radius, c.claim.radius_squared.has_value(), "claim.radius_squared");
  expect(s.radius, c.claim.radius.has_value(), "claim.radius");
  expect(s.ratio, c.claim.ratio.has_value(), "claim.ratio");
  expect(s.bound, c.claim.bound.has_value(), "claim.bound");
  expect(s.bound, c.claim.bound_met.has_value(), "claim.bound_met");
}

/// Every point pick must quote the instance at its index path.
inline bool check_point_picks(const Certificate& c, const Instance& in, Report& r) {
  bool good = true;
  for (std::size_t k = 0; k < c.witness.points.size(); ++k) {
    const auto& pk = c.witness.points[k];
    const Point* src = nullptr;
    const auto& a = pk.at;
    if (in.kind == CertificateKind::colorful_tverberg) {
      if (a.size() == 3 && a[0] < in.colors.size() && a[1] < in.colors[a[0]].size() && a[2] < in.colors[a[0]][a[1]].size()) {
        src = &in.colors[a[0]][a[1]][a[2]];
      }
    } else if (in.classic_tverberg()) {
      if (a.size() == 1 && a[0] < in.points.size()) src = &in.points[a[0]];
    } else if (in.kind == CertificateKind::tverberg) {
      if (a.size() == 2 && a[0] < in.sets.size() && a[1] < in.sets[a[0]].size()) src = &in.sets[a[0]][a[1]];
    } else {
      if (a.size() == 2 && a[0] < in.classes.size() && a[1] < in.classes[a[0]].size()) src = &in.classes[a[0]][a[1]];
    }
    if (!src) {
      r.fail("witness.points[" + std::to_string(k) + "].at " + at_str(a) + " is not a valid index into the instance");
      good = false;
    } else if (!(*src == pk.point)) {
      r.fail("witness.points[" + std::to_string(k) + "].point differs from the instance point at " + at_str(a));
      good = false;
    }
  }
  return good;
}

/// One pick per class, in class order.
inline bool check_rainbow(const Certificate& c, std::size_t classes, Report& r) {
  if (c.witness.points.size() != classes) {
    r.fail("witness.points has " + std::to_string(c.witness.points.size()) + " picks for " + std::to_string(classes) + " classes");
    return false;
  }
  for (std::size_t i = 0; i < classes; ++i) {
    if (c.witness.points[i].at.empty() || c.witness.points[i].at[0] != i) {
      r.fail("witness.points[" + std::to_string(i) + "] is not taken from class " + std::to_string(i));
      return false;
    }
  }
  return true;
}

inline std::vector<Point> picked(const Certificate& c) {
  std::vector<Point> out;
  for (const auto& p : c.witness.points) out.push_back(p.point);
  return out;
}

/// Parts must partition the witness point indices.
inline bool check_parts(const Certificate& c, Report& r) {
  std::vector<int> seen(c.witness.points.size(), 0);
  for (std::size_t k = 0; k < c.witness.parts.size(); ++k) {
    if (c.witness.parts[k].empty()) {
      r.fail("witness.parts[" + std::to_string(k) + "] is empty");
      return false;
    }
    for (auto i : c.witness.parts[k]) {
      if (i >= seen.size()) {
        r.fail("witness.parts[" + std::to_string(k) + "] names point " + std::to_string(i) + " outside the witness");
        return false;
      }
      ++seen[i];
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] != 1) {
      r.fail("witness.parts do not partition the witness points (point " + std::to_string(i) + " appears " +
             std::to_string(seen[i]) + " times)");
      return false;
    }
  }
  return true;
}

/// Convex weights over `pts` reproducing `target`.
inline void check_weights(const std::vector<Scalar>& w, const std::vector<Point>& pts, const Point& target,
                          const std::string& name, Report& r) {
  if (w.size() != pts.size()) {
    r.fail(name + " has " + std::to_string(w.size()) + " entries for " + std::to_string(pts.size()) + " points");
    return;
  }
  Scalar sum;
  Point comb = Point::zero(target.dim());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].sign() < 0) {
      r.fail(name + "[" + std::to_string(i) + "] is negative");
      return;
    }
    sum += w[i];
    comb += pts[i] * w[i];
  }
  if (sum != Scalar(1)) r.fail(name + " sums to " + sum.str() + ", not 1");
  else if (!(comb == target)) r.fail(name + " combine to " + comb.str() + ", not the target " + target.str());
}

/// radius_squared recomputed, radius enclosure, and the bound for ball claims.
inline void check_ball(const Certificate& c, const Instance& in, const Scalar& r2, Report& r) {
  const Claim& k = c.claim;
  if (*k.radius_squared != r2) r.fail("claim.radius_squared is " + k.radius_squared->str() + ", recomputed " + r2.str());
  const Scalar& rad = *k.radius;
  if (rad.sign() < 0 || rad * rad > r2) r.fail("claim.radius exceeds the exact inradius");
  else if ((rad + radius_tolerance()) * (rad + radius_tolerance()) <= r2) r.fail("claim.radius is below the inradius by more than the tolerance");
  const int d = in.dim;
  Scalar bound;
  bool met = false;
  if (in.epsilon) {
    const Scalar one_eps = Scalar(1) + *in.epsilon;
    bound = Scalar(1) / one_eps;
    met = r2 * one_eps * one_eps >= Scalar(1);
  } else {
    bound = steinitz_radius_upper(d);
    met = r2 >= bound * bound;
  }
  if (*k.bound != bound) r.fail("claim.bound is " + k.bound->str() + ", the instance gives " + bound.str());
  if (*k.bound_met != met) r.fail(std::string("claim.bound_met is ") + (*k.bound_met ? "true" : "false") + " but the radius says otherwise");
}

inline void check_ratio(const Certificate& c, const Scalar& ratio, const Scalar& bound, bool met, Report& r) {
  const Claim& k = c.claim;
  if (*k.ratio != ratio) r.fail("claim.ratio is " + k.ratio->str() + ", recomputed " + ratio.str());
  if (*k.bound != bound) r.fail("claim.bound is " + k.bound->str() + ", the instance gives " + bound.str());
  if (*k.bound_met != met) r.fail(std::string("claim.bound_met is ") + (*k.bound_met ? "true" : "false") + " but the ratio says otherwise");
}

inline bool check_halfspace_picks(const Certificate& c, const Instance& in, Report& r) {
  for (std::size_t k = 0; k < c.witness.halfspaces.size(); ++k) {
    const auto& h = c.witness.halfspaces[k];
    const HalfSpace* src = nullptr;
    if (in.kind == CertificateKind::colorful_helly) {
      if (h.at.size() == 2 && h.at[0] < in.families.size() && h.at[1] < in.families[h.at[0]].size()) src = &in.families[h.at[0]][h.at[1]];
    } else if (h.at.size() == 1 && h.at[0] < in.halfspaces.size()) {
      src = &in.halfspaces[h.at[0]];
    }
    if (!src) {
      r.fail("witness.halfspaces[" + std::to_string(k) + "].at " + at_str(h.at) + " is not a valid index into the instance");
      return false;
    }
    if (!(*src == h.halfspace)) {
      r.fail("witness.halfspaces[" + std::to_string(k) + "] differs from the instance half-space at " + at_str(h.at));
      return false;
    }
  }
  return true;
}

inline std::vector<HalfSpace> picked_halfspaces(const Certificate& c) {
  std::vector<HalfSpace> out;
  for (const auto& h : c.witness.halfspaces) out.push_back(h.halfspace);
  return out;
}

inline void require_epsilon(const Instance& in) {
  require(in.epsilon.has_value(), ErrorCode::precondition, "instance needs an epsilon for this kind");
  require(in.epsilon->sign() > 0, ErrorCode::precondition, "instance epsilon must be positive");
}

// -- per kind ---------------------------------------------------------------

inline void verify_selection(const Certificate& c, const Instance& in, Report& r) {
  if (!check_point_picks(c, in, r) || !check_rainbow(c, in.classes.size(), r)) return;
  if (!(*c.claim.target == *in.target)) r.fail("claim.target differs from the instance target");
  if (in.anchor && !(c.claim.anchor && *c.claim.anchor == *in.anchor)) r.fail("claim.anchor differs from the instance anchor");
  if (c.claim.weights.size() != 1) {
    r.fail("claim.weights must hold exactly one weight vector");
    return;
  }
  std::vector<Point> pts = picked(c);
  if (in.anchor) pts.push_back(*in.anchor);
  check_weights(c.claim.weights[0], pts, *in.target, "claim.weights[0]", r);
}

inline void verify_steinitz_ball(const Certificate& c, const Instance& in, Report& r) {
  if (!check_point_picks(c, in, r) || !check_rainbow(c, in.classes.size(), r)) return;
  check_ball(c, in, geo::inradius_squared(picked(c), *c.claim.center), r);
}

inline void verify_steinitz_volume(const Certificate& c, const Instance& in, Report& r) {
  require_epsilon(in);
  require(!in.body.empty(), ErrorCode::precondition, "steinitz-volume instance needs a body");
  if (!check_point_picks(c, in, r) || !check_rainbow(c, in.classes.size(), r)) return;
  const Scalar vk = geo::volume(in.body, in.dim);
  require(vk.sign() > 0, ErrorCode::precondition, "instance body has zero volume");
  const Scalar ratio = geo::volume(picked(c), in.dim) / vk;
  const Scalar bound = Scalar(1) - *in.epsilon;
  check_ratio(c, ratio, bound, ratio >= bound, r);
}

inline void verify_helly(const Certificate& c, const Instance& in, Report& r) {
  require_epsilon(in);
  require(!in.halfspaces.empty(), ErrorCode::precondition, "helly instance needs half-spaces");
  if (!check_halfspace_picks(c, in, r)) return;
  for (std::size_t k = 1; k < c.witness.halfspaces.size(); ++k) {
    if (c.witness.halfspaces[k].at[0] <= c.witness.halfspaces[k - 1].at[0]) {
      r.fail("witness.halfspaces are not strictly increasing in index");
      return;
    }
  }
  const int d = in.dim;
  const auto sub = picked_halfspaces(c);
  const Scalar one_eps = Scalar(1) + *in.epsilon;
  if (!geo::bounded(sub, d) || !geo::nonempty(sub, d)) {
    r.fail("the subfamily intersection is empty or unbounded");
    return;
  }
  require(geo::nonempty(in.halfspaces, d) && geo::bounded(in.halfspaces, d), ErrorCode::precondition,
          "instance intersection must be nonempty and bounded");
  if (in.kind == CertificateKind::helly_volume) {
    const Scalar all = geo::volume(geo::vertices(in.halfspaces, d), d);
    require(all.sign() > 0, ErrorCode::precondition, "instance intersection has zero volume");
    const Scalar ratio = geo::volume(geo::vertices(sub, d), d) / all;
    check_ratio(c, ratio, one_eps, ratio <= one_eps, r);
  } else {
    const Scalar all = geo::diameter_squared(geo::vertices(in.halfspaces, d));
    require(all.sign() > 0, ErrorCode::precondition, "instance intersection is a single point");
    const Scalar ratio = geo::diameter_squared(geo::vertices(sub, d)) / all;
    check_ratio(c, ratio, one_eps * one_eps, ratio <= one_eps * one_eps, r);
  }
}

inline void verify_colorful_helly(const Certificate& c, const Instance& in, Report& r) {
  require_epsilon(in);
  require(!in.families.empty(), ErrorCode::precondition, "colorful-helly instance needs families");
  if (!check_halfspace_picks(c, in, r)) return;
  if (c.witness.halfspaces.size() != in.families.size()) {
    r.fail("witness.halfspaces must pick one half-space per family");
    return;
  }
  for (std::size_t i = 0; i < in.families.size(); ++i) {
    if (c.witness.halfspaces[i].at[0] != i) {
      r.fail("witness.halfspaces[" + std::to_string(i) + "] is not taken from family " + std::to_string(i));
      return;
    }
  }
  const int d = in.dim;
  Scalar ref;
  for (std::size_t i = 0; i < in.families.size(); ++i) {
    const auto v = geo::intersection_volume(in.families[i], d);
    require(v && v->sign() > 0, ErrorCode::precondition, "family " + std::to_string(i) + " needs a bounded intersection with positive volume");
    ref = max(ref, *v);
  }
  const auto v = geo::intersection_volume(picked_halfspaces(c), d);
  if (!v) {
    r.fail("the rainbow intersection is unbounded");
    return;
  }
  const Scalar ratio = *v / ref;
  const Scalar bound = Scalar(1) + *in.epsilon;
  check_ratio(c, ratio, bound, ratio <= bound, r);
}

inline void verify_classic_tverberg(const Certificate& c, const Instance& in, Report& r) {
  require(in.parts.has_value(), ErrorCode::precondition, "tverberg instance needs parts");
  if (!check_point_picks(c, in, r)) return;
  if (c.witness.points.size() != in.points.size()) {
    r.fail("witness.points must list every instance point");
    return;
  }
  for (std::size_t i = 0; i < in.points.size(); ++i) {
    if (c.witness.points[i].at[0] != i) {
      r.fail("witness.points[" + std::to_string(i) + "] is not instance point " + std::to_string(i));
      return;
    }
  }
  if (!check_parts(c, r)) return;
  if (c.witness.parts.size() != *in.parts) {
    r.fail("witness.parts has " + std::to_string(c.witness.parts.size()) + " parts, the instance asks for " + std::to_string(*in.parts));
    return;
  }
  if (c.claim.weights.size() != c.witness.parts.size()) {
    r.fail("claim.weights needs one weight vector per part");
    return;
  }
  std::vector<std::vector<Point>> groups;
  for (std::size_t k = 0; k < c.witness.parts.size(); ++k) {
    std::vector<Point> g;
    for (auto i : c.witness.parts[k]) g.push_back(c.witness.points[i].point);
    check_weights(c.claim.weights[k], g, *c.claim.target, "claim.weights[" + std::to_string(k) + "]", r);
    groups.push_back(std::move(g));
  }
  // Second route: the oracle LP must also find a common point.
  if (r.ok && !lp::common_point(groups)) r.fail("oracle LP finds no common point of the parts");
}

inline void verify_quant_tverberg(const Certificate& c, const Instance& in, Report& r) {
  require(in.parts.has_value(), ErrorCode::precondition, "tverberg instance needs parts");
  if (!check_point_picks(c, in, r) || !check_parts(c, r)) return;
  if (c.witness.parts.size() != *in.parts) {
    r.fail("witness.parts has " + std::to_string(c.witness.parts.size()) + " parts, the instance asks for " + std::to_string(*in.parts));
    return;
  }
  // Each set contributes at most one point; `unused` is exactly the rest.
  const bool colorful = in.kind == CertificateKind::colorful_tverberg;
  std::size_t per = 0;
  std::size_t total = in.sets.size();
  if (colorful) {
    per = in.colors.front().size();
    for (const auto& col : in.colors) require(col.size() == per, ErrorCode::precondition, "colors must hold equally many sets");
    total = in.colors.size() * per;
  }
  std::vector<bool> used(total, false);
  for (std::size_t k = 0; k < c.witness.points.size(); ++k) {
    const auto& a = c.witness.points[k].at;
    const std::size_t id = colorful ? a[0] * per + a[1] : a[0];
    if (used[id]) {
      r.fail("witness.points[" + std::to_string(k) + "] reuses a set");
      return;
    }
    used[id] = true;
  }
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < total; ++i) {
    if (!used[i]) rest.push_back(i);
  }
  if (c.witness.unused != rest) r.fail("witness.unused is not the list of sets without a pick");
  std::optional<Scalar> r2;
  for (const auto& part : c.witness.parts) {
    std::vector<Point> g;
    for (auto i : part) g.push_back(c.witness.points[i].point);
    const Scalar v = geo::inradius_squared(g, *c.claim.center);
    if (!r2 || v < *r2) r2 = v;
  }
  check_ball(c, in, *r2, r);
}

}  // namespace detail

/// Re-checks every field of `cert` against `instance`. Throws
/// ErrorCode::precondition when the kinds disagree or the instance itself is
/// malformed for its kind; otherwise reports each violated constraint.
inline Report verify(const Certificate& cert, const Instance& instance) {
  require(cert.kind == instance.kind, ErrorCode::precondition,
          "certificate kind " + std::string(to_string(cert.kind)) + " does not match instance kind " +
              std::string(to_string(instance.kind)));
  Report r;
  if (!cert.exact) r.fail("certificate is not in exact mode");
  if (cert.dim != instance.dim) r.fail("dim is " + std::to_string(cert.dim) + ", the instance has " + std::to_string(instance.dim));
  detail::check_shape(cert, instance, r);
  if (!r.ok) return r;
  switch (cert.kind) {
    case CertificateKind::caratheodory_selection:
      require(instance.target.has_value(), ErrorCode::precondition, "selection instance needs a target");
      detail::verify_selection(cert, instance, r);
      break;
    case CertificateKind::steinitz_ball: detail::verify_steinitz_ball(cert, instance, r); break;
    case CertificateKind::steinitz_volume: detail::verify_steinitz_volume(cert, instance, r); break;
    case CertificateKind::helly_volume:
    case CertificateKind::helly_diameter: detail::verify_helly(cert, instance, r); break;
    case CertificateKind::colorful_helly: detail::verify_colorful_helly(cert, instance, r); break;
    case CertificateKind::tverberg:
      if (instance.classic_tverberg()) detail::verify_classic_tverberg(cert, instance, r);
      else detail::verify_quant_tverberg(cert, instance, r);
      break;
    case CertificateKind::colorful_tverberg: detail::verify_quant_tverberg(cert, instance, r); break;
  }
  return r;
}

/// verify() plus the `verified` flag.
inline Certificate certify(Certificate cert, const Instance& instance) {
  const Report r = verify(cert, instance);
  cert.verified = r.ok;
  return cert;
}

}  // namespace qc::oracle
