#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "quantconvex/core/instance.hpp"
#include "quantconvex/core/types.hpp"
#include "quantconvex/tverberg.hpp"

namespace qc::gen {

struct Params {
  int dim = 2;
  std::size_t count = 0;     // classes / half-spaces per family (0: a default per kind)
  std::size_t parts = 2;     // m for the Tverberg kinds
  std::size_t families = 0;  // halfspace-family: > 0 makes a colorful-helly instance
  std::optional<Scalar> epsilon;
  std::size_t n_prime = 0;   // Tverberg kinds with epsilon: sandwich vertex count
};

namespace detail {

// Pythagorean triples (a, b, c): (a/c, b/c) is a rational point of the unit circle.
inline constexpr std::array<std::array<long, 3>, 10> kTriples{{{3, 4, 5},
                                                               {5, 12, 13},
                                                               {8, 15, 17},
                                                               {7, 24, 25},
                                                               {20, 21, 29},
                                                               {12, 35, 37},
                                                               {9, 40, 41},
                                                               {28, 45, 53},
                                                               {11, 60, 61},
                                                               {33, 56, 65}}};

inline long pick(std::mt19937_64& rng, long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); }

inline Scalar coord(std::mt19937_64& rng, long range, long den) { return Scalar(pick(rng, -range * den, range * den), den); }

/// Random exact rotation: a rational plane rotation in every coordinate plane.
struct Rotation {
  struct Plane {
    std::size_t i, j;
    Scalar c, s;
  };
  std::vector<Plane> planes;

  Point apply(Point p) const {
    for (const auto& pl : planes) {
      const Scalar x = p[pl.i];
      const Scalar y = p[pl.j];
      p[pl.i] = pl.c * x - pl.s * y;
      p[pl.j] = pl.s * x + pl.c * y;
    }
    return p;
  }
};

inline Rotation rotation(std::mt19937_64& rng, int d) {
  Rotation r;
  for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i) {
    for (std::size_t j = i + 1; j < static_cast<std::size_t>(d); ++j) {
      const auto& t = kTriples[rng() % kTriples.size()];
      const bool swap = (rng() & 1U) != 0;
      const long sa = (rng() & 1U) != 0 ? -1 : 1;
      const long sb = (rng() & 1U) != 0 ? -1 : 1;
      r.planes.push_back({i, j, Scalar(sa * (swap ? t[1] : t[0]), t[2]), Scalar(sb * (swap ? t[0] : t[1]), t[2])});
    }
  }
  return r;
}

/// A rotated cross-polytope of half-width s >= sqrt(d) around `center` (so it
/// contains B_1(center)), plus up to `extra` distinct random points, shuffled.
inline std::vector<Point> ball_set(std::mt19937_64& rng, const Point& center, std::size_t extra, long range) {
  const int d = center.dim();
  const auto du = static_cast<std::size_t>(d);
  long root = 1;
  while (root * root < d) ++root;
  const Scalar s = Scalar(root) + Scalar(pick(rng, 0, 10), 10L);
  const Rotation rot = rotation(rng, d);
  std::vector<Point> out;
  for (std::size_t k = 0; k < du; ++k) {
    for (long sign : {1L, -1L}) {
      Point e = Point::zero(d);
      e[k] = s * Scalar(sign);
      out.push_back(center + rot.apply(e));
    }
  }
  for (std::size_t x = static_cast<std::size_t>(pick(rng, 0, static_cast<long>(extra))); x > 0; --x) {
    Point p = center;
    for (std::size_t k = 0; k < du; ++k) p[k] += coord(rng, range, 4);
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(std::move(p));
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

/// `size` half-spaces with the origin interior and a bounded intersection:
/// scaled normals e_1..e_d and -(1..1) first, then random ones, shuffled.
inline std::vector<HalfSpace> bounded_family(std::mt19937_64& rng, int d, std::size_t size) {
  const auto du = static_cast<std::size_t>(d);
  std::vector<HalfSpace> out;
  for (std::size_t k = 0; k <= du; ++k) {
    Point a = Point::zero(d);
    for (std::size_t i = 0; i < du; ++i) {
      if (k == du) a[i] = Scalar(-1);
      else if (i == k) a[i] = Scalar(1);
    }
    out.emplace_back(a * Scalar(pick(rng, 1, 3)), Scalar(pick(rng, 4, 12), 4L));
  }
  while (out.size() < size) {
    Point a = Point::zero(d);
    while (a.is_zero()) {
      for (std::size_t i = 0; i < du; ++i) a[i] = Scalar(pick(rng, -5, 5));
    }
    out.emplace_back(std::move(a), Scalar(pick(rng, 4, 12), 4L));
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

inline Point center(std::mt19937_64& rng, int d) {
  Point c = Point::zero(d);
  for (std::size_t k = 0; k < static_cast<std::size_t>(d); ++k) c[k] = coord(rng, 10, 4);
  return c;
}

inline std::string describe(std::string_view kind, const Params& p) {
  std::string s = std::string(kind) + " d=" + std::to_string(p.dim);
  if (p.count) s += " count=" + std::to_string(p.count);
  if (kind.starts_with("tverberg")) s += " m=" + std::to_string(p.parts);
  if (p.families) s += " families=" + std::to_string(p.families);
  if (p.epsilon) s += " epsilon=" + p.epsilon->str();
  if (p.n_prime) s += " n_prime=" + std::to_string(p.n_prime);
  return s;
}

}  // namespace detail

/// Seeded instance generation; equal (kind, params, seed) give equal instances.
///
///   colored-ball-classes  `count` classes (default 2d), each a rotated
///                         cross-polytope containing B_1(0) plus extra points
///   halfspace-family      `count` half-spaces (default 8) with a bounded
///                         intersection; with `families` > 0, that many such families
///   tverberg-quant        theorem-sized list of sets, each containing B_1(c_i)
///   tverberg-colorful     d+1 colors of theorem-sized set lists
inline Instance generate(std::string_view kind, const Params& p, std::uint64_t seed) {
  require(p.dim >= 1 && p.dim <= 8, ErrorCode::precondition, "generator dimension must be in 1..8");
  std::mt19937_64 rng(seed);
  Instance in;
  in.dim = p.dim;
  in.seed = seed;
  in.construction = detail::describe(kind, p);
  const auto du = static_cast<std::size_t>(p.dim);
  if (kind == "colored-ball-classes") {
    in.kind = CertificateKind::steinitz_ball;
    const std::size_t n = p.count ? p.count : 2 * du;
    for (std::size_t i = 0; i < n; ++i) in.classes.push_back(detail::ball_set(rng, Point::zero(p.dim), 3, 3));
    in.epsilon = p.epsilon;
    *in.construction += "; each class holds a rotated cross-polytope of half-width >= sqrt(d), so its hull contains B_1(0)";
  } else if (kind == "halfspace-family") {
    in.epsilon = p.epsilon ? *p.epsilon : Scalar(1, 10);
    const std::size_t n = std::max(p.count ? p.count : 8, du + 1);
    if (p.families > 0) {
      in.kind = CertificateKind::colorful_helly;
      for (std::size_t f = 0; f < p.families; ++f) in.families.push_back(detail::bounded_family(rng, p.dim, n));
    } else {
      in.kind = CertificateKind::helly_volume;
      in.halfspaces = detail::bounded_family(rng, p.dim, n);
    }
    *in.construction += "; every family contains positive multiples of e_1..e_d and -(1,...,1) with positive offsets, so it is bounded around 0";
  } else if (kind == "tverberg-quant" || kind == "tverberg-colorful") {
    const bool colorful = kind == "tverberg-colorful";
    in.kind = colorful ? CertificateKind::colorful_tverberg : CertificateKind::tverberg;
    in.parts = p.parts;
    const SizeVariant v = p.epsilon ? SizeVariant::eps : SizeVariant::fixed_radius;
    if (p.epsilon) {
      in.epsilon = p.epsilon;
      in.n_prime = p.n_prime;
    }
    const std::size_t n = colorful ? colorful_tverberg_size(p.dim, p.parts, v, p.n_prime) : theorem41_sizes(p.dim, p.parts, v, p.n_prime);
    if (colorful) {
      in.colors.resize(du + 1);
      for (auto& col : in.colors) {
        for (std::size_t j = 0; j < n; ++j) col.push_back(detail::ball_set(rng, detail::center(rng, p.dim), 2, 2));
      }
    } else {
      for (std::size_t j = 0; j < n; ++j) in.sets.push_back(detail::ball_set(rng, detail::center(rng, p.dim), 2, 2));
    }
    *in.construction += "; " + std::to_string(n) + " sets per list, each a rotated cross-polytope around a random center containing B_1(center)";
  } else {
    fail(ErrorCode::precondition, "unknown generator kind '" + std::string(kind) + "'");
  }
  return in;
}

}  // namespace qc::gen
