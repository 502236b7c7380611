#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "quantconvex/approx.hpp"
#include "quantconvex/convex/lp.hpp"

using namespace qc;
using approx::Kind;

namespace {

Ball unit_disk() { return Ball(Point{Scalar(0), Scalar(0)}, Scalar(1)); }

// Closed-form scans used as the independent route for disk regressions.
std::size_t scan_inscribed(double eps) {
  for (std::size_t k = 3;; ++k) {
    if (0.5 * static_cast<double>(k) * std::sin(2 * std::numbers::pi / static_cast<double>(k)) >= (1 - eps) * std::numbers::pi) return k;
  }
}
std::size_t scan_circumscribed(double eps) {
  for (std::size_t k = 3;; ++k) {
    if (static_cast<double>(k) * std::tan(std::numbers::pi / static_cast<double>(k)) <= (1 + eps) * std::numbers::pi) return k;
  }
}
std::size_t scan_sandwich(double eps) {
  for (std::size_t k = 3;; ++k) {
    if (1 / std::cos(std::numbers::pi / static_cast<double>(k)) <= 1 + eps) return k;
  }
}
// Tangent k-gon with unit inradius: circumradius sec(pi/k); the widest vertex
// pair is floor(k/2) steps apart.
std::size_t scan_diameter(double eps) {
  for (std::size_t k = 3;; ++k) {
    const double kk = static_cast<double>(k);
    const double diam = 2 / std::cos(std::numbers::pi / kk) * std::sin(std::numbers::pi * std::floor(kk / 2) / kk);
    if (diam <= 2 * (1 + eps)) return k;
  }
}

VPolytope unit_square() {
  return VPolytope(2, {Point{Scalar(0), Scalar(0)}, Point{Scalar(1), Scalar(0)}, Point{Scalar(1), Scalar(1)},
                       Point{Scalar(0), Scalar(1)}});
}

}  // namespace

TEST(ApproxDisk, InscribedRegression) {
  const auto a = approx::inscribed_poly(unit_disk(), Scalar(1, 100));
  EXPECT_EQ(a.k, scan_inscribed(0.01));
  EXPECT_EQ(a.k, 26U);
  EXPECT_GE(a.ratio, Scalar(99, 100));
  for (const auto& v : a.vertices) EXPECT_EQ(norm_squared(v), Scalar(1));
}

TEST(ApproxDisk, CircumscribedRegression) {
  const auto a = approx::circumscribed_poly(unit_disk(), Scalar(1, 20));
  EXPECT_EQ(a.k, scan_circumscribed(0.05));
  EXPECT_EQ(a.k, 9U);
  EXPECT_LE(a.ratio, Scalar(21, 20));
  EXPECT_EQ(approx::circumscribed_poly(unit_disk(), Scalar(10)).k, 3U);
}

TEST(ApproxDisk, SandwichRegression) {
  const auto a = approx::sandwich_bms(unit_disk(), Scalar(1, 20));
  EXPECT_EQ(a.k, scan_sandwich(0.05));
  EXPECT_EQ(a.k, 11U);
  EXPECT_LE(a.ratio, Scalar(21, 20));
  EXPECT_EQ(approx::sandwich_bms(unit_disk(), Scalar(7, 100)).k, 9U);
}

TEST(ApproxDisk, DiameterRegression) {
  const auto a = approx::diameter_poly(unit_disk(), Scalar(1, 10));
  EXPECT_EQ(a.k, scan_diameter(0.1));
  EXPECT_EQ(a.k, 7U);
  EXPECT_LE(a.ratio, Scalar(121, 100));
}

TEST(ApproxDisk, MonotoneInEpsilon) {
  const std::vector<Scalar> grid{Scalar(1, 200), Scalar(1, 100), Scalar(1, 50), Scalar(1, 20), Scalar(1, 10), Scalar(1, 4)};
  for (Kind kind : {Kind::inscribed_volume, Kind::circumscribed_volume, Kind::sandwich_bms, Kind::circumscribed_diameter}) {
    std::size_t prev = 1U << 20U;
    for (const auto& e : grid) {
      const auto a = approx::approximate({unit_disk(), kind, e, std::nullopt});
      EXPECT_LE(a.k, prev) << approx::to_string(kind) << " at " << e;
      prev = a.k;
    }
  }
}

TEST(ApproxDisk, GridMatchesClosedForm) {
  for (int inv : {5, 10, 20, 40, 80}) {
    const double e = 1.0 / inv;
    EXPECT_EQ(approx::inscribed_poly(unit_disk(), Scalar(1, inv)).k, scan_inscribed(e)) << inv;
    EXPECT_EQ(approx::circumscribed_poly(unit_disk(), Scalar(1, inv)).k, scan_circumscribed(e)) << inv;
  }
}

TEST(ApproxDisk, ShiftedScaledDisk) {
  const Ball b(Point{Scalar(3), Scalar(-2)}, Scalar(5, 2));
  const auto a = approx::inscribed_poly(b, Scalar(1, 100));
  EXPECT_EQ(a.k, 26U);
  for (const auto& v : a.vertices) EXPECT_EQ(distance_squared(v, b.center()), Scalar(25, 4));
}

TEST(ApproxPolygon, SelfApproximationAtZero) {
  const VPolytope hexagon(2, {Point{Scalar(2), Scalar(0)}, Point{Scalar(1), Scalar(2)}, Point{Scalar(-1), Scalar(2)},
                              Point{Scalar(-2), Scalar(0)}, Point{Scalar(-1), Scalar(-2)}, Point{Scalar(1), Scalar(-2)}});
  EXPECT_EQ(approx::inscribed_poly(hexagon, Scalar(0)).k, 6U);
  EXPECT_EQ(approx::circumscribed_poly(hexagon, Scalar(0)).k, 6U);
  EXPECT_EQ(approx::sandwich_bms(hexagon, Scalar(0)).k, 6U);
  EXPECT_EQ(approx::diameter_poly(hexagon, Scalar(0)).k, 6U);
}

TEST(ApproxPolygon, SquareHalfTriangle) {
  const auto a = approx::inscribed_poly(unit_square(), Scalar(1, 2));
  EXPECT_EQ(a.k, 3U);
  EXPECT_EQ(a.ratio, Scalar(1, 2));
  // Every vertex triple of the square spans exactly half of it.
  const VPolytope sq = unit_square();
  const auto& v = sq.vertices();
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Point> tri;
    for (std::size_t j = 0; j < 4; ++j) {
      if (j != i) tri.push_back(v[j]);
    }
    EXPECT_EQ(convex::volume(VPolytope(2, tri)), Scalar(1, 2));
  }
}

TEST(ApproxPolygon, InscribedDpMatchesBruteForce) {
  std::vector<Point> octagon;
  for (int j = 0; j < 8; ++j) octagon.push_back(approx::detail::circle_point(2 * std::numbers::pi * j / 8 + 0.1 * (j % 3)));
  const auto ccw = approx::detail::ccw_hull(octagon);
  const auto dp = approx::detail::max_inscribed_areas(ccw, nullptr);
  const std::size_t n = ccw.size();
  for (std::size_t k = 3; k <= n; ++k) {
    Scalar best;
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
      std::vector<Point> pick;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1U << i)) pick.push_back(ccw[i]);
      }
      best = max(best, approx::detail::shoelace2(pick));
    }
    EXPECT_EQ(dp[k], best) << k;
  }
}

TEST(ApproxPolygon, FlushCircumscribedMatchesBruteForce) {
  std::vector<Point> poly;
  for (int j = 0; j < 9; ++j) poly.push_back(approx::detail::circle_point(2 * std::numbers::pi * j / 9 + 0.07 * (j % 4)));
  const auto ccw = approx::detail::ccw_hull(poly);
  const auto dp = approx::detail::min_flush_caps(ccw);
  const std::size_t n = ccw.size();
  const Scalar full = approx::detail::shoelace2(ccw);
  for (std::size_t k = 3; k <= n; ++k) {
    std::optional<Scalar> best;
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
      std::vector<HalfSpace> hs;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1U << i)) hs.push_back(approx::detail::edge_halfspace(ccw, i));
      }
      HPolytope p(2, hs);
      if (!convex::is_bounded(p)) continue;
      const Scalar area2 = convex::volume(p) * Scalar(2);
      if (!best || area2 < *best) best = area2;
    }
    ASSERT_EQ(best.has_value(), dp[k].has_value()) << k;
    if (best) {
      EXPECT_EQ(full + dp[k]->first, *best) << k;
    }
  }
}

TEST(ApproxPolygon, ContainmentDirections) {
  const VPolytope pent(2, {Point{Scalar(3), Scalar(0)}, Point{Scalar(1), Scalar(3)}, Point{Scalar(-2), Scalar(2)},
                           Point{Scalar(-2), Scalar(-2)}, Point{Scalar(1), Scalar(-3)}});
  const auto in = approx::inscribed_poly(pent, Scalar(1, 5));
  for (const auto& v : in.vertices) EXPECT_TRUE(convex::in_hull(pent.vertices(), v));
  const auto out = approx::circumscribed_poly(pent, Scalar(1, 5));
  for (const auto& v : pent.vertices()) {
    for (const auto& h : out.facets) EXPECT_TRUE(h.contains(v));
  }
  EXPECT_LE(out.ratio, Scalar(6, 5));
}

TEST(ApproxSegment, EveryKindReturnsBody) {
  const Ball seg(Point{Scalar(0)}, Scalar(1));
  for (Kind kind : {Kind::inscribed_volume, Kind::circumscribed_volume, Kind::sandwich_bms, Kind::circumscribed_diameter}) {
    const auto a = approx::approximate({seg, kind, Scalar(1, 3), std::nullopt});
    EXPECT_EQ(a.k, 2U);
    EXPECT_EQ(a.ratio, Scalar(1));
  }
}

TEST(ApproxSymmetric, SquareSandwichAtZero) {
  const VPolytope sq(2, {Point{Scalar(1), Scalar(1)}, Point{Scalar(-1), Scalar(1)}, Point{Scalar(-1), Scalar(-1)},
                         Point{Scalar(1), Scalar(-1)}});
  const auto a = approx::sandwich_bms(sq, Scalar(0));
  EXPECT_EQ(a.k, 4U);
  EXPECT_EQ(a.ratio, Scalar(1));
  const VPolytope tri(2, {Point{Scalar(1), Scalar(0)}, Point{Scalar(0), Scalar(1)}, Point{Scalar(0), Scalar(0)}});
  EXPECT_THROW(approx::sandwich_bms(tri, Scalar(1)), Error);
}

TEST(ApproxBall3, CertifiedSamples) {
  const Ball b(Point{Scalar(0), Scalar(0), Scalar(0)}, Scalar(1));
  const auto in = approx::inscribed_poly(b, Scalar(1, 2));
  EXPECT_GE(in.ratio, Scalar(1, 2));
  for (const auto& v : in.vertices) EXPECT_EQ(norm_squared(v), Scalar(1));
  const auto out = approx::circumscribed_poly(b, Scalar(1));
  EXPECT_LE(out.ratio, Scalar(2));
}

TEST(ApproxErrors, Preconditions) {
  EXPECT_THROW(approx::inscribed_poly(unit_disk(), Scalar(1)), Error);
  EXPECT_THROW(approx::inscribed_poly(unit_disk(), Scalar(1, 1000), 10), Error);
  const VPolytope flat(2, {Point{Scalar(0), Scalar(0)}, Point{Scalar(1), Scalar(1)}, Point{Scalar(2), Scalar(2)}});
  EXPECT_THROW(approx::inscribed_poly(flat, Scalar(1, 2)), Error);
  EXPECT_EQ(approx::kind_from_string("inscribed"), Kind::inscribed_volume);
  EXPECT_THROW(approx::kind_from_string("outer"), Error);
}

TEST(ApproxCsv, Rows) {
  const auto csv = approx::curve_csv(unit_disk(), Kind::inscribed_volume, {Scalar(1, 100), Scalar(1, 10)});
  EXPECT_EQ(csv, "epsilon,k\n1/100," + std::to_string(scan_inscribed(0.01)) + "\n1/10," +
                     std::to_string(scan_inscribed(0.1)) + "\n");
}
