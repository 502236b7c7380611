#include <gtest/gtest.h>

#include <random>

#include "quantconvex/caratheodory.hpp"

using qc::Point;
using qc::PointFamily;
using qc::Scalar;
using qc::VPolytope;
namespace cx = qc::convex;

namespace {

Point combine(const std::vector<Point>& pts, const std::vector<Scalar>& w) {
  Point s = Point::zero(pts.front().dim());
  for (std::size_t i = 0; i < pts.size(); ++i) s += pts[i] * w[i];
  return s;
}

Scalar total(const std::vector<Scalar>& w) {
  Scalar s;
  for (const auto& x : w) s += x;
  return s;
}

Point rational_point(std::mt19937_64& rng, int d, long range) {
  std::vector<Scalar> c;
  for (int k = 0; k < d; ++k) c.emplace_back(static_cast<long>(rng() % (2 * range + 1)) - range, 1L);
  return Point(std::move(c));
}

// Triangle around the origin rotated by a rational Pythagorean angle.
std::vector<Point> rotated_triangle(long a, long b, long c) {
  const std::vector<Point> base{Point{2, 0}, Point{-1, 2}, Point{-1, -2}};
  std::vector<Point> out;
  const Scalar cs(a, c), sn(b, c);
  for (const auto& p : base) out.push_back(Point{cs * p[0] - sn * p[1], sn * p[0] + cs * p[1]});
  return out;
}

}  // namespace

TEST(CaratheodoryReduce, CollinearSegment) {
  std::vector<Point> s;
  for (long i = 0; i < 10; ++i) s.push_back(Point{Scalar(10 * i, 9), Scalar(0)});
  const auto r = qc::caratheodory_reduce(s, Point{5, 0});
  ASSERT_EQ(r.points.size(), 2U);
  EXPECT_LT(r.points[0][0], Scalar(5));
  EXPECT_GT(r.points[1][0], Scalar(5));
  EXPECT_EQ(combine(r.points, r.weights), (Point{5, 0}));
}

TEST(CaratheodoryReduce, TargetInSet) {
  const std::vector<Point> s{Point{0, 0}, Point{2, 0}, Point{2, 2}, Point{0, 2}, Point{1, 1}};
  const auto r = qc::caratheodory_reduce(s, Point{1, 1});
  EXPECT_EQ(r.indices, std::vector<std::size_t>{4});
}

TEST(CaratheodoryReduce, RandomAgainstSubsetSearch) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 40; ++t) {
    std::vector<Point> s;
    for (int i = 0; i < 6; ++i) s.push_back(rational_point(rng, 2, 9));
    const Point x = cx::centroid(s);
    const auto r = qc::caratheodory_reduce(s, x);
    EXPECT_LE(r.points.size(), 3U);
    EXPECT_EQ(combine(r.points, r.weights), x);
    EXPECT_EQ(total(r.weights), Scalar(1));
    EXPECT_TRUE(cx::in_hull(r.points, x));
    // Some subset of size <= 3 always exists; the reduction must not exceed it.
    bool found = false;
    for (std::size_t a = 0; a < 6 && !found; ++a)
      for (std::size_t b = a; b < 6 && !found; ++b)
        for (std::size_t c = b; c < 6 && !found; ++c) found = cx::in_hull(std::vector<Point>{s[a], s[b], s[c]}, x);
    EXPECT_TRUE(found);
  }
  EXPECT_THROW(qc::caratheodory_reduce(std::vector<Point>{Point{0}, Point{1}}, Point{2}), qc::Error);
}

TEST(MinNormPoint, MatchesProjection) {
  // Segment from (1,-1) to (1,1): nearest point to the origin is (1,0).
  const std::vector<Point> q{Point{1, -1}, Point{1, 1}, Point{3, 0}};
  const auto r = qc::min_norm_point(std::vector<std::size_t>{0, 1, 2},
                                    [&](std::size_t a, std::size_t b) { return qc::dot(q[a], q[b]); });
  EXPECT_EQ(r.norm_squared, Scalar(1));
  EXPECT_EQ(combine(q, r.weights), (Point{1, 0}));
}

TEST(ColorfulCaratheodory, Monochromatic) {
  const std::vector<Point> tri{Point{2, 0}, Point{-1, 2}, Point{-1, -2}};
  const PointFamily f({tri, tri, tri});
  const auto sel = qc::colorful_caratheodory(f, Point{0, 0});
  EXPECT_EQ(combine(sel.points, sel.weights), (Point{0, 0}));
  EXPECT_EQ(cx::sorted_unique(sel.points), cx::sorted_unique(tri));
}

TEST(ColorfulCaratheodory, RotatedTrianglesAgreeWithExhaustion) {
  const PointFamily f({rotated_triangle(1, 0, 1), rotated_triangle(3, 4, 5), rotated_triangle(-5, 12, 13)});
  const auto sel = qc::colorful_caratheodory(f, Point{0, 0});
  EXPECT_EQ(combine(sel.points, sel.weights), (Point{0, 0}));
  EXPECT_EQ(total(sel.weights), Scalar(1));
  int feasible = 0;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t c = 0; c < 3; ++c)
        feasible += cx::in_hull(std::vector<Point>{f[0][a], f[1][b], f[2][c]}, Point{0, 0}) ? 1 : 0;
  EXPECT_GT(feasible, 0);
  EXPECT_TRUE(cx::in_hull(sel.points, Point{0, 0}));
}

TEST(ColorfulCaratheodory, TargetInEveryClass) {
  const PointFamily f({{Point{5, 5}, Point{1, 1}}, {Point{1, 1}}, {Point{0, 3}, Point{1, 1}, Point{2, -1}}});
  const auto sel = qc::colorful_caratheodory(f, Point{1, 1});
  EXPECT_EQ(combine(sel.points, sel.weights), (Point{1, 1}));
}

TEST(ColorfulCaratheodory, ReportsOffendingClass) {
  const PointFamily f({{Point{-1}, Point{1}}, {Point{2}, Point{3}}});
  try {
    qc::colorful_caratheodory(f, Point{0});
    FAIL() << "expected a precondition error";
  } catch (const qc::Error& e) {
    EXPECT_EQ(e.code(), qc::ErrorCode::precondition);
    EXPECT_NE(std::string(e.what()).find("class 1"), std::string::npos);
  }
}

TEST(ColorfulCaratheodory, FeasibilityMatchesExhaustiveSearch) {
  std::mt19937_64 rng(77);
  for (int d = 1; d <= 3; ++d) {
    for (int t = 0; t < 25; ++t) {
      std::vector<std::vector<Point>> classes;
      const Point x = rational_point(rng, d, 2);
      for (int i = 0; i <= d; ++i) {
        std::vector<Point> cls;
        const auto size = static_cast<int>(rng() % 4) + 2;
        for (int j = 0; j < size; ++j) cls.push_back(rational_point(rng, d, 6));
        if (!cx::in_hull(cls, x)) cls.push_back(x * Scalar(2) - cx::centroid(cls));
        classes.push_back(cls);
      }
      const PointFamily f(classes);
      bool all_in = true;
      for (const auto& c : classes) all_in = all_in && cx::in_hull(c, x);
      if (!all_in) continue;
      const auto sel = qc::colorful_caratheodory(f, x);
      EXPECT_EQ(combine(sel.points, sel.weights), x);
      EXPECT_TRUE(qc::exhaustive_rainbow(f, x, std::nullopt, 100000).has_value());
    }
  }
}

TEST(VeryColorful, OneDimensional) {
  const PointFamily f({{Point{-1}, Point{2}}});
  const auto sel = qc::very_colorful_caratheodory(f, Point{0}, Point{5});
  EXPECT_EQ(sel.points, std::vector<Point>{Point{-1}});
  EXPECT_EQ(sel.points[0] * sel.weights[0] + Point{5} * sel.anchor_weight, Point{0});
}

TEST(VeryColorful, PlanarPairsAgreeWithExhaustion) {
  const PointFamily f({rotated_triangle(1, 0, 1), rotated_triangle(3, 4, 5)});
  const Point q{5, 5};
  const auto sel = qc::very_colorful_caratheodory(f, Point{0, 0}, q);
  auto pts = sel.points;
  pts.push_back(q);
  auto w = sel.weights;
  w.push_back(sel.anchor_weight);
  EXPECT_EQ(combine(pts, w), (Point{0, 0}));
  EXPECT_TRUE(cx::in_hull(pts, Point{0, 0}));
  EXPECT_TRUE(qc::exhaustive_rainbow(f, Point{0, 0}, q, 100).has_value());
}

TEST(VeryColorful, AnchorEqualsTarget) {
  const PointFamily f({{Point{1, 0}, Point{-1, 0}}, {Point{0, 1}, Point{0, -1}}});
  const auto sel = qc::very_colorful_caratheodory(f, Point{0, 0}, Point{0, 0});
  EXPECT_EQ(sel.anchor_weight, Scalar(1));
}

TEST(ReduceSupport, ClutterIgnored) {
  const auto simplex = cx::make_inscribed_simplex(2).simplex;
  std::vector<Point> x = simplex.vertices();
  for (long i = 0; i < 50; ++i) x.push_back(Point{Scalar(i, 100), Scalar(-i, 200)});
  const auto keep = qc::reduce_support(x, simplex);
  EXPECT_EQ(keep, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(ReduceSupport, CirclePoints) {
  // 30 rational points on the unit circle from Pythagorean parametrization.
  std::vector<Point> x;
  for (long k = 0; k < 30; ++k) {
    const Scalar t = Scalar(2 * k - 29, 10);
    const Scalar den = Scalar(1) + t * t;
    x.push_back(Point{(Scalar(1) - t * t) / den, Scalar(2) * t / den});
  }
  const auto simplex = cx::make_inscribed_simplex(2).simplex;
  const VPolytope half(2, [&] {
    std::vector<Point> v;
    for (const auto& p : simplex.vertices()) v.push_back(p / Scalar(2));
    return v;
  }());
  const auto keep = qc::reduce_support(x, half);
  EXPECT_LE(keep.size(), 9U);
  std::vector<Point> kept;
  for (auto i : keep) kept.push_back(x[i]);
  for (const auto& v : half.vertices()) EXPECT_TRUE(cx::in_hull(kept, v));
}

TEST(ReduceSupport, SinglePointPolytope) {
  const std::vector<Point> x{Point{1, 0}, Point{-1, 1}, Point{-1, -1}, Point{0, 5}};
  const auto keep = qc::reduce_support(x, qc::VPolytope(2, {Point{0, 0}}));
  EXPECT_LE(keep.size(), 3U);
}
