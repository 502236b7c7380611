#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "quantconvex/helly.hpp"

using qc::HalfSpace;
using qc::HPolytope;
using qc::Point;
using qc::Scalar;
namespace cx = qc::convex;

namespace {

std::vector<HalfSpace> unit_square() {
  return {HalfSpace(Point{-1, 0}, 0), HalfSpace(Point{1, 0}, 1), HalfSpace(Point{0, -1}, 0), HalfSpace(Point{0, 1}, 1)};
}

// Tangent half-planes of the unit circle at n rational points (exact on the circle).
std::vector<HalfSpace> tangent_family(std::size_t n, double offset = 0.0) {
  std::vector<HalfSpace> out;
  for (std::size_t j = 0; j < n; ++j) {
    const Point u = qc::approx::detail::circle_point(offset + 2 * M_PI * static_cast<double>(j) / static_cast<double>(n));
    out.emplace_back(u, Scalar(1));
  }
  return out;
}

// Independent area of a bounded planar intersection: clip a big box one half-plane at a time.
Scalar clipped_area(const std::vector<HalfSpace>& hs) {
  std::vector<Point> poly{Point{-100, -100}, Point{100, -100}, Point{100, 100}, Point{-100, 100}};
  for (const auto& h : hs) {
    std::vector<Point> next;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Point& p = poly[i];
      const Point& q = poly[(i + 1) % poly.size()];
      const Scalar sp = h.slack(p);
      const Scalar sq = h.slack(q);
      if (sp.sign() >= 0) next.push_back(p);
      if ((sp.sign() > 0 && sq.sign() < 0) || (sp.sign() < 0 && sq.sign() > 0)) next.push_back(p + (q - p) * (sp / (sp - sq)));
    }
    poly = std::move(next);
    if (poly.empty()) return Scalar(0);
  }
  Scalar twice;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    twice += p[0] * q[1] - p[1] * q[0];
  }
  return twice / Scalar(2);
}

std::vector<HalfSpace> rotated_square(const std::array<long, 3>& t, const Scalar& half) {
  const Scalar c(t[0], t[2]);
  const Scalar s(t[1], t[2]);
  return {HalfSpace(Point{c, s}, half), HalfSpace(Point{-c, -s}, half), HalfSpace(Point{-s, c}, half), HalfSpace(Point{s, -c}, half)};
}

}  // namespace

TEST(HellyVolume, RedundantHalfSpacesDropped) {
  auto f = unit_square();
  for (int i = 0; i < 20; ++i) {
    f.emplace_back(Point{Scalar(1 + i % 3), Scalar(i % 5 - 2)}, Scalar(50 + i));
  }
  const auto w = qc::extract_volume_witness(f, Scalar(1, 100));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_TRUE(std::find(w.subfamily.begin(), w.subfamily.end(), i) != w.subfamily.end());
  EXPECT_EQ(*w.certificate.claim.ratio, Scalar(1));
  EXPECT_TRUE(*w.certificate.claim.bound_met);
  EXPECT_LE(w.subfamily.size(), w.k * 2);
}

TEST(HellyVolume, ThirtyGonTangents) {
  const auto f = tangent_family(30);
  const auto w = qc::extract_volume_witness(f, Scalar(1, 20));
  EXPECT_EQ(w.k, 9U);
  EXPECT_LE(w.subfamily.size(), 18U);
  EXPECT_TRUE(*w.certificate.claim.bound_met);
  EXPECT_LE(*w.certificate.claim.ratio, Scalar(21, 20));
  EXPECT_GE(*w.certificate.claim.ratio, Scalar(1));
  const auto sub = qc::detail::gather(f, w.subfamily);
  EXPECT_EQ(clipped_area(sub) / clipped_area(f), *w.certificate.claim.ratio);
  for (std::size_t i = 0; i < w.subfamily.size(); ++i) {
    EXPECT_EQ(w.certificate.witness.halfspaces[i].at, std::vector<std::size_t>{w.subfamily[i]});
  }
}

// With fewer half-planes than the circumscribing k, no subfamily reaches 1 + eps.
TEST(HellyVolume, FailureClauseWithSmallSubfamilies) {
  const auto f = tangent_family(12);
  const Scalar eps(1, 20);
  const auto w = qc::extract_volume_witness(f, eps);
  ASSERT_TRUE(*w.certificate.claim.bound_met);
  const std::size_t size = w.k - 1;
  const Scalar vol = clipped_area(f);
  std::vector<bool> mask(f.size(), false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(size), true);
  bool any = false;
  do {
    std::vector<HalfSpace> sub;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (mask[i]) sub.push_back(f[i]);
    }
    const auto v = qc::detail::intersection_volume(sub, 2);
    if (v && *v <= (Scalar(1) + eps) * vol) any = true;
  } while (std::prev_permutation(mask.begin(), mask.end()));
  EXPECT_FALSE(any);
}

TEST(HellyVolume, SmallInstancesWithinBoundOfOptimum) {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 4; ++rep) {
    std::vector<HalfSpace> f;
    for (std::size_t j = 0; j < 9; ++j) {
      const Point u = qc::approx::detail::circle_point(0.7 * static_cast<double>(j) + 0.01 * static_cast<double>(rng() % 50));
      f.emplace_back(u, Scalar(static_cast<long>(10 + rng() % 6), 10L));
    }
    if (!cx::is_bounded(HPolytope(2, f))) continue;
    const Scalar eps(1, 10);
    const auto w = qc::extract_volume_witness(f, eps);
    EXPECT_TRUE(*w.certificate.claim.bound_met);
    // Exhaustive optimum over subfamilies of the same size.
    const Scalar vol = clipped_area(f);
    std::vector<bool> mask(f.size(), false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(w.subfamily.size()), true);
    Scalar best = *w.certificate.claim.ratio;
    do {
      std::vector<HalfSpace> sub;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (mask[i]) sub.push_back(f[i]);
      }
      if (auto v = qc::detail::intersection_volume(sub, 2)) best = qc::min(best, *v / vol);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    EXPECT_LE(*w.certificate.claim.ratio, best * (Scalar(1) + eps));
  }
}

TEST(HellyVolume, ThreeDimensionalCube) {
  std::vector<HalfSpace> f;
  for (int a = 0; a < 3; ++a) {
    std::vector<Scalar> e(3);
    e[static_cast<std::size_t>(a)] = 1;
    f.emplace_back(Point(e), Scalar(1));
    f.emplace_back(-Point(e), Scalar(1));
  }
  f.emplace_back(Point{1, 1, 1}, Scalar(10));
  const auto w = qc::extract_volume_witness(f, Scalar(1, 10));
  EXPECT_EQ(*w.certificate.claim.ratio, Scalar(1));
  EXPECT_LE(w.subfamily.size(), 3 * w.k);
}

TEST(HellyVolume, Errors) {
  EXPECT_THROW((void)qc::extract_volume_witness({HalfSpace(Point{1, 0}, 1)}, Scalar(1, 10)), qc::Error);
  std::vector<HalfSpace> empty{HalfSpace(Point{1, 0}, -1), HalfSpace(Point{-1, 0}, -1), HalfSpace(Point{0, 1}, 1),
                               HalfSpace(Point{0, -1}, 1)};
  try {
    (void)qc::extract_volume_witness(empty, Scalar(1, 10));
    FAIL();
  } catch (const qc::Error& e) {
    EXPECT_EQ(e.code(), qc::ErrorCode::precondition);
  }
}

TEST(HalfspaceCover, SumOfTwo) {
  const std::vector<HPolytope> f{HPolytope(2, {HalfSpace(Point{1, 0}, 1)}), HPolytope(2, {HalfSpace(Point{0, 1}, 1)})};
  const auto c = qc::halfspace_cover_lemma(f, HalfSpace(Point{1, 1}, 2));
  EXPECT_EQ(c.sets, (std::vector<std::size_t>{0, 1}));
}

TEST(HalfspaceCover, MemberSet) {
  const std::vector<HPolytope> f{HPolytope(2, {HalfSpace(Point{1, 0}, 1)}), HPolytope(2, {HalfSpace(Point{0, 1}, 1)}),
                                 HPolytope(2, {HalfSpace(Point{1, 1}, 5)})};
  const auto c = qc::halfspace_cover_lemma(f, HalfSpace(Point{1, 0}, 1));
  EXPECT_EQ(c.sets, (std::vector<std::size_t>{0}));
  EXPECT_THROW((void)qc::halfspace_cover_lemma(f, HalfSpace(Point{1, 0}, 0)), qc::Error);
}

TEST(HalfspaceCover, RandomThreeDimensional) {
  std::mt19937_64 rng(11);
  auto rnd = [&] { return Scalar(static_cast<long>(rng() % 11) - 5); };
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<HPolytope> f;
    for (int s = 0; s < 6; ++s) {
      std::vector<HalfSpace> hs;
      for (int j = 0; j < 3; ++j) {
        Point a{rnd(), rnd(), rnd()};
        if (a.is_zero()) a = Point{1, 0, 0};
        hs.emplace_back(a, Scalar(static_cast<long>(1 + rng() % 4)));
      }
      f.emplace_back(3, std::move(hs));
    }
    std::vector<HalfSpace> all;
    for (const auto& p : f) all.insert(all.end(), p.halfspaces().begin(), p.halfspaces().end());
    const Point a{rnd(), rnd(), rnd()};
    if (a.is_zero()) continue;
    const auto best = cx::lp_solve(all, a);
    if (best.status != cx::LPStatus::feasible) continue;
    const HalfSpace h(a, best.value);
    const auto c = qc::halfspace_cover_lemma(f, h);
    EXPECT_LE(c.sets.size(), 3U);
    std::vector<HalfSpace> sub;
    for (auto s : c.sets) sub.insert(sub.end(), f[s].halfspaces().begin(), f[s].halfspaces().end());
    const auto check = cx::lp_solve(sub, a);
    ASSERT_EQ(check.status, cx::LPStatus::feasible);
    EXPECT_LE(check.value, best.value);
  }
}

TEST(HellyDiameter, SixteenTangents) {
  const auto f = tangent_family(16);
  const auto w = qc::extract_diameter_witness(f, Scalar(1, 10));
  EXPECT_LE(w.subfamily.size(), 16U);
  EXPECT_LE(w.subfamily.size(), 2 * w.k);
  EXPECT_TRUE(*w.certificate.claim.bound_met);
  EXPECT_LE(*w.certificate.claim.ratio, Scalar(121, 100));
}

TEST(HellyDiameter, SquareIsMinimal) {
  const auto w = qc::extract_diameter_witness(unit_square(), Scalar(1, 3));
  EXPECT_EQ(w.subfamily, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(*w.certificate.claim.ratio, Scalar(1));
}

TEST(HellyDiameter, ThinSlabWithCaps) {
  const std::vector<HalfSpace> f{HalfSpace(Point{0, 1}, Scalar(1, 100)), HalfSpace(Point{0, -1}, Scalar(1, 100)),
                                 HalfSpace(Point{1, 0}, 5), HalfSpace(Point{-1, 0}, 5), HalfSpace(Point{1, 1}, 20)};
  const auto w = qc::extract_diameter_witness(f, Scalar(1, 10));
  EXPECT_EQ(*w.certificate.claim.ratio, Scalar(1));
  EXPECT_EQ(w.subfamily, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(ColorfulHelly, SquareFamilies) {
  const std::vector<std::vector<HalfSpace>> fs(4, unit_square());
  const auto r = qc::colorful_helly_search(fs, Scalar(1, 10));
  EXPECT_EQ(r.volume, Scalar(1));
  EXPECT_EQ(*r.certificate.claim.ratio, Scalar(1));
  std::set<std::size_t> used(r.choice.begin(), r.choice.end());
  EXPECT_EQ(used.size(), 4U);
}

TEST(ColorfulHelly, LocalSearchMatchesExhaustive) {
  const std::vector<std::array<long, 3>> triples{{1, 0, 1}, {3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {20, 21, 29}};
  std::vector<std::vector<HalfSpace>> fs;
  for (std::size_t i = 0; i < 5; ++i) fs.push_back(rotated_square(triples[i], Scalar(static_cast<long>(2 + i % 2), 2L)));
  qc::ColorfulHellyOptions opt;
  opt.allow_exhaustive = false;
  const auto r = qc::colorful_helly_search(fs, Scalar(1, 10), opt);
  EXPECT_FALSE(r.used_exhaustive);
  std::vector<std::vector<std::size_t>> all(fs.size(), {0, 1, 2, 3});
  const auto best = qc::detail::exhaustive_colorful_helly(fs, all, 2);
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(r.volume, best->first);
  EXPECT_TRUE(*r.certificate.claim.bound_met);
}

TEST(ColorfulHelly, DualityPhaseRecoversBoundedChoice) {
  // The first half-space of every family points the same way, so the naive
  // first-index choice is unbounded.
  std::vector<std::vector<HalfSpace>> fs;
  for (int i = 0; i < 4; ++i) {
    fs.push_back({HalfSpace(Point{1, 0}, Scalar(1 + i)), HalfSpace(Point{-1, 1}, 2), HalfSpace(Point{-1, -1}, 2),
                  HalfSpace(Point{0, 1}, Scalar(3 + i))});
  }
  const auto r = qc::colorful_helly_search(fs, Scalar(1, 4));
  EXPECT_TRUE(r.finite_from_duality);
  const auto v = qc::detail::intersection_volume(qc::detail::rainbow(fs, r.choice), 2);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(*v, r.volume);
  EXPECT_TRUE(*r.certificate.claim.bound_met);
}
