#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

using qc::Point;
using qc::Scalar;
using qc::HalfSpace;
namespace cx = qc::convex;
namespace og = qc::oracle::geo;
namespace olp = qc::oracle::lp;

namespace {

std::vector<HalfSpace> square_halfspaces(const Scalar& s) {
  return {HalfSpace(Point{1, 0}, s), HalfSpace(Point{-1, 0}, s), HalfSpace(Point{0, 1}, s), HalfSpace(Point{0, -1}, s)};
}

}  // namespace

TEST(OracleLp, BlandSolvesSmallPrograms) {
  // max x + y over the unit square shifted by (1, 2).
  std::vector<HalfSpace> hs{HalfSpace(Point{1, 0}, 2), HalfSpace(Point{-1, 0}, -1), HalfSpace(Point{0, 1}, 3),
                            HalfSpace(Point{0, -1}, -2)};
  const auto r = olp::maximize(hs, {Scalar(1), Scalar(1)});
  ASSERT_EQ(r.status, olp::Status::optimal);
  EXPECT_EQ(r.value, Scalar(5));
  EXPECT_EQ(r.x, (std::vector<Scalar>{2, 3}));
  hs.emplace_back(Point{1, 1}, Scalar(2));
  EXPECT_EQ(olp::maximize(hs, {Scalar(1), Scalar(0)}).status, olp::Status::infeasible);
  EXPECT_EQ(olp::maximize({HalfSpace(Point{-1, 0}, 0)}, {Scalar(1), Scalar(0)}).status, olp::Status::unbounded);
}

TEST(OracleLp, AgreesWithConvexOpsOnRandomPrograms) {
  std::mt19937_64 rng(101);
  for (int rep = 0; rep < 60; ++rep) {
    std::vector<HalfSpace> hs;
    for (const auto& a : qc::testing::random_points(rng, 3, 7, 4)) {
      if (!a.is_zero()) hs.emplace_back(a, Scalar(static_cast<long>(rng() % 7) - 1));
    }
    const Point obj = qc::testing::random_points(rng, 1, 1, 1).front();
    const Point c{obj[0], Scalar(1), Scalar(-1)};
    const auto mine = olp::maximize(hs, {c[0], c[1], c[2]});
    const auto ref = cx::lp_solve(hs, c);
    ASSERT_EQ(mine.status == olp::Status::optimal, ref.status == cx::LPStatus::feasible);
    ASSERT_EQ(mine.status == olp::Status::infeasible, ref.status == cx::LPStatus::infeasible);
    if (mine.status == olp::Status::optimal) {
      EXPECT_EQ(mine.value, ref.value);
    }
  }
}

TEST(OracleGeometry, VolumesAndFacets) {
  const std::vector<Point> sq{Point{0, 0}, Point{2, 0}, Point{2, 2}, Point{0, 2}, Point{1, 1}, Point{1, 0}};
  EXPECT_EQ(og::volume(sq, 2), Scalar(4));
  EXPECT_EQ(og::facets(sq, 2).size(), 4U);
  EXPECT_EQ(og::inradius_squared(sq, Point{1, 1}), Scalar(1));
  EXPECT_EQ(og::inradius_squared(sq, Point{2, 1}), Scalar(0));
  EXPECT_EQ(og::volume({Point{0, 0}, Point{1, 1}, Point{2, 2}}, 2), Scalar(0));
  std::vector<Point> cube;
  for (int m = 0; m < 8; ++m) cube.push_back(Point{Scalar(m & 1), Scalar((m >> 1) & 1), Scalar((m >> 2) & 1)});
  cube.push_back(Point{Scalar(1, 2), Scalar(0), Scalar(1, 2)});  // on a face
  EXPECT_EQ(og::volume(cube, 3), Scalar(1));
  EXPECT_EQ(og::volume({Point{3}, Point{-1}, Point{0}}, 1), Scalar(4));
  EXPECT_EQ(og::intersection_volume(square_halfspaces(Scalar(1)), 2), std::optional<Scalar>(Scalar(4)));
  EXPECT_FALSE(og::intersection_volume({HalfSpace(Point{1, 0}, 1)}, 2).has_value());
}

TEST(OracleGeometry, SecondRouteMatchesConvexOps) {
  std::mt19937_64 rng(55);
  for (int rep = 0; rep < 40; ++rep) {
    const int d = rep % 2 == 0 ? 2 : 3;
    const auto pts = qc::testing::random_points(rng, d, 9, 6);
    if (cx::affine_dimension(pts) < d) continue;
    EXPECT_EQ(og::volume(pts, d), cx::volume(qc::VPolytope(d, pts)));
    const Point c = cx::centroid(pts);
    EXPECT_EQ(og::inradius_squared(pts, c), cx::ball_in_hull_radius(pts, c).radius_squared);
  }
}

TEST(Oracle, AcceptsEveryPipeline) {
  for (const auto& c : qc::testing::corpus(3)) {
    const auto r = qc::oracle::verify(c.certificate, c.instance);
    EXPECT_TRUE(r.ok) << c.name << "\n" << r.text();
  }
  for (const auto& c : qc::testing::heavy_corpus(3)) {
    const auto r = qc::oracle::verify(c.certificate, c.instance);
    EXPECT_TRUE(r.ok) << c.name << "\n" << r.text();
  }
}

TEST(Oracle, RejectsEverySingleFieldMutation) {
  for (const auto& c : qc::testing::corpus(4)) {
    for (const auto& m : qc::testing::mutations(c.certificate)) {
      EXPECT_FALSE(qc::testing::accepted(m.certificate, c.instance)) << c.name << ": mutation of " << m.field << " accepted";
    }
  }
}

TEST(Oracle, NamesTheViolatedConstraint) {
  const auto cases = qc::testing::corpus(5);
  const auto& c = cases[2];  // colored Steinitz
  auto bad = c.certificate;
  bad.witness.points[1].at.back() = 999;
  const auto r = qc::oracle::verify(bad, c.instance);
  ASSERT_FALSE(r.ok);
  EXPECT_NE(r.text().find("witness.points[1].at"), std::string::npos);
  auto other = c.instance;
  other.kind = qc::CertificateKind::helly_volume;
  EXPECT_THROW((void)qc::oracle::verify(c.certificate, other), qc::Error);
}

TEST(Oracle, HellyRatioLoweredBelowClippedArea) {
  std::vector<HalfSpace> f;
  for (int j = 0; j < 30; ++j) {
    f.emplace_back(qc::approx::detail::circle_point(2 * M_PI * j / 30.0), Scalar(1));
  }
  qc::Instance in;
  in.kind = qc::CertificateKind::helly_volume;
  in.dim = 2;
  in.halfspaces = f;
  in.epsilon = Scalar(1, 20);
  const auto cert = qc::solve(in);
  ASSERT_TRUE(qc::oracle::verify(cert, in).ok);
  std::vector<HalfSpace> sub;
  for (const auto& h : cert.witness.halfspaces) sub.push_back(h.halfspace);
  const Scalar truth = qc::testing::clipped_area(sub) / qc::testing::clipped_area(f);
  EXPECT_EQ(*cert.claim.ratio, truth);
  auto lowered = cert;
  lowered.claim.ratio = truth - Scalar(1, 1000);
  const auto r = qc::oracle::verify(lowered, in);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.text().find("claim.ratio"), std::string::npos);
}

TEST(OracleExhaustive, RainbowMembershipMatchesColorfulCaratheodory) {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<std::vector<Point>> classes;
    for (int i = 0; i < 3; ++i) classes.push_back(qc::testing::random_points(rng, 2, 3, 5));
    const Point x{Scalar(static_cast<long>(rng() % 3) - 1), Scalar(static_cast<long>(rng() % 3) - 1)};
    bool every = true;
    for (const auto& c : classes) every = every && cx::in_hull(c, x);
    const auto a = qc::oracle::search_rainbow_membership(classes, x, std::nullopt, 27);
    const auto b = qc::oracle::search_rainbow_membership(classes, x, std::nullopt, 27);
    EXPECT_EQ(a, b);
    const bool lib = [&] {
      try {
        (void)qc::colorful_caratheodory(qc::PointFamily(classes), x);
        return true;
      } catch (const qc::Error&) {
        return false;
      }
    }();
    if (every) {
      EXPECT_TRUE(lib);
      EXPECT_TRUE(a.has_value());
    }
    if (lib) {
      EXPECT_TRUE(a.has_value());
    }
    EXPECT_EQ(a.has_value(), qc::exhaustive_rainbow(qc::PointFamily(classes), x, std::nullopt, 1000).has_value());
  }
}

TEST(OracleExhaustive, TverbergPartitionsOfSevenPlanarPoints) {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    const auto pts = qc::testing::random_points(rng, 2, 7, 15);
    const auto found = qc::oracle::search_tverberg_partition(pts, 3, 400);
    const auto lib = qc::tverberg_partition(pts, 3);
    EXPECT_TRUE(found.has_value());
    EXPECT_EQ(lib.parts.size(), 3U);
  }
  EXPECT_THROW((void)qc::oracle::search_tverberg_partition(qc::testing::random_points(rng, 2, 7, 15), 3, 1), qc::Error);
}

TEST(OracleExhaustive, SubfamilyVolumeBenchmarksHellyExtraction) {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 4; ++rep) {
    qc::Instance in = qc::gen::generate("halfspace-family", qc::testing::params(2, 12), 100 + static_cast<std::uint64_t>(rep));
    const auto w = qc::extract_volume_witness(in.halfspaces, *in.epsilon);
    const auto best = qc::oracle::exhaustive_search(qc::oracle::SearchProblem::subfamily_volume, in, 1U << 13, w.subfamily.size());
    ASSERT_TRUE(best.feasible);
    const Scalar full = *og::intersection_volume(in.halfspaces, 2);
    EXPECT_LE(*best.value, *w.certificate.claim.ratio * full);
    EXPECT_GE(*best.value, full);
  }
  (void)rng;
}

TEST(OracleExhaustive, ColorfulPartitionOnTheLine) {
  const std::vector<std::vector<Point>> colors{{Point{0}, Point{4}, Point{-3}, Point{2}}, {Point{1}, Point{-2}, Point{5}, Point{-1}}};
  const auto p = qc::oracle::search_colorful_tverberg_partition(colors, 4, 100000);
  ASSERT_TRUE(p.has_value());
  for (const auto& part : *p) {
    EXPECT_FALSE(part.empty());
    if (part.size() == 2) {
      EXPECT_NE(part[0].first, part[1].first);
    }
  }
}

TEST(Oracle, SharesNoCodeWithConvexOps) {
  for (const auto& entry : std::filesystem::directory_iterator(std::filesystem::path(QC_SOURCE_DIR) / "include/quantconvex/oracle")) {
    std::ifstream in(entry.path());
    std::stringstream text;
    text << in.rdbuf();
    EXPECT_EQ(text.str().find("quantconvex/convex/"), std::string::npos) << entry.path();
    EXPECT_EQ(text.str().find("convex::"), std::string::npos) << entry.path();
  }
}
