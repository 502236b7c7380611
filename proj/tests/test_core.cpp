#include <gtest/gtest.h>

#include <random>

#include "quantconvex/core/scalar.hpp"
#include "quantconvex/core/types.hpp"

using qc::Scalar;

TEST(Scalar, RendersCanonicalFraction) {
  EXPECT_EQ(Scalar(6, -4).str(), "-3/2");
  EXPECT_EQ(Scalar(0).str(), "0/1");
  EXPECT_EQ(Scalar::parse("0.125").str(), "1/8");
  EXPECT_EQ(Scalar::parse("-10/4").str(), "-5/2");
  EXPECT_EQ(Scalar::parse("+7").str(), "7/1");
}

TEST(Scalar, RejectsMalformedInput) {
  for (const char* bad : {"", "1/0", "a", "1/-2", "1.2.3", "-", "3/"}) {
    EXPECT_THROW(Scalar::parse(bad), qc::Error) << bad;
  }
}

TEST(Scalar, RoundTripProperty) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const long num = static_cast<long>(rng() % 2000001) - 1000000;
    const long den = static_cast<long>(rng() % 99999) + 1;
    const Scalar s(num, den);
    EXPECT_EQ(Scalar::parse(s.str()), s);
    EXPECT_EQ(Scalar::parse(s.str()).str(), s.str());
  }
}

TEST(Scalar, FieldAxiomsOnSamples) {
  std::mt19937_64 rng(5);
  auto draw = [&] { return Scalar(static_cast<long>(rng() % 201) - 100, static_cast<long>(rng() % 50) + 1); };
  for (int i = 0; i < 500; ++i) {
    const Scalar a = draw(), b = draw(), c = draw();
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    if (!b.is_zero()) {
      EXPECT_EQ(a / b * b, a);
    }
  }
}

TEST(Scalar, ApproximateModeRoundsToDouble) {
  const Scalar third = Scalar::approximate(1.0) / Scalar(3);
  EXPECT_FALSE(third.is_exact());
  EXPECT_EQ(third, Scalar::from_double(1.0 / 3.0));
  EXPECT_TRUE((Scalar(1) / Scalar(3)).is_exact());
}

TEST(Scalar, SquareRootEnclosures) {
  EXPECT_EQ(qc::sqrt_lower(Scalar(9, 4)), Scalar(3, 2));
  EXPECT_EQ(qc::sqrt_upper(Scalar(9, 4)), Scalar(3, 2));
  for (int v : {2, 3, 5, 7, 1000003}) {
    const Scalar x(v);
    const Scalar lo = qc::sqrt_lower(x), hi = qc::sqrt_upper(x);
    EXPECT_LE(lo * lo, x);
    EXPECT_GE(hi * hi, x);
    EXPECT_LE((hi - lo) / lo, Scalar(1, 1000000000));
  }
}

TEST(Scalar, SteinitzConstantEnclosure) {
  const Scalar lo = qc::steinitz_radius_lower(2), hi = qc::steinitz_radius_upper(2);
  EXPECT_LT(lo, hi);
  // pi / (64 e^2) = 0.00664326...
  EXPECT_NEAR(lo.to_double(), 0.00664326, 1e-8);
  EXPECT_NEAR(hi.to_double(), 0.00664326, 1e-8);
  // (d+1)^(2d) <= e^2 d^(2d) keeps pi/(n d^2) above the constant.
  for (int d = 1; d <= 8; ++d) {
    EXPECT_LE(qc::pow(Scalar(d + 1), 2 * d), qc::e_lower() * qc::e_lower() * qc::pow(Scalar(d), 2 * d)) << d;
  }
}

TEST(Types, DimensionChecks) {
  EXPECT_THROW(qc::Point(std::vector<Scalar>{}), qc::Error);
  EXPECT_THROW(qc::HalfSpace(qc::Point{0, 0}, Scalar(1)), qc::Error);
  EXPECT_THROW((void)(qc::Point{1, 2} + qc::Point{1}), qc::Error);
  EXPECT_THROW(qc::HPolytope(2, {qc::HalfSpace(qc::Point{1}, Scalar(0))}), qc::Error);
  EXPECT_THROW(qc::Ball(qc::Point{0}, Scalar(-1)), qc::Error);
  EXPECT_THROW(qc::PointFamily({{qc::Point{1, 2}}, {}}), qc::Error);
}

TEST(Types, CanonicalHalfSpace) {
  const qc::HalfSpace h(qc::Point{0, -4}, Scalar(2));
  EXPECT_EQ(h.canonical(), qc::HalfSpace(qc::Point{0, -1}, Scalar(1, 2)));
  EXPECT_EQ(qc::HalfSpace(qc::Point{3, 6}, Scalar(3)).canonical(), qc::HalfSpace(qc::Point{1, 2}, Scalar(1)));
}

TEST(Types, CertificateKindNames) {
  using K = qc::CertificateKind;
  for (auto k : {K::caratheodory_selection, K::steinitz_ball, K::steinitz_volume, K::helly_volume, K::helly_diameter,
                 K::colorful_helly, K::tverberg, K::colorful_tverberg}) {
    EXPECT_EQ(qc::certificate_kind_from_string(qc::to_string(k)), k);
  }
  EXPECT_EQ(qc::certificate_kind_from_string("caratheodory-selection"), K::caratheodory_selection);
}
