#pragma once

// Shared by the oracle tests and the acceptance runner: a corpus of
// (instance, certificate) pairs from every pipeline, and single-field
// certificate mutations.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "quantconvex/quantconvex.hpp"

namespace qc::testing {

struct Case {
  std::string name;
  Instance instance;
  Certificate certificate;
};

inline gen::Params params(int dim, std::size_t count = 0, std::size_t parts = 2, std::size_t families = 0) {
  gen::Params p;
  p.dim = dim;
  p.count = count;
  p.parts = parts;
  p.families = families;
  return p;
}

inline std::vector<Point> random_points(std::mt19937_64& rng, int d, std::size_t n, long range) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) {
    Point p = Point::zero(d);
    for (std::size_t k = 0; k < static_cast<std::size_t>(d); ++k) p[k] = Scalar(static_cast<long>(rng() % static_cast<std::uint64_t>(2 * range + 1)) - range);
    out.push_back(std::move(p));
  }
  return out;
}

inline Instance selection_instance(std::uint64_t seed, bool anchor) {
  std::mt19937_64 rng(seed);
  Instance in = gen::generate("colored-ball-classes", params(2, anchor ? 2U : 3U), seed);
  in.kind = CertificateKind::caratheodory_selection;
  in.target = Point{Scalar(static_cast<long>(rng() % 5) - 2, 4L), Scalar(static_cast<long>(rng() % 5) - 2, 4L)};
  if (anchor) in.anchor = Point{Scalar(7), Scalar(-5)};
  in.construction.reset();
  in.seed.reset();
  return in;
}

inline Instance square_volume_instance(std::size_t classes) {
  Instance in;
  in.kind = CertificateKind::steinitz_volume;
  in.dim = 2;
  in.body = {Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}};
  for (std::size_t i = 0; i < classes; ++i) {
    const Scalar m(static_cast<long>(i) + 1, 4L);
    std::vector<Point> c{Point{-m, -m}, Point{Scalar(3) + m, -m}, Point{-m, Scalar(3) + m}, Point{Scalar(1, 2), Scalar(1, 2)}};
    std::rotate(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(i % 4), c.end());
    in.classes.push_back(std::move(c));
  }
  in.epsilon = Scalar(1, 2);
  return in;
}

inline Instance classic_tverberg_instance(std::uint64_t seed, std::size_t m) {
  std::mt19937_64 rng(seed);
  Instance in;
  in.kind = CertificateKind::tverberg;
  in.dim = 2;
  in.points = random_points(rng, 2, tverberg_min_points(2, m), 20);
  in.parts = m;
  return in;
}

/// One or more certificates from every pipeline, all on small instances.
inline std::vector<Case> corpus(std::uint64_t seed) {
  std::vector<Case> out;
  auto add = [&](std::string name, Instance in) {
    Certificate c = solve(in);
    out.push_back({std::move(name), std::move(in), std::move(c)});
  };
  add("selection", selection_instance(seed, false));
  add("selection-anchor", selection_instance(seed + 1, true));
  add("colored-steinitz", gen::generate("colored-ball-classes", params(2, 4), seed));
  add("steinitz-volume", square_volume_instance(6));
  add("helly-volume", gen::generate("halfspace-family", params(2, 10), seed));
  Instance diam = gen::generate("halfspace-family", params(2, 8), seed + 7);
  diam.kind = CertificateKind::helly_diameter;
  add("helly-diameter", std::move(diam));
  add("colorful-helly", gen::generate("halfspace-family", params(2, 4, 2, 3), seed));
  add("tverberg-classic", classic_tverberg_instance(seed, 3));
  add("tverberg-colorful", gen::generate("tverberg-colorful", params(1, 0, 2), seed));
  return out;
}

/// The heavier pipelines, kept separate so callers can sample them less often.
inline std::vector<Case> heavy_corpus(std::uint64_t seed) {
  std::vector<Case> out;
  Instance q = gen::generate("tverberg-quant", params(2, 0, 2), seed);
  Certificate c = solve(q);
  out.push_back({"tverberg-quant", std::move(q), std::move(c)});
  return out;
}

/// Area of a bounded planar half-plane intersection, clipping a large box (Sutherland-Hodgman).
inline Scalar clipped_area(const std::vector<HalfSpace>& hs) {
  std::vector<Point> poly{Point{-100, -100}, Point{100, -100}, Point{100, 100}, Point{-100, 100}};
  for (const auto& h : hs) {
    std::vector<Point> next;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Point& a = poly[i];
      const Point& b = poly[(i + 1) % poly.size()];
      const Scalar sa = h.slack(a);
      const Scalar sb = h.slack(b);
      if (sa.sign() >= 0) next.push_back(a);
      if ((sa.sign() > 0 && sb.sign() < 0) || (sa.sign() < 0 && sb.sign() > 0)) next.push_back(a + (b - a) * (sa / (sa - sb)));
    }
    poly = std::move(next);
  }
  Scalar twice;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % poly.size()];
    twice += a[0] * b[1] - a[1] * b[0];
  }
  return twice.abs() / Scalar(2);
}

struct Mutation {
  std::string field;
  Certificate certificate;
};

/// Every single-field mutation of a certificate: one changed value, or one
/// optional claim removed. The `verified` flag is output, not claim, and is left alone.
inline std::vector<Mutation> mutations(const Certificate& c) {
  std::vector<Mutation> out;
  auto add = [&](std::string field, const std::function<void(Certificate&)>& f) {
    Certificate m = c;
    f(m);
    out.push_back({std::move(field), std::move(m)});
  };
  auto bump = [](Point& p) { p[0] += Scalar(1); };
  add("kind", [](Certificate& m) { m.kind = static_cast<CertificateKind>((static_cast<int>(m.kind) + 1) % 8); });
  add("dim", [](Certificate& m) { ++m.dim; });
  add("exact", [](Certificate& m) { m.exact = !m.exact; });
  for (std::size_t k = 0; k < c.witness.points.size(); ++k) {
    const std::string f = "witness.points[" + std::to_string(k) + "]";
    add(f + ".at", [k](Certificate& m) { ++m.witness.points[k].at.back(); });
    add(f + ".point", [k, bump](Certificate& m) { bump(m.witness.points[k].point); });
  }
  for (std::size_t k = 0; k < c.witness.halfspaces.size(); ++k) {
    const std::string f = "witness.halfspaces[" + std::to_string(k) + "]";
    add(f + ".at", [k](Certificate& m) { ++m.witness.halfspaces[k].at.back(); });
    add(f + ".halfspace", [k](Certificate& m) {
      const HalfSpace& h = m.witness.halfspaces[k].halfspace;
      m.witness.halfspaces[k].halfspace = HalfSpace(h.normal(), h.offset() + Scalar(1));
    });
  }
  for (std::size_t k = 0; k < c.witness.parts.size(); ++k) {
    add("witness.parts[" + std::to_string(k) + "]", [k](Certificate& m) {
      auto& v = m.witness.parts[k][0];
      v = (v + 1) % m.witness.points.size();
    });
  }
  add("witness.unused", [](Certificate& m) {
    if (m.witness.unused.empty()) m.witness.unused.push_back(0);
    else ++m.witness.unused.back();
  });
  const Claim& k = c.claim;
  if (k.target) {
    add("claim.target", [bump](Certificate& m) { bump(*m.claim.target); });
    add("claim.target(removed)", [](Certificate& m) { m.claim.target.reset(); });
  }
  if (k.anchor) {
    add("claim.anchor", [bump](Certificate& m) { bump(*m.claim.anchor); });
    add("claim.anchor(removed)", [](Certificate& m) { m.claim.anchor.reset(); });
  }
  for (std::size_t w = 0; w < k.weights.size(); ++w) {
    add("claim.weights[" + std::to_string(w) + "]", [w](Certificate& m) { m.claim.weights[w][0] += Scalar(1); });
  }
  if (k.center) {
    add("claim.center", [bump](Certificate& m) { bump(*m.claim.center); });
    add("claim.center(removed)", [](Certificate& m) { m.claim.center.reset(); });
  }
  auto scalar_field = [&](const char* name, std::optional<Scalar> Claim::*field) {
    if (!(c.claim.*field)) return;
    add(std::string("claim.") + name, [field](Certificate& m) { *(m.claim.*field) += Scalar(1); });
    add(std::string("claim.") + name + "(removed)", [field](Certificate& m) { (m.claim.*field).reset(); });
  };
  scalar_field("radius_squared", &Claim::radius_squared);
  scalar_field("radius", &Claim::radius);
  scalar_field("ratio", &Claim::ratio);
  scalar_field("bound", &Claim::bound);
  if (k.bound_met) {
    add("claim.bound_met", [](Certificate& m) { *m.claim.bound_met = !*m.claim.bound_met; });
    add("claim.bound_met(removed)", [](Certificate& m) { m.claim.bound_met.reset(); });
  }
  return out;
}

/// verify() as a boolean; a thrown error (kind mismatch, bad instance) counts as rejection.
inline bool accepted(const Certificate& c, const Instance& in) {
  try {
    return oracle::verify(c, in).ok;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace qc::testing
