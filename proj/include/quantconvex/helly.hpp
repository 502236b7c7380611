#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quantconvex/approx.hpp"
#include "quantconvex/caratheodory.hpp"
#include "quantconvex/convex/lp.hpp"
#include "quantconvex/convex/ops.hpp"
#include "quantconvex/core/types.hpp"

namespace qc {

/// Subfamily F' of a half-space family with its realized quality.
struct HellyWitness {
  Certificate certificate;
  std::vector<std::size_t> subfamily;  // sorted indices into the input
  std::size_t k = 0;                   // facet count of the circumscribed polytope
  Scalar epsilon_used;
};

namespace detail {

/// Volume of the intersection, 0 if empty, nullopt if unbounded.
inline std::optional<Scalar> intersection_volume(const std::vector<HalfSpace>& hs, int d) {
  const HPolytope p(d, hs);
  if (hs.empty()) return std::nullopt;
  if (convex::is_empty(p)) return Scalar(0);
  if (convex::recession_direction(hs, d)) return std::nullopt;
  const auto verts = convex::h_to_v(p);
  if (convex::affine_dimension(verts) < d) return Scalar(0);
  return convex::volume(VPolytope(d, verts));
}

inline std::vector<HalfSpace> gather(const std::vector<HalfSpace>& f, const std::vector<std::size_t>& ids) {
  std::vector<HalfSpace> out;
  for (auto i : ids) out.push_back(f[i]);
  return out;
}

enum class Circumscribe { volume, diameter };

struct Extraction {
  std::vector<std::size_t> subfamily;
  std::size_t k = 0;
  Point shift;
};

/// The polarity construction shared by the volume and diameter witnesses:
/// circumscribe K by P, cover each vertex of P* by at most d polar points of F
/// (anchor 0), and keep the half-spaces used.
inline Extraction extract_by_polarity(const std::vector<HalfSpace>& f, int d, const Scalar& eps, Circumscribe how) {
  require(!f.empty(), ErrorCode::precondition, "empty half-space family");
  for (const auto& h : f) require(h.dim() == d, ErrorCode::dimension, "half-space dimension mismatch");
  const HPolytope k(d, f);
  require(!convex::is_empty(k), ErrorCode::precondition, "the intersection is empty");
  require(convex::is_bounded(k), ErrorCode::precondition, "the intersection is unbounded");
  const auto ball = convex::chebyshev_center(k);
  require(ball.radius.sign() > 0, ErrorCode::precondition, "the intersection has empty interior");

  Extraction out;
  out.shift = ball.center;
  const HPolytope kc = k.translated(ball.center);
  const approx::Approximation p = how == Circumscribe::volume ? approx::circumscribed_poly(kc, eps) : approx::diameter_poly(kc, eps);
  out.k = p.facets.size();

  std::vector<Point> dual;
  for (const auto& h : kc.halfspaces()) dual.push_back(h.normal() / h.offset());
  const PointFamily copies(std::vector<std::vector<Point>>(static_cast<std::size_t>(d), dual));
  const Point origin = Point::zero(d);
  std::set<std::size_t> used;
  std::vector<Point> pstar;
  for (const auto& facet : p.facets) {
    require(facet.offset().sign() > 0, ErrorCode::internal, "circumscribed polytope misses the center");
    const Point w = facet.normal() / facet.offset();
    pstar.push_back(w);
    const RainbowSelection sel = very_colorful_caratheodory(copies, w, origin);
    for (std::size_t i = 0; i < sel.choice.size(); ++i) {
      if (sel.weights[i].sign() > 0) used.insert(sel.choice[i]);
    }
  }
  out.subfamily.assign(used.begin(), used.end());
  require(out.subfamily.size() <= out.k * static_cast<std::size_t>(d), ErrorCode::internal, "subfamily exceeds k d");
  // P* inside conv(F'* and 0), i.e. the intersection of F' lies in P.
  std::vector<Point> hull{origin};
  for (auto i : out.subfamily) hull.push_back(dual[i]);
  for (const auto& w : pstar) require(convex::in_hull(hull, w), ErrorCode::internal, "polar containment check failed");
  return out;
}

inline Certificate helly_certificate(CertificateKind kind, int d, const std::vector<HalfSpace>& f, const std::vector<std::size_t>& ids) {
  Certificate c;
  c.kind = kind;
  c.dim = d;
  for (auto i : ids) c.witness.halfspaces.push_back({{i}, f[i]});
  return c;
}

}  // namespace detail

/// Subfamily F' with vol(intersection of F') <= (1 + eps) vol(intersection of F)
/// and |F'| <= k d, k the facet count of a circumscribed polytope.
inline HellyWitness extract_volume_witness(const std::vector<HalfSpace>& f, const Scalar& eps) {
  require(!f.empty(), ErrorCode::precondition, "empty half-space family");
  const int d = f.front().dim();
  require(d <= convex::kCertifiedVolumeDim, ErrorCode::unsupported, "volume certificates need d <= 3");
  require(eps.sign() > 0, ErrorCode::precondition, "epsilon must be positive");
  const auto ex = detail::extract_by_polarity(f, d, eps, detail::Circumscribe::volume);
  const Scalar vol_k = *detail::intersection_volume(f, d);
  require(vol_k.sign() > 0, ErrorCode::precondition, "the intersection has zero volume");
  const auto vol_sub = detail::intersection_volume(detail::gather(f, ex.subfamily), d);
  require(vol_sub.has_value(), ErrorCode::internal, "subfamily intersection is unbounded");

  HellyWitness out;
  out.subfamily = ex.subfamily;
  out.k = ex.k;
  out.epsilon_used = eps;
  out.certificate = detail::helly_certificate(CertificateKind::helly_volume, d, f, ex.subfamily);
  auto& claim = out.certificate.claim;
  claim.ratio = *vol_sub / vol_k;
  require(*claim.ratio >= Scalar(1), ErrorCode::internal, "subfamily intersection is smaller than the full one");
  claim.bound = Scalar(1) + eps;
  claim.bound_met = *claim.ratio <= *claim.bound;
  return out;
}

/// Subfamily F' with diam(intersection of F') <= (1 + eps) diam(intersection of F).
/// The claimed ratio is the squared diameter ratio, bounded by (1 + eps)^2.
inline HellyWitness extract_diameter_witness(const std::vector<HalfSpace>& f, const Scalar& eps) {
  require(!f.empty(), ErrorCode::precondition, "empty half-space family");
  const int d = f.front().dim();
  require(eps.sign() > 0, ErrorCode::precondition, "epsilon must be positive");
  const auto ex = detail::extract_by_polarity(f, d, eps, detail::Circumscribe::diameter);
  const Scalar diam_k = convex::diameter_squared(convex::h_to_v(HPolytope(d, f)));
  require(diam_k.sign() > 0, ErrorCode::precondition, "the intersection is a point");
  const Scalar diam_sub = convex::diameter_squared(convex::h_to_v(HPolytope(d, detail::gather(f, ex.subfamily))));

  HellyWitness out;
  out.subfamily = ex.subfamily;
  out.k = ex.k;
  out.epsilon_used = eps;
  out.certificate = detail::helly_certificate(CertificateKind::helly_diameter, d, f, ex.subfamily);
  auto& claim = out.certificate.claim;
  claim.ratio = diam_sub / diam_k;
  claim.bound = (Scalar(1) + eps) * (Scalar(1) + eps);
  claim.bound_met = *claim.ratio <= *claim.bound;
  return out;
}

struct HalfspaceCover {
  std::vector<std::size_t> sets;         // indices of at most d sets
  std::vector<std::vector<Scalar>> multipliers;  // per chosen set, one weight per half-space
};

/// At most d of the sets whose intersection already lies in H, read off the
/// support of a basic optimal dual of  max a.x  over the full intersection.
inline HalfspaceCover halfspace_cover_lemma(const std::vector<HPolytope>& f, const HalfSpace& h) {
  require(!f.empty(), ErrorCode::precondition, "empty family of sets");
  const int d = h.dim();
  const auto du = static_cast<std::size_t>(d);
  std::vector<HalfSpace> all;
  std::vector<std::pair<std::size_t, std::size_t>> owner;
  for (std::size_t s = 0; s < f.size(); ++s) {
    require(f[s].dim() == d, ErrorCode::dimension, "set dimension mismatch");
    for (std::size_t j = 0; j < f[s].size(); ++j) {
      all.push_back(f[s].halfspaces()[j]);
      owner.emplace_back(s, j);
    }
  }
  require(!convex::is_empty(HPolytope(d, all)), ErrorCode::precondition, "the sets have empty intersection");
  const auto primal = convex::lp_solve(all, h.normal());
  require(primal.status == convex::LPStatus::feasible && primal.value <= h.offset(), ErrorCode::precondition,
          "the intersection is not contained in H");

  // min y.b  s.t.  sum y_i a_i = a, y >= 0; a basic optimum has at most d nonzeros.
  convex::Matrix a(du, std::vector<Scalar>(all.size()));
  std::vector<Scalar> cost(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t r = 0; r < du; ++r) a[r][i] = all[i].normal()[r];
    cost[i] = all[i].offset();
  }
  const auto dual = convex::solve_standard(a, std::vector<Scalar>(h.normal().begin(), h.normal().end()), cost);
  require(dual.status == convex::LPStatus::feasible && dual.value <= h.offset(), ErrorCode::internal,
          "dual certificate missing");

  std::map<std::size_t, std::vector<Scalar>> chosen;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (dual.x[i].is_zero()) continue;
    auto& w = chosen[owner[i].first];
    if (w.empty()) w.assign(f[owner[i].first].size(), Scalar(0));
    w[owner[i].second] = dual.x[i];
  }
  require(chosen.size() <= du, ErrorCode::internal, "dual support uses more than d sets");
  HalfspaceCover out;
  std::vector<HalfSpace> sub;
  for (auto& [s, w] : chosen) {
    out.sets.push_back(s);
    out.multipliers.push_back(std::move(w));
    sub.insert(sub.end(), f[s].halfspaces().begin(), f[s].halfspaces().end());
  }
  if (out.sets.empty()) {
    // a = 0 and 0 <= b: H is the whole space and any single set will do.
    out.sets.push_back(0);
    out.multipliers.emplace_back(f[0].size(), Scalar(0));
  }
  return out;
}

struct ColorfulHellyOptions {
  std::size_t exhaustive_cap = 4096;  // product of pruned family sizes allowed for the exhaustive fallback
  bool allow_exhaustive = true;
  std::size_t max_swaps = 10000;
};

struct ColorfulHellyResult {
  Certificate certificate;
  std::vector<std::size_t> choice;               // index into each family
  std::vector<std::vector<std::size_t>> pruned;  // surviving indices per family after the first phase
  Scalar epsilon_prune;                          // eps' = eps / 4
  Scalar epsilon_witness;                        // eps'' = eps / (4 d k(eps'))
  std::size_t swaps = 0;                         // accepted volume-reducing swaps
  bool finite_from_duality = false;              // bounded choice found without exhaustive repair
  bool used_exhaustive = false;
  Scalar volume;
  Scalar reference_volume;                       // max_i vol(intersection of F_i)
};

namespace detail {

inline std::vector<HalfSpace> rainbow(const std::vector<std::vector<HalfSpace>>& fs, const std::vector<std::size_t>& choice) {
  std::vector<HalfSpace> out;
  for (std::size_t i = 0; i < fs.size(); ++i) out.push_back(fs[i][choice[i]]);
  return out;
}

/// Odometer over the pruned families: the smallest-volume bounded rainbow choice.
inline std::optional<std::pair<Scalar, std::vector<std::size_t>>> exhaustive_colorful_helly(
    const std::vector<std::vector<HalfSpace>>& fs, const std::vector<std::vector<std::size_t>>& allowed, int d) {
  std::optional<std::pair<Scalar, std::vector<std::size_t>>> best;
  std::vector<std::size_t> pos(fs.size(), 0);
  for (;;) {
    std::vector<std::size_t> choice(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) choice[i] = allowed[i][pos[i]];
    if (auto v = intersection_volume(rainbow(fs, choice), d); v && (!best || *v < best->first)) best = std::make_pair(*v, choice);
    std::size_t i = fs.size();
    while (i > 0 && ++pos[i - 1] == allowed[i - 1].size()) pos[--i] = 0;
    if (i == 0) break;
  }
  return best;
}

}  // namespace detail

/// Colorful Helly with volume, dual form: one half-space from each family
/// whose common intersection has volume at most (1 + eps) max_i vol(intersection of F_i).
inline ColorfulHellyResult colorful_helly_search(const std::vector<std::vector<HalfSpace>>& fs, const Scalar& eps,
                                                 const ColorfulHellyOptions& opt = {}) {
  require(!fs.empty(), ErrorCode::precondition, "no families");
  require(eps.sign() > 0, ErrorCode::precondition, "epsilon must be positive");
  const int d = fs.front().empty() ? 0 : fs.front().front().dim();
  require(d >= 1 && d <= convex::kCertifiedVolumeDim, ErrorCode::unsupported, "volume certificates need 1 <= d <= 3");
  const auto du = static_cast<std::size_t>(d);
  const std::size_t n = fs.size();
  require(n >= du + 1, ErrorCode::precondition, "need at least d + 1 families");

  ColorfulHellyResult out;
  out.epsilon_prune = eps / Scalar(4);
  std::size_t kmax = 1;
  for (std::size_t i = 0; i < n; ++i) {
    require(!fs[i].empty(), ErrorCode::precondition, "family " + std::to_string(i) + " is empty");
    const auto v = detail::intersection_volume(fs[i], d);
    require(v && v->sign() > 0, ErrorCode::precondition,
            "family " + std::to_string(i) + " must have a bounded intersection with positive volume");
    out.reference_volume = max(out.reference_volume, *v);
    const auto w = extract_volume_witness(fs[i], out.epsilon_prune);
    out.pruned.push_back(w.subfamily);
    kmax = std::max(kmax, w.k);
  }
  out.epsilon_witness = eps / Scalar(static_cast<long>(4 * du * kmax));

  // Duality phase: the polar points of the first d + 1 pruned families each
  // surround the origin, so a colorful Caratheodory choice does too; its
  // half-spaces then have no common recession direction unless degenerate.
  std::vector<std::size_t> choice(n);
  for (std::size_t i = 0; i < n; ++i) choice[i] = out.pruned[i].front();
  {
    std::vector<std::vector<Point>> normals;
    for (std::size_t i = 0; i <= du; ++i) {
      std::vector<Point> c;
      for (auto j : out.pruned[i]) c.push_back(fs[i][j].normal());
      normals.push_back(std::move(c));
    }
    const RainbowSelection sel = colorful_caratheodory(PointFamily(std::move(normals)), Point::zero(d));
    for (std::size_t i = 0; i <= du; ++i) choice[i] = out.pruned[i][sel.choice[i]];
  }
  // Repair: a recession direction y is killed by any half-space with a.y > 0.
  auto recession = [&](const std::vector<std::size_t>& c) {
    return convex::recession_direction(detail::rainbow(fs, c), d);
  };
  for (std::size_t round = 0; round < 4 * n; ++round) {
    const auto y = recession(choice);
    if (!y) break;
    std::optional<std::pair<Scalar, std::pair<std::size_t, std::size_t>>> pick;
    for (std::size_t i = 0; i < n; ++i) {
      if (dot(fs[i][choice[i]].normal(), *y).sign() > 0) continue;
      for (auto j : out.pruned[i]) {
        const Scalar gain = dot(fs[i][j].normal(), *y);
        if (gain.sign() > 0) {
          // Prefer families whose current half-space contributes least against y.
          const Scalar score = gain - dot(fs[i][choice[i]].normal(), *y);
          if (!pick || score > pick->first) pick = std::make_pair(score, std::make_pair(i, j));
        }
      }
    }
    if (!pick) break;
    choice[pick->second.first] = pick->second.second;
  }
  out.finite_from_duality = !recession(choice).has_value();
  if (!out.finite_from_duality) {
    std::size_t product = 1;
    for (const auto& p : out.pruned) product = product > opt.exhaustive_cap ? product : product * p.size();
    require(product <= opt.exhaustive_cap, ErrorCode::budget, "no finite-volume rainbow choice found within the search cap");
    const auto best = detail::exhaustive_colorful_helly(fs, out.pruned, d);
    require(best.has_value(), ErrorCode::precondition, "no rainbow choice has a bounded intersection");
    choice = best->second;
    out.used_exhaustive = true;
  }

  // Local improvement: swap in half-spaces, families outside the current
  // witness subfamily first, accepting only strict volume decreases.
  Scalar vol = *detail::intersection_volume(detail::rainbow(fs, choice), d);
  auto try_swaps = [&](const std::vector<std::size_t>& order) -> bool {
    std::optional<std::pair<Scalar, std::vector<std::size_t>>> best;
    for (auto i : order) {
      for (std::size_t j = 0; j < fs[i].size(); ++j) {
        if (j == choice[i]) continue;
        auto c = choice;
        c[i] = j;
        if (auto v = detail::intersection_volume(detail::rainbow(fs, c), d); v && *v < vol && (!best || *v < best->first)) {
          best = std::make_pair(*v, std::move(c));
        }
      }
      if (best) break;
    }
    if (!best) {
      for (std::size_t a = 0; a < n && !best; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          for (std::size_t ja = 0; ja < fs[a].size(); ++ja) {
            for (std::size_t jb = 0; jb < fs[b].size(); ++jb) {
              if (ja == choice[a] || jb == choice[b]) continue;
              auto c = choice;
              c[a] = ja;
              c[b] = jb;
              if (auto v = detail::intersection_volume(detail::rainbow(fs, c), d); v && *v < vol && (!best || *v < best->first)) {
                best = std::make_pair(*v, std::move(c));
              }
            }
          }
        }
      }
    }
    if (!best) return false;
    require(best->first < vol, ErrorCode::internal, "swap did not decrease the volume");
    vol = best->first;
    choice = std::move(best->second);
    return true;
  };
  while (out.swaps < opt.max_swaps && vol.sign() > 0) {
    const auto current = detail::rainbow(fs, choice);
    const auto w = extract_volume_witness(current, out.epsilon_witness);
    std::vector<std::size_t> order;
    std::vector<bool> in_witness(n, false);
    for (auto i : w.subfamily) in_witness[i] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_witness[i]) order.push_back(i);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (in_witness[i]) order.push_back(i);
    }
    if (!try_swaps(order)) break;
    ++out.swaps;
  }

  if (vol > (Scalar(1) + eps) * out.reference_volume && opt.allow_exhaustive) {
    std::size_t product = 1;
    for (const auto& p : out.pruned) product = product > opt.exhaustive_cap ? product : product * p.size();
    if (product <= opt.exhaustive_cap) {
      if (const auto best = detail::exhaustive_colorful_helly(fs, out.pruned, d); best && best->first < vol) {
        vol = best->first;
        choice = best->second;
        out.used_exhaustive = true;
      }
    }
  }

  out.choice = choice;
  out.volume = vol;
  Certificate& cert = out.certificate;
  cert.kind = CertificateKind::colorful_helly;
  cert.dim = d;
  for (std::size_t i = 0; i < n; ++i) cert.witness.halfspaces.push_back({{i, choice[i]}, fs[i][choice[i]]});
  cert.claim.ratio = vol / out.reference_volume;
  cert.claim.bound = Scalar(1) + eps;
  cert.claim.bound_met = *cert.claim.ratio <= *cert.claim.bound;
  return out;
}

}  // namespace qc
