#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "quantconvex/caratheodory.hpp"
#include "quantconvex/convex/linalg.hpp"
#include "quantconvex/convex/lp.hpp"
#include "quantconvex/convex/ops.hpp"
#include "quantconvex/core/types.hpp"
#include "quantconvex/steinitz.hpp"

namespace qc {

/// Parts as index lists into the input points, and a point in every part's hull.
struct TverbergPartition {
  std::vector<std::vector<std::size_t>> parts;
  Point point;
};

enum class TverbergEngine { automatic, radon, exhaustive, sarkaria };

inline std::size_t tverberg_min_points(int d, std::size_t m) { return static_cast<std::size_t>(d + 1) * (m - 1) + 1; }

namespace detail {

/// A point common to conv(parts[k]) for all k, or nullopt (one LP).
inline std::optional<Point> common_point(const std::vector<Point>& pts, const std::vector<std::vector<std::size_t>>& parts) {
  const int d = pts.front().dim();
  const auto du = static_cast<std::size_t>(d);
  const std::size_t m = parts.size();
  std::vector<std::pair<std::size_t, std::size_t>> vars;  // (part, point)
  for (std::size_t k = 0; k < m; ++k) {
    for (auto i : parts[k]) vars.emplace_back(k, i);
  }
  // sum_k-part lambda = 1 for every part; for k >= 1: sum_part_k lambda x - sum_part_0 lambda x = 0.
  const std::size_t rows = m + (m - 1) * du;
  convex::Matrix a(rows, std::vector<Scalar>(vars.size()));
  std::vector<Scalar> b(rows);
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const auto [k, i] = vars[v];
    a[k][v] = Scalar(1);
    for (std::size_t kk = 1; kk < m; ++kk) {
      for (std::size_t r = 0; r < du; ++r) {
        const std::size_t row = m + (kk - 1) * du + r;
        if (k == kk) a[row][v] = pts[i][r];
        if (k == 0) a[row][v] = -pts[i][r];
      }
    }
  }
  for (std::size_t k = 0; k < m; ++k) b[k] = Scalar(1);
  const auto s = convex::solve_standard(a, b, std::vector<Scalar>(vars.size()));
  if (s.status != convex::LPStatus::feasible) return std::nullopt;
  Point p = Point::zero(d);
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (vars[v].first == 0) p += pts[vars[v].second] * s.x[v];
  }
  return p;
}

inline void check_partition(const std::vector<Point>& pts, const TverbergPartition& t) {
  for (const auto& part : t.parts) {
    std::vector<Point> hull;
    for (auto i : part) hull.push_back(pts[i]);
    require(!hull.empty() && convex::in_hull(hull, t.point), ErrorCode::internal, "Tverberg point misses a part");
  }
}

inline TverbergPartition radon(const std::vector<Point>& pts) {
  const auto du = static_cast<std::size_t>(pts.front().dim());
  const std::size_t r = du + 2;
  // Affine dependence: sum l_i x_i = 0, sum l_i = 0.
  convex::Matrix a(du + 1, std::vector<Scalar>(r));
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t i = 0; i < du; ++i) a[i][j] = pts[j][i];
    a[du][j] = Scalar(1);
  }
  const auto ns = convex::nullspace(a, r);
  require(!ns.empty(), ErrorCode::internal, "no affine dependence among d + 2 points");
  const auto& l = ns.front();
  TverbergPartition out;
  out.parts.assign(2, {});
  Scalar pos;
  Point p = Point::zero(pts.front().dim());
  for (std::size_t j = 0; j < r; ++j) {
    if (l[j].sign() > 0) {
      out.parts[0].push_back(j);
      pos += l[j];
      p += pts[j] * l[j];
    } else {
      out.parts[1].push_back(j);
    }
  }
  out.point = p / pos;
  for (std::size_t j = r; j < pts.size(); ++j) out.parts[1].push_back(j);
  return out;
}

/// First feasible partition of the leading points in restricted-growth order.
inline std::optional<TverbergPartition> exhaustive_tverberg(const std::vector<Point>& pts, std::size_t m, std::size_t count,
                                                            std::uint64_t budget) {
  std::vector<std::size_t> label(count, 0);
  std::uint64_t seen = 0;
  // Restricted growth: label[i] <= 1 + max(label[0..i-1]), all m labels used.
  std::vector<std::size_t> prefix_max(count, 0);
  auto next = [&]() -> bool {
    for (std::size_t i = count; i-- > 1;) {
      const std::size_t cap = std::min(prefix_max[i - 1] + 1, m - 1);
      if (label[i] < cap) {
        ++label[i];
        for (std::size_t j = i; j < count; ++j) {
          if (j > i) label[j] = 0;
          prefix_max[j] = std::max(j ? prefix_max[j - 1] : 0, label[j]);
        }
        return true;
      }
    }
    return false;
  };
  do {
    if (prefix_max[count - 1] + 1 != m) continue;
    require(++seen <= budget, ErrorCode::budget, "exhaustive partition search exceeded its budget");
    std::vector<std::vector<std::size_t>> parts(m);
    for (std::size_t i = 0; i < count; ++i) parts[label[i]].push_back(i);
    if (auto p = common_point(pts, parts)) {
      for (std::size_t i = count; i < pts.size(); ++i) parts[0].push_back(i);
      return TverbergPartition{std::move(parts), std::move(*p)};
    }
  } while (next());
  return std::nullopt;
}

/// Sarkaria's lift: point i becomes the class {(x_i, 1) (x) v_k}, v_k the
/// vertices of a simplex centered at 0 in R^(m-1); a colorful Caratheodory
/// choice for 0 gives the part of each point.
inline TverbergPartition sarkaria(const std::vector<Point>& pts, std::size_t m) {
  const int d = pts.front().dim();
  const auto du = static_cast<std::size_t>(d);
  const std::size_t count = tverberg_min_points(d, m);
  const std::size_t dim = (du + 1) * (m - 1);
  std::vector<std::vector<Point>> classes;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Point> cls;
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<Scalar> c(dim);
      for (std::size_t r = 0; r <= du; ++r) {
        const Scalar xr = r < du ? pts[i][r] : Scalar(1);
        for (std::size_t s = 0; s + 1 < m; ++s) {
          const Scalar vs = k + 1 < m ? Scalar(k == s ? 1 : 0) : Scalar(-1);
          c[r * (m - 1) + s] = xr * vs;
        }
      }
      cls.emplace_back(std::move(c));
    }
    classes.push_back(std::move(cls));
  }
  const RainbowSelection sel = colorful_caratheodory(PointFamily(std::move(classes)), Point::zero(static_cast<int>(dim)));
  TverbergPartition out;
  out.parts.assign(m, {});
  std::vector<Point> sums(m, Point::zero(d));
  std::vector<Scalar> mass(m);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t k = sel.choice[i];
    out.parts[k].push_back(i);
    sums[k] += pts[i] * sel.weights[i];
    mass[k] += sel.weights[i];
  }
  require(mass[0].sign() > 0, ErrorCode::internal, "Sarkaria lift produced an empty part");
  // All parts carry mass 1/m of the total, so none is empty.
  out.point = sums[0] / mass[0];
  for (std::size_t i = count; i < pts.size(); ++i) out.parts[0].push_back(i);
  return out;
}

}  // namespace detail

/// Partition of the points into m parts whose hulls share a point.
inline TverbergPartition tverberg_partition(const std::vector<Point>& pts, std::size_t m,
                                            TverbergEngine engine = TverbergEngine::automatic,
                                            std::uint64_t budget = 10'000'000) {
  require(!pts.empty(), ErrorCode::precondition, "no points");
  require(m >= 1, ErrorCode::precondition, "need at least one part");
  const int d = pts.front().dim();
  for (const auto& p : pts) require(p.dim() == d, ErrorCode::dimension, "point dimension mismatch");
  const std::size_t need = tverberg_min_points(d, m);
  require(pts.size() >= need, ErrorCode::precondition,
          "too few points: " + std::to_string(pts.size()) + " < (d+1)(m-1)+1 = " + std::to_string(need));
  TverbergPartition out;
  if (m == 1) {
    out.parts.emplace_back(pts.size());
    std::iota(out.parts[0].begin(), out.parts[0].end(), 0);
    out.point = pts.front();
    return out;
  }
  if (engine == TverbergEngine::automatic) {
    if (m == 2) {
      engine = TverbergEngine::radon;
    } else {
      // Stirling-number growth: m^need / m! bounds the candidate count.
      double est = 1;
      for (std::size_t i = 0; i < need; ++i) est *= static_cast<double>(m);
      for (std::size_t i = 2; i <= m; ++i) est /= static_cast<double>(i);
      engine = est <= 2e4 ? TverbergEngine::exhaustive : TverbergEngine::sarkaria;
    }
  }
  switch (engine) {
    case TverbergEngine::radon:
      require(m == 2, ErrorCode::precondition, "Radon partitions have two parts");
      out = detail::radon(pts);
      break;
    case TverbergEngine::exhaustive: {
      auto found = detail::exhaustive_tverberg(pts, m, need, budget);
      require(found.has_value(), ErrorCode::internal, "no Tverberg partition found");
      out = std::move(*found);
      break;
    }
    default:
      out = detail::sarkaria(pts, m);
      break;
  }
  detail::check_partition(pts, out);
  return out;
}

/// Certificate for a classic partition: every input point, the parts (points
/// left out by the engine join part 0), the common point and per-part weights.
inline Certificate tverberg_certificate(const std::vector<Point>& pts, const TverbergPartition& t) {
  Certificate c;
  c.kind = CertificateKind::tverberg;
  c.dim = pts.front().dim();
  for (std::size_t i = 0; i < pts.size(); ++i) c.witness.points.push_back({{i}, pts[i]});
  c.witness.parts = t.parts;
  std::vector<bool> seen(pts.size(), false);
  for (const auto& part : t.parts) {
    for (auto i : part) seen[i] = true;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!seen[i]) c.witness.parts.front().push_back(i);
  }
  c.claim.target = t.point;
  for (const auto& part : c.witness.parts) {
    std::vector<Point> hull;
    for (auto i : part) hull.push_back(pts[i]);
    const auto hm = convex::hull_membership(hull, t.point);
    require(hm.inside, ErrorCode::internal, "Tverberg point misses a part");
    c.claim.weights.push_back(hm.weights);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Arithmetic

enum class SizeVariant { fixed_radius, eps };

/// Number of sets in the continuous quantitative Tverberg theorem.
inline std::size_t theorem41_sizes(int d, std::size_t m, SizeVariant v = SizeVariant::fixed_radius, std::size_t n_prime = 0) {
  require(d >= 1 && m >= 1, ErrorCode::precondition, "d and m must be positive");
  const auto du = static_cast<std::size_t>(d);
  if (v == SizeVariant::fixed_radius) return (2 * du * m - 1) * (du + 1) + 1;
  require(n_prime >= 1, ErrorCode::precondition, "n' must be positive");
  return (m * ((n_prime - 1) * du + 1) - 1) * (du + 1) + 1;
}

namespace detail {

__extension__ using u128 = unsigned __int128;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  std::uint64_t r = 1;
  a %= n;
  for (; e; e >>= 1U) {
    if (e & 1U) r = mul_mod(r, a, n);
    a = mul_mod(a, a, n);
  }
  return r;
}

}  // namespace detail

/// Miller-Rabin with the first twelve prime bases, exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

/// Smallest prime >= q.
inline std::uint64_t next_prime_ceil(std::uint64_t q) {
  require(q >= 2, ErrorCode::precondition, "q must be at least 2");
  while (!is_prime(q)) ++q;
  return q;
}

/// Sets per color class in the colorful theorem.
inline std::size_t colorful_tverberg_size(int d, std::size_t m, SizeVariant v = SizeVariant::fixed_radius, std::size_t n_prime = 0) {
  require(d >= 1 && m >= 1, ErrorCode::precondition, "d and m must be positive");
  const auto du = static_cast<std::size_t>(d);
  if (v == SizeVariant::fixed_radius) return static_cast<std::size_t>(next_prime_ceil(2 * m * du + 1)) - 1;
  require(n_prime >= 1, ErrorCode::precondition, "n' must be positive");
  return static_cast<std::size_t>(next_prime_ceil(m * ((n_prime - 1) * du + 1) + 1)) - 1;
}

// ---------------------------------------------------------------------------
// Quantitative versions

/// Radius target: the fixed constant, or 1/(1+eps) with n' sandwich vertices.
struct RadiusTarget {
  SizeVariant variant = SizeVariant::fixed_radius;
  Scalar epsilon;
  std::size_t n_prime = 0;
};

struct QuantTverbergOptions {
  std::uint64_t seed = 0;  // 0: blocks of consecutive parts; otherwise a shuffled block assignment
  std::uint64_t budget = 10'000'000;
  Scalar precision = default_precision();
};

struct QuantTverbergResult {
  Certificate certificate;
  TverbergPartition centers;     // partition of the centers (indices into the set list)
  std::vector<Point> center_points;
  std::vector<std::size_t> unused;
};

namespace detail {

inline std::size_t block_size(int d, const RadiusTarget& t) {
  const auto du = static_cast<std::size_t>(d);
  return t.variant == SizeVariant::fixed_radius ? 2 * du : (t.n_prime - 1) * du + 1;
}

/// Center with B_1(center) inside conv(set); checked exactly.
inline Point certified_center(const std::vector<Point>& set, const std::optional<Point>& given, const std::string& name) {
  const int d = set.front().dim();
  Point c = given ? *given : convex::chebyshev_center(HPolytope(d, convex::v_to_h(set))).center;
  const auto rb = convex::ball_in_hull_radius(set, c);
  require(rb.radius_squared >= Scalar(1), ErrorCode::precondition, name + " does not contain a unit ball around its center");
  return c;
}

struct Member {
  std::vector<std::size_t> path;  // index path of the set
  const std::vector<Point>* points;
};

/// One point per part from the union of the part's sets, via the Steinitz
/// selection around p, grouped into blocks; fills the certificate.
inline void steinitz_blocks(const std::vector<std::vector<Member>>& parts, const Point& p, std::size_t m, std::size_t block,
                            const RadiusTarget& target, std::uint64_t seed, const Scalar& precision, Certificate& cert) {
  const int d = p.dim();
  std::vector<std::size_t> order(parts.size());
  std::iota(order.begin(), order.end(), 0);
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::optional<Scalar> r2;
  for (std::size_t b = 0; b < m; ++b) {
    std::vector<std::vector<Point>> classes;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> origin;  // (member, point) per union point
    for (std::size_t j = 0; j < block; ++j) {
      const auto& part = parts[order[b * block + j]];
      std::vector<Point> cls;
      std::vector<std::pair<std::size_t, std::size_t>> where;
      for (std::size_t s = 0; s < part.size(); ++s) {
        for (std::size_t i = 0; i < part[s].points->size(); ++i) {
          cls.push_back((*part[s].points)[i] - p);
          where.emplace_back(s, i);
        }
      }
      classes.push_back(std::move(cls));
      origin.push_back(std::move(where));
    }
    const PointFamily f(std::move(classes));
    const SteinitzResult sel = target.variant == SizeVariant::fixed_radius ? colored_steinitz_ball(f, precision)
                                                                            : steinitz_ball_eps(f, target.epsilon, precision);
    std::vector<std::size_t> ids;
    std::vector<Point> hull;
    for (std::size_t j = 0; j < block; ++j) {
      const auto [s, i] = origin[j][sel.choice[j]];
      const Member& mem = parts[order[b * block + j]][s];
      std::vector<std::size_t> at = mem.path;
      at.push_back(i);
      ids.push_back(cert.witness.points.size());
      hull.push_back((*mem.points)[i]);
      cert.witness.points.push_back({std::move(at), (*mem.points)[i]});
    }
    cert.witness.parts.push_back(std::move(ids));
    const auto rb = convex::ball_in_hull_radius(hull, p, precision);
    if (!r2 || rb.radius_squared < *r2) r2 = rb.radius_squared;
  }
  cert.claim.center = p;
  cert.claim.radius_squared = *r2;
  cert.claim.radius = sqrt_lower(*r2, precision);
  if (target.variant == SizeVariant::fixed_radius) {
    cert.claim.bound = steinitz_radius_upper(d);
    cert.claim.bound_met = *r2 >= *cert.claim.bound * *cert.claim.bound;
  } else {
    cert.claim.bound = Scalar(1) / (Scalar(1) + target.epsilon);
    cert.claim.bound_met = *r2 * (Scalar(1) + target.epsilon) * (Scalar(1) + target.epsilon) >= Scalar(1);
  }
}

}  // namespace detail

/// Continuous quantitative Tverberg: sets T_i whose hulls contain unit balls
/// B_1(c_i); picks t_i in T_i and m parts whose hulls share a certified ball.
inline QuantTverbergResult quantitative_tverberg(const std::vector<std::vector<Point>>& sets, std::size_t m,
                                                 const RadiusTarget& target = {},
                                                 const std::vector<std::optional<Point>>& centers = {},
                                                 const QuantTverbergOptions& opt = {}) {
  require(!sets.empty() && !sets.front().empty(), ErrorCode::precondition, "no sets");
  const int d = sets.front().front().dim();
  require(m >= 1, ErrorCode::precondition, "need at least one part");
  const std::size_t n = theorem41_sizes(d, m, target.variant, target.n_prime);
  require(sets.size() == n, ErrorCode::precondition,
          "wrong instance size: " + std::to_string(sets.size()) + " sets, the theorem uses " + std::to_string(n));
  QuantTverbergResult out;
  for (std::size_t i = 0; i < n; ++i) {
    require(!sets[i].empty(), ErrorCode::precondition, "set " + std::to_string(i) + " is empty");
    out.center_points.push_back(detail::certified_center(sets[i], i < centers.size() ? centers[i] : std::nullopt,
                                                         "set " + std::to_string(i)));
  }
  const std::size_t block = detail::block_size(d, target);
  const std::size_t parts = m * block;
  out.centers = tverberg_partition(out.center_points, parts, TverbergEngine::automatic, opt.budget);
  const Point& p = out.centers.point;

  // One set per center part is enough; the rest of each part stays unused.
  std::vector<std::vector<detail::Member>> members(parts);
  std::vector<bool> used(n, false);
  for (std::size_t k = 0; k < parts; ++k) {
    for (auto i : out.centers.parts[k]) {
      members[k].push_back({{i}, &sets[i]});
      used[i] = true;
    }
  }
  Certificate& cert = out.certificate;
  cert.kind = CertificateKind::tverberg;
  cert.dim = d;
  detail::steinitz_blocks(members, p, m, block, target, opt.seed, opt.precision, cert);
  std::vector<bool> picked(n, false);
  for (const auto& pick : cert.witness.points) picked[pick.at[0]] = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!picked[i]) out.unused.push_back(i);
  }
  cert.witness.unused = out.unused;
  return out;
}

struct ColorfulTverbergResult {
  Certificate certificate;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> center_parts;  // (color, set) per rainbow part
  Point point;
  std::uint64_t candidates = 0;  // partial assignments explored by the search
};

namespace detail {

/// Disjoint rainbow sets of centers (at most one per color) whose hulls share a
/// point. Candidate points are tried first (packing search around each); the
/// full exhaustive search over rainbow partitions follows within the budget.
inline std::optional<std::pair<std::vector<std::vector<std::pair<std::size_t, std::size_t>>>, Point>> colorful_tverberg_search(
    const std::vector<std::vector<Point>>& colors, std::size_t parts, std::uint64_t budget, std::uint64_t& seen) {
  using Id = std::pair<std::size_t, std::size_t>;
  const std::size_t nc = colors.size();
  std::vector<Id> all;
  std::vector<Point> flat;
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t j = 0; j < colors[c].size(); ++j) {
      all.emplace_back(c, j);
      flat.push_back(colors[c][j]);
    }
  }
  auto tick = [&] { require(++seen <= budget, ErrorCode::budget, "colorful partition search exceeded its budget"); };

  // Packing around a fixed point: rainbow sets whose hull holds it.
  auto pack = [&](const Point& p) -> std::optional<std::vector<std::vector<Id>>> {
    std::vector<std::vector<std::size_t>> cands;  // indices into `all`
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> grow = [&](std::size_t from) {
      if (!cur.empty()) {
        tick();
        std::vector<Point> h;
        for (auto i : cur) h.push_back(flat[i]);
        if (convex::in_hull(h, p)) {
          cands.push_back(cur);
          return;  // supersets are never needed
        }
      }
      if (cur.size() == nc) return;
      for (std::size_t i = from; i < all.size(); ++i) {
        if (std::any_of(cur.begin(), cur.end(), [&](std::size_t j) { return all[j].first == all[i].first; })) continue;
        cur.push_back(i);
        grow(i + 1);
        cur.pop_back();
      }
    };
    grow(0);
    std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<bool> taken(all.size(), false);
    std::vector<std::size_t> chosen;
    std::function<bool(std::size_t)> search = [&](std::size_t from) {
      if (chosen.size() == parts) return true;
      for (std::size_t c = from; c < cands.size(); ++c) {
        if (std::any_of(cands[c].begin(), cands[c].end(), [&](std::size_t i) { return taken[i]; })) continue;
        tick();
        for (auto i : cands[c]) taken[i] = true;
        chosen.push_back(c);
        if (search(c + 1)) return true;
        chosen.pop_back();
        for (auto i : cands[c]) taken[i] = false;
      }
      return false;
    };
    if (!search(0)) return std::nullopt;
    std::vector<std::vector<Id>> out;
    for (auto c : chosen) {
      std::vector<Id> part;
      for (auto i : cands[c]) part.push_back(all[i]);
      out.push_back(std::move(part));
    }
    return out;
  };

  std::vector<Point> probes;
  const auto needed = tverberg_min_points(flat.front().dim(), parts);
  if (flat.size() >= needed) probes.push_back(tverberg_partition(flat, parts, TverbergEngine::sarkaria).point);
  probes.push_back(convex::centroid(flat));
  for (const auto& p : probes) {
    if (auto found = pack(p)) return std::make_pair(std::move(*found), p);
  }

  // Exhaustive: label every center with a part or "unused", rainbow per part.
  std::vector<std::size_t> label(all.size(), parts);
  std::vector<std::vector<std::size_t>> members(parts);
  std::optional<std::pair<std::vector<std::vector<Id>>, Point>> result;
  std::function<bool(std::size_t, std::size_t)> assign = [&](std::size_t i, std::size_t opened) {
    const std::size_t left = all.size() - i;
    std::size_t empty = 0;
    for (const auto& mbr : members) empty += mbr.empty() ? 1 : 0;
    if (empty > left) return false;
    if (i == all.size()) {
      tick();
      if (auto p = common_point(flat, members)) {
        std::vector<std::vector<Id>> out;
        for (const auto& mbr : members) {
          std::vector<Id> part;
          for (auto j : mbr) part.push_back(all[j]);
          out.push_back(std::move(part));
        }
        result = std::make_pair(std::move(out), std::move(*p));
        return true;
      }
      return false;
    }
    // Parts are opened in order to skip relabelings.
    for (std::size_t k = 0; k <= std::min(opened, parts - 1); ++k) {
      if (std::any_of(members[k].begin(), members[k].end(), [&](std::size_t j) { return all[j].first == all[i].first; })) continue;
      members[k].push_back(i);
      if (assign(i + 1, std::max(opened, k + 1))) return true;
      members[k].pop_back();
    }
    return assign(i + 1, opened);
  };
  if (assign(0, 0)) return result;
  return std::nullopt;
}

}  // namespace detail

/// Colorful continuous quantitative Tverberg: d+1 color classes of n sets.
inline ColorfulTverbergResult colorful_quantitative_tverberg(const std::vector<std::vector<std::vector<Point>>>& colors, std::size_t m,
                                                             const RadiusTarget& target = {},
                                                             const QuantTverbergOptions& opt = {}) {
  require(!colors.empty() && !colors.front().empty() && !colors.front().front().empty(), ErrorCode::precondition, "no sets");
  const int d = colors.front().front().front().dim();
  const auto du = static_cast<std::size_t>(d);
  require(colors.size() == du + 1, ErrorCode::precondition, "need d + 1 color classes");
  const std::size_t n = colorful_tverberg_size(d, m, target.variant, target.n_prime);
  std::vector<std::vector<Point>> centers(du + 1);
  for (std::size_t c = 0; c <= du; ++c) {
    require(colors[c].size() == n, ErrorCode::precondition,
            "wrong instance size: color " + std::to_string(c) + " has " + std::to_string(colors[c].size()) +
                " sets, the theorem uses " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      require(!colors[c][j].empty(), ErrorCode::precondition, "empty set");
      centers[c].push_back(detail::certified_center(colors[c][j], std::nullopt,
                                                    "set " + std::to_string(j) + " of color " + std::to_string(c)));
    }
  }
  const std::size_t block = detail::block_size(d, target);
  const std::size_t parts = m * block;
  ColorfulTverbergResult out;
  auto found = detail::colorful_tverberg_search(centers, parts, opt.budget, out.candidates);
  require(found.has_value(), ErrorCode::internal, "no colorful Tverberg partition of the centers");
  out.center_parts = std::move(found->first);
  out.point = std::move(found->second);

  std::vector<std::vector<detail::Member>> members(parts);
  for (std::size_t k = 0; k < parts; ++k) {
    std::vector<Point> hull;
    for (const auto& [c, j] : out.center_parts[k]) {
      members[k].push_back({{c, j}, &colors[c][j]});
      hull.push_back(centers[c][j]);
    }
    require(convex::in_hull(hull, out.point), ErrorCode::internal, "colorful Tverberg point misses a part");
  }
  Certificate& cert = out.certificate;
  cert.kind = CertificateKind::colorful_tverberg;
  cert.dim = d;
  detail::steinitz_blocks(members, out.point, m, block, target, opt.seed, opt.precision, cert);
  for (const auto& part : cert.witness.parts) {
    std::vector<std::size_t> per_color(du + 1, 0);
    for (auto i : part) ++per_color[cert.witness.points[i].at[0]];
    for (auto c : per_color) require(c <= block, ErrorCode::internal, "a part holds too many points of one color");
  }
  std::vector<std::vector<bool>> picked(du + 1, std::vector<bool>(n, false));
  for (const auto& pick : cert.witness.points) picked[pick.at[0]][pick.at[1]] = true;
  for (std::size_t c = 0; c <= du; ++c) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!picked[c][j]) cert.witness.unused.push_back(c * n + j);
    }
  }
  return out;
}

}  // namespace qc
