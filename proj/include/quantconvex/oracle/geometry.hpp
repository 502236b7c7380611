#pragma once

// Brute-force geometry for verification: facets from point subsets,
// volumes by apex pyramids over gift-wrapped facets, vertices of
// half-space intersections from every d-subset. Slow on purpose.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "quantconvex/core/error.hpp"
#include "quantconvex/core/types.hpp"
#include "quantconvex/oracle/lp.hpp"

namespace qc::oracle::geo {

using Rows = std::vector<std::vector<Scalar>>;

inline Scalar det(Rows m) {
  const std::size_t n = m.size();
  Scalar out(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return Scalar(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      out = -out;
    }
    out *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      const Scalar f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return out;
}

/// Unique solution of the square system m x = rhs (Cramer's rule).
inline std::optional<std::vector<Scalar>> solve(const Rows& m, const std::vector<Scalar>& rhs) {
  const Scalar d = det(m);
  if (d.is_zero()) return std::nullopt;
  std::vector<Scalar> x(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) {
    Rows mj = m;
    for (std::size_t i = 0; i < m.size(); ++i) mj[i][j] = rhs[i];
    x[j] = det(std::move(mj)) / d;
  }
  return x;
}

/// Normal of the hyperplane through d points (generalized cross product);
/// the zero vector if they are affinely dependent.
inline std::vector<Scalar> hyperplane_normal(const std::vector<const Point*>& pts) {
  const std::size_t d = pts.size();
  std::vector<Scalar> n(d);
  for (std::size_t j = 0; j < d; ++j) {
    Rows minor;
    for (std::size_t r = 1; r < d; ++r) {
      std::vector<Scalar> row;
      for (std::size_t k = 0; k < d; ++k) {
        if (k != j) row.push_back((*pts[r])[k] - (*pts[0])[k]);
      }
      minor.push_back(std::move(row));
    }
    n[j] = d == 1 ? Scalar(1) : det(std::move(minor));
    if (j % 2 == 1) n[j] = -n[j];
  }
  return n;
}

inline Scalar dotv(const std::vector<Scalar>& a, const Point& p) {
  Scalar s;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * p[k];
  return s;
}

inline std::vector<Point> unique(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// Calls f on every k-subset of {0..n-1} in lexicographic order; stops when f returns false.
inline void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!f(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct Facet {
  std::vector<Scalar> normal;  // outward
  Scalar offset;               // normal.x <= offset on the hull
  std::vector<std::size_t> tight;
};

/// All facets of conv(pts); empty when the hull is not full-dimensional.
inline std::vector<Facet> facets(const std::vector<Point>& input, int dim) {
  const auto d = static_cast<std::size_t>(dim);
  const std::vector<Point> pts = unique(input);
  std::vector<Facet> out;
  std::set<std::vector<Scalar>> seen;
  for_each_subset(pts.size(), d, [&](const std::vector<std::size_t>& s) {
    std::vector<const Point*> sp;
    for (auto i : s) sp.push_back(&pts[i]);
    std::vector<Scalar> n = hyperplane_normal(sp);
    if (std::all_of(n.begin(), n.end(), [](const Scalar& x) { return x.is_zero(); })) return true;
    const Scalar off = dotv(n, pts[s[0]]);
    bool le = true;
    bool ge = true;
    for (const auto& p : pts) {
      const int sg = (dotv(n, p) - off).sign();
      le = le && sg <= 0;
      ge = ge && sg >= 0;
    }
    if (le == ge) return true;  // both: all points on the hyperplane; neither: not supporting
    Facet f{std::move(n), off, {}};
    if (ge) {
      for (auto& x : f.normal) x = -x;
      f.offset = -f.offset;
    }
    Scalar lead;
    for (const auto& x : f.normal) {
      if (!x.is_zero()) {
        lead = x.abs();
        break;
      }
    }
    std::vector<Scalar> key;
    for (const auto& x : f.normal) key.push_back(x / lead);
    key.push_back(f.offset / lead);
    if (!seen.insert(key).second) return true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (dotv(f.normal, pts[i]) == f.offset) f.tight.push_back(i);
    }
    out.push_back(std::move(f));
    return true;
  });
  // A single hyperplane cannot bound a full-dimensional hull on both sides.
  if (out.size() < d + 1) out.clear();
  return out;
}

/// Exact squared radius of the largest ball around c inside conv(pts); 0 if c is not interior.
inline Scalar inradius_squared(const std::vector<Point>& pts, const Point& c) {
  const auto fs = facets(pts, c.dim());
  if (fs.empty()) return Scalar(0);
  std::optional<Scalar> best;
  for (const auto& f : fs) {
    const Scalar slack = f.offset - dotv(f.normal, c);
    if (slack.sign() <= 0) return Scalar(0);
    Scalar nn;
    for (const auto& x : f.normal) nn += x * x;
    Scalar r2 = slack * slack / nn;
    if (!best || r2 < *best) best = std::move(r2);
  }
  return *best;
}

/// Volume of conv(pts) for d <= 3: pyramids from the vertex average over
/// every facet, each facet fanned along its gift-wrapped boundary.
inline Scalar volume(const std::vector<Point>& input, int dim) {
  require(dim >= 1 && dim <= 3, ErrorCode::unsupported, "oracle volumes need d <= 3");
  const std::vector<Point> pts = unique(input);
  if (dim == 1) {
    if (pts.size() < 2) return Scalar(0);
    return pts.back()[0] - pts.front()[0];
  }
  const auto fs = facets(pts, dim);
  if (fs.empty()) return Scalar(0);
  Point g = Point::zero(dim);
  for (const auto& p : pts) g += p;
  g /= Scalar(static_cast<long>(pts.size()));
  Scalar total;
  for (const auto& f : fs) {
    if (dim == 2) {
      // Extreme pair on the edge.
      std::size_t a = f.tight[0];
      std::size_t b = f.tight[0];
      Scalar far(-1);
      for (auto i : f.tight) {
        for (auto j : f.tight) {
          const Scalar dd = distance_squared(pts[i], pts[j]);
          if (dd > far) {
            far = dd;
            a = i;
            b = j;
          }
        }
      }
      const Point u = pts[a] - g;
      const Point v = pts[b] - g;
      total += (u[0] * v[1] - u[1] * v[0]).abs() / Scalar(2);
      continue;
    }
    // d = 3: wrap the facet polygon inside its plane.
    auto orient = [&](std::size_t p, std::size_t q, std::size_t r) {
      const Point u = pts[q] - pts[p];
      const Point v = pts[r] - pts[p];
      const Scalar cx = u[1] * v[2] - u[2] * v[1];
      const Scalar cy = u[2] * v[0] - u[0] * v[2];
      const Scalar cz = u[0] * v[1] - u[1] * v[0];
      return (f.normal[0] * cx + f.normal[1] * cy + f.normal[2] * cz).sign();
    };
    std::size_t start = f.tight[0];
    for (auto i : f.tight) {
      if (pts[i] < pts[start]) start = i;
    }
    std::vector<std::size_t> ring{start};
    std::size_t cur = start;
    for (std::size_t guard = 0; guard <= f.tight.size(); ++guard) {
      std::size_t next = cur == f.tight[0] && f.tight.size() > 1 ? f.tight[1] : f.tight[0];
      for (auto i : f.tight) {
        if (i == cur) continue;
        const int o = orient(cur, next, i);
        if (next == cur || o < 0 ||
            (o == 0 && distance_squared(pts[cur], pts[i]) > distance_squared(pts[cur], pts[next]))) {
          next = i;
        }
      }
      if (next == start) break;
      ring.push_back(next);
      cur = next;
    }
    for (std::size_t k = 1; k + 1 < ring.size(); ++k) {
      const Point u = pts[ring[0]] - g;
      const Point v = pts[ring[k]] - g;
      const Point w = pts[ring[k + 1]] - g;
      const Scalar t = u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) + u[2] * (v[0] * w[1] - v[1] * w[0]);
      total += t.abs() / Scalar(6);
    }
  }
  return total;
}

inline Scalar diameter_squared(const std::vector<Point>& pts) {
  Scalar best;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = max(best, distance_squared(pts[i], pts[j]));
  }
  return best;
}

inline bool nonempty(const std::vector<HalfSpace>& hs, int d) {
  return lp::maximize(hs, std::vector<Scalar>(static_cast<std::size_t>(d))).status != lp::Status::infeasible;
}

/// Trivial recession cone: max of +-u_k over {A u <= 0, |u_k| <= 1} is 0 for every k.
inline bool bounded(const std::vector<HalfSpace>& hs, int d) {
  const auto du = static_cast<std::size_t>(d);
  std::vector<HalfSpace> cone;
  for (const auto& h : hs) cone.emplace_back(h.normal(), Scalar(0));
  for (std::size_t k = 0; k < du; ++k) {
    std::vector<Scalar> e(du);
    e[k] = Scalar(1);
    cone.emplace_back(Point(e), Scalar(1));
    cone.emplace_back(-Point(e), Scalar(1));
  }
  for (std::size_t k = 0; k < du; ++k) {
    for (int s : {1, -1}) {
      std::vector<Scalar> obj(du);
      obj[k] = Scalar(s);
      const auto r = lp::maximize(cone, obj);
      if (r.status != lp::Status::optimal || r.value.sign() > 0) return false;
    }
  }
  return true;
}

/// Vertices of a bounded intersection: feasible solutions of every d-subset of tight constraints.
inline std::vector<Point> vertices(const std::vector<HalfSpace>& hs, int d) {
  const auto du = static_cast<std::size_t>(d);
  std::vector<Point> out;
  for_each_subset(hs.size(), du, [&](const std::vector<std::size_t>& s) {
    Rows m;
    std::vector<Scalar> rhs;
    for (auto i : s) {
      m.emplace_back(hs[i].normal().begin(), hs[i].normal().end());
      rhs.push_back(hs[i].offset());
    }
    if (auto x = solve(m, rhs)) {
      const Point p(std::move(*x));
      if (std::all_of(hs.begin(), hs.end(), [&](const HalfSpace& h) { return h.contains(p); })) out.push_back(p);
    }
    return true;
  });
  return unique(std::move(out));
}

/// Volume of the intersection: 0 if empty, nullopt if unbounded.
inline std::optional<Scalar> intersection_volume(const std::vector<HalfSpace>& hs, int d) {
  if (hs.empty()) return std::nullopt;
  if (!nonempty(hs, d)) return Scalar(0);
  if (!bounded(hs, d)) return std::nullopt;
  return volume(vertices(hs, d), d);
}

}  // namespace qc::oracle::geo
