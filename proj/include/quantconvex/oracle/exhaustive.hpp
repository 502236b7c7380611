#pragma once

// Brute-force reference searches. Every candidate is checked with the
// oracle's own LP or geometry; `budget` caps the number of candidates.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "quantconvex/core/error.hpp"
#include "quantconvex/core/instance.hpp"
#include "quantconvex/core/types.hpp"
#include "quantconvex/oracle/geometry.hpp"
#include "quantconvex/oracle/lp.hpp"

namespace qc::oracle {

enum class SearchProblem { rainbow_membership, subfamily_volume, tverberg_partition, colorful_tverberg_partition };

namespace detail {

struct Budget {
  std::uint64_t left;
  void spend() {
    require(left > 0, ErrorCode::budget, "exhaustive search budget exhausted");
    --left;
  }
};

}  // namespace detail

/// Lexicographically first rainbow choice whose hull (plus the anchor, if
/// any) contains x; nullopt if none does.
inline std::optional<std::vector<std::size_t>> search_rainbow_membership(const std::vector<std::vector<Point>>& classes,
                                                                         const Point& x, const std::optional<Point>& anchor,
                                                                         std::uint64_t budget) {
  detail::Budget b{budget};
  std::vector<std::size_t> pos(classes.size(), 0);
  for (;;) {
    b.spend();
    std::vector<Point> pts;
    for (std::size_t i = 0; i < classes.size(); ++i) pts.push_back(classes[i][pos[i]]);
    if (anchor) pts.push_back(*anchor);
    if (lp::convex_weights(pts, x)) return pos;
    std::size_t i = classes.size();
    while (i > 0 && ++pos[i - 1] == classes[i - 1].size()) pos[--i] = 0;
    if (i == 0) return std::nullopt;
  }
}

struct SubfamilyOptimum {
  std::vector<std::size_t> ids;
  Scalar volume;
};

/// Smallest intersection volume over all bounded subfamilies of at most k
/// members (first in size-then-lexicographic order on ties).
inline std::optional<SubfamilyOptimum> search_subfamily_volume(const std::vector<HalfSpace>& hs, int d, std::size_t k,
                                                              std::uint64_t budget) {
  detail::Budget b{budget};
  std::optional<SubfamilyOptimum> best;
  for (std::size_t size = 1; size <= std::min(k, hs.size()); ++size) {
    geo::for_each_subset(hs.size(), size, [&](const std::vector<std::size_t>& s) {
      b.spend();
      std::vector<HalfSpace> sub;
      for (auto i : s) sub.push_back(hs[i]);
      if (auto v = geo::intersection_volume(sub, d); v && (!best || *v < best->volume)) best = SubfamilyOptimum{s, *v};
      return true;
    });
  }
  return best;
}

/// Some partition of the points into m nonempty parts with a common point,
/// by restricted-growth enumeration.
inline std::optional<std::vector<std::vector<std::size_t>>> search_tverberg_partition(const std::vector<Point>& pts, std::size_t m,
                                                                                      std::uint64_t budget) {
  detail::Budget b{budget};
  const std::size_t n = pts.size();
  if (m == 0 || m > n) return std::nullopt;
  std::vector<std::size_t> label(n, 0);
  std::optional<std::vector<std::vector<std::size_t>>> found;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (found) return;
    if (n - i < m - used) return;
    if (i == n) {
      b.spend();
      std::vector<std::vector<std::size_t>> parts(m);
      std::vector<std::vector<Point>> groups(m);
      for (std::size_t j = 0; j < n; ++j) {
        parts[label[j]].push_back(j);
        groups[label[j]].push_back(pts[j]);
      }
      if (lp::common_point(groups)) found = std::move(parts);
      return;
    }
    for (std::size_t k = 0; k <= std::min(used, m - 1); ++k) {
      label[i] = k;
      rec(i + 1, std::max(used, k + 1));
    }
  };
  rec(0, 0);
  return found;
}

/// Some choice of `parts` disjoint rainbow groups (at most one point per
/// color, every group nonempty, leftovers allowed) with a common point.
/// Points are addressed as (color, index).
inline std::optional<std::vector<std::vector<std::pair<std::size_t, std::size_t>>>> search_colorful_tverberg_partition(
    const std::vector<std::vector<Point>>& colors, std::size_t parts, std::uint64_t budget) {
  detail::Budget b{budget};
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t c = 0; c < colors.size(); ++c) {
    for (std::size_t j = 0; j < colors[c].size(); ++j) all.emplace_back(c, j);
  }
  std::vector<std::vector<std::size_t>> groups(parts);
  std::optional<std::vector<std::vector<std::pair<std::size_t, std::size_t>>>> found;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t opened) {
    if (found) return;
    if (i == all.size()) {
      if (opened < parts) return;
      b.spend();
      std::vector<std::vector<Point>> pts(parts);
      for (std::size_t k = 0; k < parts; ++k) {
        for (auto j : groups[k]) pts[k].push_back(colors[all[j].first][all[j].second]);
      }
      if (lp::common_point(pts)) {
        found.emplace(parts);
        for (std::size_t k = 0; k < parts; ++k) {
          for (auto j : groups[k]) (*found)[k].push_back(all[j]);
        }
      }
      return;
    }
    for (std::size_t k = 0; k < std::min(opened + 1, parts); ++k) {
      bool clash = false;
      for (auto j : groups[k]) clash = clash || all[j].first == all[i].first;
      if (clash) continue;
      groups[k].push_back(i);
      rec(i + 1, std::max(opened, k + 1));
      groups[k].pop_back();
      if (found) return;
    }
    rec(i + 1, opened);
  };
  rec(0, 0);
  return found;
}

struct SearchResult {
  bool feasible = false;
  /// rainbow-membership: one list, the choice per class. subfamily-volume: one
  /// list of half-space indices. Partitions: index lists per part (colorful
  /// points numbered class by class).
  std::vector<std::vector<std::size_t>> witness;
  std::optional<Scalar> value;  // optimal volume for subfamily-volume
};

/// Dispatch on the problem; the instance supplies classes + target (+ anchor),
/// half-spaces, points + parts, or colored classes + parts respectively.
/// `max_members` bounds the subfamily size (0: no bound).
inline SearchResult exhaustive_search(SearchProblem problem, const Instance& in, std::uint64_t budget, std::size_t max_members = 0) {
  SearchResult out;
  switch (problem) {
    case SearchProblem::rainbow_membership: {
      require(!in.classes.empty() && in.target, ErrorCode::precondition, "rainbow-membership needs classes and a target");
      if (auto c = search_rainbow_membership(in.classes, *in.target, in.anchor, budget)) {
        out.feasible = true;
        out.witness.push_back(*c);
      }
      break;
    }
    case SearchProblem::subfamily_volume: {
      require(!in.halfspaces.empty(), ErrorCode::precondition, "subfamily-volume needs half-spaces");
      const std::size_t k = max_members == 0 ? in.halfspaces.size() : max_members;
      if (auto o = search_subfamily_volume(in.halfspaces, in.dim, k, budget)) {
        out.feasible = true;
        out.witness.push_back(o->ids);
        out.value = o->volume;
      }
      break;
    }
    case SearchProblem::tverberg_partition: {
      require(!in.points.empty() && in.parts, ErrorCode::precondition, "tverberg-partition needs points and parts");
      if (auto p = search_tverberg_partition(in.points, *in.parts, budget)) {
        out.feasible = true;
        out.witness = *p;
      }
      break;
    }
    case SearchProblem::colorful_tverberg_partition: {
      require(!in.classes.empty() && in.parts, ErrorCode::precondition, "colorful-tverberg-partition needs classes and parts");
      if (auto p = search_colorful_tverberg_partition(in.classes, *in.parts, budget)) {
        out.feasible = true;
        std::vector<std::size_t> offset{0};
        for (const auto& c : in.classes) offset.push_back(offset.back() + c.size());
        for (const auto& part : *p) {
          std::vector<std::size_t> ids;
          for (const auto& [c, j] : part) ids.push_back(offset[c] + j);
          out.witness.push_back(std::move(ids));
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace qc::oracle
