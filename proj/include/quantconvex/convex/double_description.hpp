#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "quantconvex/convex/linalg.hpp"
#include "quantconvex/core/types.hpp"

namespace qc::convex {

namespace detail {

/// Fixed-width bitset sized at runtime; used for zero sets of rays.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  [[nodiscard]] bool test(std::size_t i) const { return ((w_[i / 64] >> (i % 64)) & 1U) != 0; }
  [[nodiscard]] std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  [[nodiscard]] bool contains(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if ((o.w_[i] & ~w_[i]) != 0) return false;
    }
    return true;
  }
  friend Bits operator&(const Bits& a, const Bits& b) {
    Bits r = a;
    for (std::size_t i = 0; i < r.w_.size(); ++i) r.w_[i] &= b.w_[i];
    return r;
  }

 private:
  std::vector<std::uint64_t> w_;
};

/// Scales v to the primitive integer vector on its ray.
inline void make_primitive(std::vector<Scalar>& v) {
  mpz_class l = 1;
  for (const auto& x : v) {
    if (!x.is_zero()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.value().get_den_mpz_t());
  }
  mpz_class g = 0;
  for (auto& x : v) {
    x *= Scalar(l);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.value().get_num_mpz_t());
  }
  if (g == 0 || g == 1) return;
  const Scalar inv(mpq_class(1, g));
  for (auto& x : v) x *= inv;
}

}  // namespace detail

/// Extreme rays of the pointed cone { y : rows * y <= 0 }, as primitive integer
/// vectors in lexicographic order. Requires rank(rows) = number of columns.
inline std::vector<std::vector<Scalar>> extreme_rays(const Matrix& rows) {
  require(!rows.empty(), ErrorCode::internal, "cone needs constraints");
  const std::size_t n = rows.front().size();
  const std::size_t m = rows.size();
  const auto basis_rows = independent_rows(rows);
  require(basis_rows.size() == n, ErrorCode::internal, "cone is not pointed");

  Matrix b;
  for (auto i : basis_rows) b.push_back(rows[i]);
  const Matrix binv = inverse(b);

  struct Ray {
    std::vector<Scalar> v;
    detail::Bits zero;
  };
  std::vector<Ray> rays;
  std::vector<bool> processed(m, false);
  for (auto i : basis_rows) processed[i] = true;
  for (std::size_t k = 0; k < n; ++k) {
    Ray r{std::vector<Scalar>(n), detail::Bits(m)};
    for (std::size_t j = 0; j < n; ++j) r.v[j] = -binv[j][k];
    detail::make_primitive(r.v);
    for (std::size_t t = 0; t < n; ++t) {
      if (t != k) r.zero.set(basis_rows[t]);
    }
    rays.push_back(std::move(r));
  }

  auto eval = [&](std::size_t row, const std::vector<Scalar>& v) {
    Scalar s;
    for (std::size_t j = 0; j < n; ++j) {
      if (!rows[row][j].is_zero() && !v[j].is_zero()) s += rows[row][j] * v[j];
    }
    return s;
  };

  for (std::size_t row = 0; row < m; ++row) {
    if (processed[row]) continue;
    processed[row] = true;
    std::vector<Scalar> val(rays.size());
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = eval(row, rays[r].v);
      if (val[r].sign() > 0) {
        pos.push_back(r);
      } else if (val[r].sign() < 0) {
        neg.push_back(r);
      }
    }
    if (pos.empty()) {
      for (std::size_t r = 0; r < rays.size(); ++r) {
        if (val[r].is_zero()) rays[r].zero.set(row);
      }
      continue;
    }

    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (val[r].sign() > 0) continue;
      Ray kept = rays[r];
      if (val[r].is_zero()) kept.zero.set(row);
      next.push_back(std::move(kept));
    }
    for (auto p : pos) {
      for (auto q : neg) {
        detail::Bits common = rays[p].zero & rays[q].zero;
        if (common.count() + 2 < n) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r != p && r != q && rays[r].zero.contains(common)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray fresh{std::vector<Scalar>(n), common};
        for (std::size_t j = 0; j < n; ++j) fresh.v[j] = val[p] * rays[q].v[j] - val[q] * rays[p].v[j];
        detail::make_primitive(fresh.v);
        fresh.zero.set(row);
        next.push_back(std::move(fresh));
      }
    }
    rays = std::move(next);
  }

  std::vector<std::vector<Scalar>> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace qc::convex
