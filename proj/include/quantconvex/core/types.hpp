#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "quantconvex/core/error.hpp"
#include "quantconvex/core/scalar.hpp"

namespace qc {

/// A point (or vector) of R^d with exact coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<Scalar> coords) : c_(std::move(coords)) {
    require(!c_.empty(), ErrorCode::dimension, "points need dimension >= 1");
  }
  Point(std::initializer_list<Scalar> coords) : Point(std::vector<Scalar>(coords)) {}

  static Point zero(int d) {
    require(d >= 1, ErrorCode::dimension, "points need dimension >= 1");
    return Point(std::vector<Scalar>(static_cast<std::size_t>(d)));
  }

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(c_.size()); }
  [[nodiscard]] std::span<const Scalar> coords() const noexcept { return c_; }
  const Scalar& operator[](std::size_t i) const { return c_[i]; }
  Scalar& operator[](std::size_t i) { return c_[i]; }
  [[nodiscard]] auto begin() const noexcept { return c_.begin(); }
  [[nodiscard]] auto end() const noexcept { return c_.end(); }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_zero(); });
  }
  [[nodiscard]] bool is_exact() const {
    return std::all_of(c_.begin(), c_.end(), [](const Scalar& s) { return s.is_exact(); });
  }

  Point& operator+=(const Point& o) {
    check_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Point& operator-=(const Point& o) {
    check_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Point& operator*=(const Scalar& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Point& operator/=(const Scalar& s) {
    for (auto& x : c_) x /= s;
    return *this;
  }
  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, const Scalar& s) { return a *= s; }
  friend Point operator*(const Scalar& s, Point a) { return a *= s; }
  friend Point operator/(Point a, const Scalar& s) { return a /= s; }
  Point operator-() const {
    Point r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point& a, const Point& b) { return a.c_ <=> b.c_; }

  [[nodiscard]] std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? ", " : "") + c_[i].str();
    return s + ")";
  }

 private:
  void check_dim(const Point& o) const {
    require(o.c_.size() == c_.size(), ErrorCode::dimension, "point dimension mismatch");
  }
  std::vector<Scalar> c_;
};

inline Scalar dot(const Point& a, const Point& b) {
  require(a.dim() == b.dim(), ErrorCode::dimension, "point dimension mismatch");
  Scalar s;
  for (std::size_t i = 0; i < static_cast<std::size_t>(a.dim()); ++i) s += a[i] * b[i];
  return s;
}

inline Scalar norm_squared(const Point& a) { return dot(a, a); }

inline Scalar distance_squared(const Point& a, const Point& b) { return norm_squared(a - b); }

/// Closed half-space { x : normal . x <= offset }.
class HalfSpace {
 public:
  HalfSpace(Point normal, Scalar offset) : a_(std::move(normal)), b_(std::move(offset)) {
    require(a_.dim() >= 1, ErrorCode::dimension, "half-space normal needs dimension >= 1");
    require(!a_.is_zero(), ErrorCode::precondition, "half-space normal must be nonzero");
  }

  [[nodiscard]] int dim() const noexcept { return a_.dim(); }
  [[nodiscard]] const Point& normal() const noexcept { return a_; }
  [[nodiscard]] const Scalar& offset() const noexcept { return b_; }

  /// offset - normal . x; nonnegative iff x lies in the half-space.
  [[nodiscard]] Scalar slack(const Point& x) const { return b_ - dot(a_, x); }
  [[nodiscard]] bool contains(const Point& x) const { return slack(x).sign() >= 0; }

  /// Scaled so the first nonzero normal coordinate is +1 or -1.
  [[nodiscard]] HalfSpace canonical() const {
    Scalar lead;
    for (const auto& c : a_) {
      if (!c.is_zero()) {
        lead = c.abs();
        break;
      }
    }
    return HalfSpace(a_ / lead, b_ / lead);
  }

  /// The same half-space written for coordinates y = x - shift.
  [[nodiscard]] HalfSpace translated(const Point& shift) const { return HalfSpace(a_, b_ - dot(a_, shift)); }

  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
  friend auto operator<=>(const HalfSpace& x, const HalfSpace& y) {
    if (auto c = x.a_ <=> y.a_; c != 0) return c;
    return x.b_ <=> y.b_;
  }

 private:
  Point a_;
  Scalar b_;
};

/// Intersection of finitely many half-spaces. May be empty or unbounded.
class HPolytope {
 public:
  explicit HPolytope(int dim, std::vector<HalfSpace> halfspaces = {}) : dim_(dim), h_(std::move(halfspaces)) {
    require(dim_ >= 1, ErrorCode::dimension, "polytope dimension must be >= 1");
    for (const auto& h : h_) require(h.dim() == dim_, ErrorCode::dimension, "half-space dimension mismatch");
  }

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] const std::vector<HalfSpace>& halfspaces() const noexcept { return h_; }
  [[nodiscard]] std::size_t size() const noexcept { return h_.size(); }
  [[nodiscard]] bool contains(const Point& x) const {
    return std::all_of(h_.begin(), h_.end(), [&](const HalfSpace& h) { return h.contains(x); });
  }
  [[nodiscard]] HPolytope translated(const Point& shift) const {
    std::vector<HalfSpace> out;
    out.reserve(h_.size());
    for (const auto& h : h_) out.push_back(h.translated(shift));
    return HPolytope(dim_, std::move(out));
  }

 private:
  int dim_;
  std::vector<HalfSpace> h_;
};

/// Convex hull of a nonempty finite point list.
class VPolytope {
 public:
  VPolytope(int dim, std::vector<Point> vertices) : dim_(dim), v_(std::move(vertices)) {
    require(dim_ >= 1, ErrorCode::dimension, "polytope dimension must be >= 1");
    require(!v_.empty(), ErrorCode::precondition, "V-polytope needs at least one point");
    for (const auto& v : v_) require(v.dim() == dim_, ErrorCode::dimension, "vertex dimension mismatch");
  }
  explicit VPolytope(std::vector<Point> vertices) : dim_(vertices.empty() ? 0 : vertices.front().dim()) {
    require(!vertices.empty(), ErrorCode::precondition, "V-polytope needs at least one point");
    *this = VPolytope(dim_, std::move(vertices));
  }

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] const std::vector<Point>& vertices() const noexcept { return v_; }
  [[nodiscard]] std::size_t size() const noexcept { return v_.size(); }

 private:
  int dim_;
  std::vector<Point> v_;
};

/// Closed Euclidean ball B_r(c).
class Ball {
 public:
  Ball(Point center, Scalar radius) : c_(std::move(center)), r_(std::move(radius)) {
    require(r_.sign() >= 0, ErrorCode::precondition, "ball radius must be nonnegative");
  }
  [[nodiscard]] int dim() const noexcept { return c_.dim(); }
  [[nodiscard]] const Point& center() const noexcept { return c_; }
  [[nodiscard]] const Scalar& radius() const noexcept { return r_; }

  friend bool operator==(const Ball&, const Ball&) = default;

 private:
  Point c_;
  Scalar r_;
};

/// Sequence of nonempty color classes of equal ambient dimension.
template <class Element>
class ColoredFamily {
 public:
  using Class = std::vector<Element>;

  explicit ColoredFamily(std::vector<Class> classes) : classes_(std::move(classes)) {
    require(!classes_.empty(), ErrorCode::precondition, "colored family needs at least one class");
    dim_ = classes_.front().empty() ? 0 : classes_.front().front().dim();
    for (std::size_t i = 0; i < classes_.size(); ++i) {
      require(!classes_[i].empty(), ErrorCode::precondition, "color class " + std::to_string(i) + " is empty");
      for (const auto& e : classes_[i]) require(e.dim() == dim_, ErrorCode::dimension, "color class dimension mismatch");
    }
  }

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t size() const noexcept { return classes_.size(); }
  [[nodiscard]] const Class& operator[](std::size_t i) const { return classes_[i]; }
  [[nodiscard]] const std::vector<Class>& classes() const noexcept { return classes_; }
  [[nodiscard]] auto begin() const noexcept { return classes_.begin(); }
  [[nodiscard]] auto end() const noexcept { return classes_.end(); }

 private:
  std::vector<Class> classes_;
  int dim_ = 0;
};

using PointFamily = ColoredFamily<Point>;
using HalfSpaceFamily = ColoredFamily<HalfSpace>;

// ---------------------------------------------------------------------------
// Certificates

enum class CertificateKind {
  caratheodory_selection,
  steinitz_ball,
  steinitz_volume,
  helly_volume,
  helly_diameter,
  colorful_helly,
  tverberg,
  colorful_tverberg
};

inline std::string_view to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::caratheodory_selection: return "carathedory-selection";
    case CertificateKind::steinitz_ball: return "steinitz-ball";
    case CertificateKind::steinitz_volume: return "steinitz-volume";
    case CertificateKind::helly_volume: return "helly-volume";
    case CertificateKind::helly_diameter: return "helly-diameter";
    case CertificateKind::colorful_helly: return "colorful-helly";
    case CertificateKind::tverberg: return "tverberg";
    case CertificateKind::colorful_tverberg: return "colorful-tverberg";
  }
  return "";
}

inline CertificateKind certificate_kind_from_string(std::string_view s) {
  for (auto k : {CertificateKind::caratheodory_selection, CertificateKind::steinitz_ball,
                 CertificateKind::steinitz_volume, CertificateKind::helly_volume, CertificateKind::helly_diameter,
                 CertificateKind::colorful_helly, CertificateKind::tverberg, CertificateKind::colorful_tverberg}) {
    if (to_string(k) == s) return k;
  }
  if (s == "caratheodory-selection") return CertificateKind::caratheodory_selection;
  fail(ErrorCode::parse, "unknown certificate kind '" + std::string(s) + "'");
}

/// A point taken from the source instance; `at` is its index path there
/// (class/point, set/point, or color/set/point depending on the instance).
struct PointPick {
  std::vector<std::size_t> at;
  Point point;
  friend bool operator==(const PointPick&, const PointPick&) = default;
};

/// A half-space taken from the source instance.
struct HalfSpacePick {
  std::vector<std::size_t> at;
  HalfSpace halfspace;
  friend bool operator==(const HalfSpacePick&, const HalfSpacePick&) = default;
};

struct Witness {
  std::vector<PointPick> points;
  std::vector<HalfSpacePick> halfspaces;
  /// Partitions, as index lists into `points`.
  std::vector<std::vector<std::size_t>> parts;
  /// Instance sets left unused by the construction.
  std::vector<std::size_t> unused;
  friend bool operator==(const Witness&, const Witness&) = default;
};

/// The quantitative claim. Every present field is re-derived by the oracle.
struct Claim {
  std::optional<Point> target;          // point shown to lie in a hull
  std::optional<Point> anchor;          // extra anchor point allowed in the hull
  std::vector<std::vector<Scalar>> weights;  // convex coefficients (per part / per selection)
  std::optional<Point> center;          // ball center
  std::optional<Scalar> radius_squared; // exact squared inradius of the hull(s) at center
  std::optional<Scalar> radius;         // certified rational lower bound of the inradius
  std::optional<Scalar> ratio;          // volume ratio, or squared diameter ratio
  std::optional<Scalar> bound;          // the guaranteed bound the claim is measured against
  std::optional<bool> bound_met;        // for searches whose guarantee may not apply
  friend bool operator==(const Claim&, const Claim&) = default;
};

struct Certificate {
  CertificateKind kind = CertificateKind::caratheodory_selection;
  int dim = 0;
  bool exact = true;
  Witness witness;
  Claim claim;
  /// Set by the oracle only.
  bool verified = false;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

}  // namespace qc
