#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "quantconvex/core/error.hpp"

namespace qc {

/// Exact rational number with an optional binary64 rounding mode.
///
/// Exact scalars are reduced fractions with a positive denominator (GMP keeps
/// them canonical). An approximate scalar carries a value that is always a
/// double; every operation touching one rounds its result back to a double.
/// Approximate values never enter certification paths.
class Scalar {
 public:
  enum class Mode : std::uint8_t { exact, approximate };

  Scalar() = default;
  Scalar(int v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(long long v) : q_(mpz_class(std::to_string(v))) {}  // NOLINT(google-explicit-constructor)
  Scalar(unsigned long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  explicit Scalar(const mpz_class& z) : q_(z) {}
  Scalar(long num, long den) : q_(num, den) {
    require(den != 0, ErrorCode::parse, "zero denominator");
    q_.canonicalize();
  }

  /// Exact value of a double (every finite double is a dyadic rational).
  static Scalar from_double(double v) {
    require(std::isfinite(v), ErrorCode::parse, "non-finite floating value");
    return Scalar(mpq_class(v));
  }

  /// A binary64-mode scalar.
  static Scalar approximate(double v) {
    Scalar s = from_double(v);
    s.mode_ = Mode::approximate;
    return s;
  }

  /// Parses "p/q", "p", or a plain decimal such as "-0.125".
  static Scalar parse(std::string_view text, Mode mode = Mode::exact);

  /// Canonical rendering "num/den" (den > 0, sign on the numerator).
  [[nodiscard]] std::string str() const { return num().get_str() + "/" + den().get_str(); }

  [[nodiscard]] const mpq_class& value() const noexcept { return q_; }
  [[nodiscard]] mpz_class num() const { return q_.get_num(); }
  [[nodiscard]] mpz_class den() const { return q_.get_den(); }
  [[nodiscard]] Mode mode() const noexcept { return mode_; }
  [[nodiscard]] bool is_exact() const noexcept { return mode_ == Mode::exact; }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
  [[nodiscard]] double to_double() const { return q_.get_d(); }

  [[nodiscard]] Scalar abs() const {
    Scalar r = *this;
    if (r.sign() < 0) mpq_neg(r.q_.get_mpq_t(), r.q_.get_mpq_t());
    return r;
  }

  Scalar operator-() const {
    Scalar r = *this;
    mpq_neg(r.q_.get_mpq_t(), r.q_.get_mpq_t());
    return r;
  }

  Scalar& operator+=(const Scalar& o) { return apply(o, mpq_add); }
  Scalar& operator-=(const Scalar& o) { return apply(o, mpq_sub); }
  Scalar& operator*=(const Scalar& o) { return apply(o, mpq_mul); }
  Scalar& operator/=(const Scalar& o) {
    require(!o.is_zero(), ErrorCode::internal, "division by zero");
    return apply(o, mpq_div);
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    const int c = mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  template <class Op>
  Scalar& apply(const Scalar& o, Op op) {
    op(q_.get_mpq_t(), q_.get_mpq_t(), o.q_.get_mpq_t());
    if (o.mode_ == Mode::approximate) mode_ = Mode::approximate;
    if (mode_ == Mode::approximate) q_ = mpq_class(q_.get_d());
    return *this;
  }

  mpq_class q_{0};
  Mode mode_ = Mode::exact;
};

inline Scalar Scalar::parse(std::string_view text, Mode mode) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  require(!s.empty(), ErrorCode::parse, "empty scalar");

  mpq_class q;
  const auto slash = s.find('/');
  const auto dot = s.find('.');
  try {
    if (slash != std::string::npos) {
      const std::string n = s.substr(0, slash);
      const std::string d = s.substr(slash + 1);
      require(!n.empty() && !d.empty() && d.find_first_not_of("0123456789") == std::string::npos &&
                  n.find_first_not_of("+-0123456789") == std::string::npos,
              ErrorCode::parse, "malformed rational '" + s + "'");
      mpz_class den(d, 10);
      require(den != 0, ErrorCode::parse, "zero denominator in '" + s + "'");
      q = mpq_class(mpz_class(n[0] == '+' ? n.substr(1) : n, 10), den);
    } else if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      const std::size_t frac = s.size() - dot - 1;
      require(!digits.empty() && digits.find_first_not_of("+-0123456789") == std::string::npos,
              ErrorCode::parse, "malformed decimal '" + s + "'");
      if (digits == "-" || digits == "+") fail(ErrorCode::parse, "malformed decimal '" + s + "'");
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac);
      q = mpq_class(mpz_class(digits[0] == '+' ? digits.substr(1) : digits, 10), scale);
    } else {
      require(s.find_first_not_of("+-0123456789") == std::string::npos, ErrorCode::parse,
              "malformed integer '" + s + "'");
      q = mpq_class(mpz_class(s[0] == '+' ? s.substr(1) : s, 10));
    }
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::parse, "malformed scalar '" + s + "'");
  }
  q.canonicalize();
  if (mode == Mode::approximate) return approximate(q.get_d());
  return Scalar(q);
}

inline Scalar pow(Scalar base, unsigned exp) {
  Scalar r(1);
  while (exp > 0) {
    if (exp & 1U) r *= base;
    base *= base;
    exp >>= 1U;
  }
  return r;
}

inline Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
inline Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

/// Exact rational nearest to v on the grid 2^-bits.
inline Scalar dyadic(double v, int bits = 40) {
  return Scalar::from_double(std::ldexp(std::round(std::ldexp(v, bits)), -bits));
}

inline mpz_class floor(const Scalar& s) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), s.value().get_num_mpz_t(), s.value().get_den_mpz_t());
  return r;
}

/// Default relative precision for square-root enclosures: 10^-9.
inline const Scalar& default_precision() {
  static const Scalar p(1, 1000000000);
  return p;
}

namespace detail {

struct SqrtBracket {
  Scalar lower;
  Scalar upper;
};

inline SqrtBracket sqrt_bracket(const Scalar& x, const Scalar& rel) {
  require(x.sign() >= 0, ErrorCode::internal, "square root of a negative scalar");
  require(rel.sign() > 0, ErrorCode::internal, "precision must be positive");
  if (x.is_zero()) return {Scalar(0), Scalar(0)};
  const mpz_class& p = x.value().get_num();
  const mpz_class& q = x.value().get_den();
  if (mpz_perfect_square_p(p.get_mpz_t()) != 0 && mpz_perfect_square_p(q.get_mpz_t()) != 0) {
    mpz_class sp;
    mpz_class sq;
    mpz_sqrt(sp.get_mpz_t(), p.get_mpz_t());
    mpz_sqrt(sq.get_mpz_t(), q.get_mpz_t());
    Scalar exact(mpq_class(sp, sq));
    return {exact, exact};
  }
  // sqrt(p/q) = sqrt(p*q)/q, and p*q >= 1, so 2^k >= 1/rel gives m >= 1/rel.
  unsigned k = 0;
  Scalar scale(1);
  while (scale * rel < Scalar(1)) {
    scale *= Scalar(2);
    ++k;
  }
  mpz_class n = p * q;
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), 2 * k);
  mpz_class m;
  mpz_sqrt(m.get_mpz_t(), n.get_mpz_t());
  mpz_class den = q;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k);
  return {Scalar(mpq_class(m, den)), Scalar(mpq_class(m + 1, den))};
}

}  // namespace detail

/// Rational r with r <= sqrt(x) and sqrt(x) - r <= rel * sqrt(x).
inline Scalar sqrt_lower(const Scalar& x, const Scalar& rel = default_precision()) {
  Scalar r = detail::sqrt_bracket(x, rel).lower;
  if (!x.is_exact()) r *= Scalar::approximate(1.0);
  return r;
}

/// Rational r with r >= sqrt(x) and r - sqrt(x) <= rel * sqrt(x).
inline Scalar sqrt_upper(const Scalar& x, const Scalar& rel = default_precision()) {
  Scalar r = detail::sqrt_bracket(x, rel).upper;
  if (!x.is_exact()) r *= Scalar::approximate(1.0);
  return r;
}

/// Rational enclosures of pi and e (25 significant digits).
inline const Scalar& pi_lower() {
  static const Scalar v = Scalar::parse("3.141592653589793238462643");
  return v;
}
inline const Scalar& pi_upper() {
  static const Scalar v = Scalar::parse("3.141592653589793238462644");
  return v;
}
inline const Scalar& e_lower() {
  static const Scalar v = Scalar::parse("2.718281828459045235360287");
  return v;
}
inline const Scalar& e_upper() {
  static const Scalar v = Scalar::parse("2.718281828459045235360288");
  return v;
}

/// Upper enclosure of (pi / e^2) * d^(-2d-2), the guaranteed colored Steinitz radius.
/// A certified radius at least this value certifies the true constant.
inline Scalar steinitz_radius_upper(int d) {
  require(d >= 1, ErrorCode::dimension, "dimension must be positive");
  return pi_upper() / (e_lower() * e_lower() * pow(Scalar(d), static_cast<unsigned>(2 * d + 2)));
}

/// Lower enclosure of the same constant.
inline Scalar steinitz_radius_lower(int d) {
  require(d >= 1, ErrorCode::dimension, "dimension must be positive");
  return pi_lower() / (e_upper() * e_upper() * pow(Scalar(d), static_cast<unsigned>(2 * d + 2)));
}

}  // namespace qc
