#pragma once

#include <compare>
#include <cstdint>
#include <gmpxx.h>
#include <iosfwd>
#include <string>
#include <string_view>

namespace oag {

/// Exact rational in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value) : q_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Accepts `p`, `-p`, `p/q`, `-p/q` with decimal digits.
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  bool is_canonical() const;

  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  Rational floor() const;
  Rational ceil() const;
  double to_double() const { return q_.get_d(); }
  std::string to_string() const;

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline constexpr int kMaxRadicand = 97;

/// True for square-free d in [2, kMaxRadicand].
bool is_valid_radicand(int d);

/// An element of Q or of Q(sqrt d): rat + irr * sqrt(radicand).
///
/// A value whose irrational part is zero is stored as a plain rational
/// (radicand 0), so equal values always have identical representations.
/// Mixing two different nonzero radicands raises ErrorKind::DomainMismatch.
class Scalar {
 public:
  Scalar() = default;
  Scalar(Rational r) : rat_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Scalar(std::int64_t v) : rat_(v) {}         // NOLINT(google-explicit-constructor)

  static Scalar quad(Rational rat, Rational irr, int radicand);
  static Scalar sqrt(int radicand) { return quad(0, 1, radicand); }
  /// Parses the textual rendering: `p/q`, `p/q + r/s*sqrt(d)`, `r/s*sqrt(d)`, `sqrt(d)`.
  static Scalar parse(std::string_view text);

  const Rational& rat_part() const { return rat_; }
  const Rational& irr_part() const { return irr_; }
  int radicand() const { return radicand_; }
  bool is_rational() const { return radicand_ == 0; }
  bool is_zero() const { return is_rational() && rat_.is_zero(); }

  /// Exact sign; for a + b*sqrt(d) with sign(a) != sign(b) this is sign(b)*sign(d*b^2 - a^2).
  int sign() const;
  /// Greatest integer <= value.
  Rational floor() const;
  Rational ceil() const;
  double to_double() const;
  std::string to_string() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Rational& k);
  friend Scalar operator*(const Rational& k, const Scalar& a) { return a * k; }
  /// Division by a nonzero rational (the group is divisible).
  friend Scalar operator/(const Scalar& a, const Rational& k);

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  Scalar(Rational rat, Rational irr, int radicand)
      : rat_(std::move(rat)), irr_(std::move(irr)), radicand_(radicand) {}

  Rational rat_;
  Rational irr_;
  int radicand_ = 0;
};

enum class Order { LT, EQ, GT };
Order compare(const Scalar& a, const Scalar& b);

/// Midpoint (a + b) / 2; strictly between a and b whenever a < b.
Scalar midpoint(const Scalar& a, const Scalar& b);

/// A rational strictly between a and b (requires a < b). Prefers the
/// smallest dyadic denominator; returns the midpoint when that is rational.
Rational rational_between(const Scalar& a, const Scalar& b);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace oag
