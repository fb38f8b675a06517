#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace rdlie {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Backed by GMP.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : q_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p" or "p/q" (optional leading sign, no spaces). Throws
  /// std::invalid_argument on malformed input or a zero denominator.
  static Rational parse(std::string_view text);

  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] mpq_class const& raw() const { return q_; }

  Rational& operator+=(Rational const& o) { q_ += o.q_; return *this; }
  Rational& operator-=(Rational const& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(Rational const& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(Rational const& o);

  friend Rational operator+(Rational a, Rational const& b) { return a += b; }
  friend Rational operator-(Rational a, Rational const& b) { return a -= b; }
  friend Rational operator*(Rational a, Rational const& b) { return a *= b; }
  friend Rational operator/(Rational a, Rational const& b) { return a /= b; }
  friend Rational operator-(Rational a) { a.q_ = -a.q_; return a; }

  friend bool operator==(Rational const& a, Rational const& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(Rational const& a, Rational const& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// this += a * b without a temporary.
  void add_product(Rational const& a, Rational const& b) {
    if (a.is_zero() || b.is_zero()) return;
    q_ += a.q_ * b.q_;
  }

  friend std::ostream& operator<<(std::ostream& os, Rational const& r);

 private:
  mpq_class q_{0};
};

Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);

/// Element a + b·t of ℚ[t]/(t²).
struct DualScalar {
  Rational value;
  Rational infinitesimal;

  DualScalar() = default;
  DualScalar(Rational v) : value(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  DualScalar(Rational v, Rational eps) : value(std::move(v)), infinitesimal(std::move(eps)) {}

  static DualScalar t() { return {Rational(0), Rational(1)}; }

  [[nodiscard]] bool is_zero() const { return value.is_zero() && infinitesimal.is_zero(); }

  DualScalar& operator+=(DualScalar const& o) {
    value += o.value;
    infinitesimal += o.infinitesimal;
    return *this;
  }
  DualScalar& operator-=(DualScalar const& o) {
    value -= o.value;
    infinitesimal -= o.infinitesimal;
    return *this;
  }
  DualScalar& operator*=(DualScalar const& o) {
    infinitesimal = value * o.infinitesimal + infinitesimal * o.value;
    value *= o.value;
    return *this;
  }
  friend DualScalar operator+(DualScalar a, DualScalar const& b) { return a += b; }
  friend DualScalar operator-(DualScalar a, DualScalar const& b) { return a -= b; }
  friend DualScalar operator*(DualScalar a, DualScalar const& b) { return a *= b; }
  friend DualScalar operator-(DualScalar a) {
    return {-a.value, -a.infinitesimal};
  }
  friend bool operator==(DualScalar const& a, DualScalar const& b) = default;

  void add_product(DualScalar const& a, DualScalar const& b) { *this += a * b; }
};

}  // namespace rdlie
