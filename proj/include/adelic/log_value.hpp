#pragma once

#include "adelic/exact_arith.hpp"

#include <string>

namespace adelic {

/// A value on the natural-log scale attached to one place.
///
/// At a finite place p the value is exact: coeff * log p with coeff rational.
/// At the archimedean place it is a double with a nonnegative error bound.
/// A third state marks log 0 = -infinity (the diagonal of a kernel).
///
/// The exact zero is place-agnostic, so it can be added to either kind.
/// Mixing two nonzero exact values at different primes, or an exact nonzero
/// value with an approximate one, is a logic error.
class LogValue {
 public:
  enum class Kind { exact, approx, neg_infinity };

  LogValue() = default;

  static LogValue exact(Rational coeff, Integer prime);
  static LogValue approx(double value, double error = 0.0);
  static LogValue neg_infinity();

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::exact; }
  bool is_approx() const { return kind_ == Kind::approx; }
  bool is_neg_infinity() const { return kind_ == Kind::neg_infinity; }
  bool is_exact_zero() const { return kind_ == Kind::exact && coeff_ == 0; }

  /// Exact coefficient of log p. Only meaningful for exact values.
  const Rational& coefficient() const { return coeff_; }
  /// The prime p for exact values; 0 for the exact zero.
  const Integer& prime() const { return prime_; }

  /// Numeric value (coeff * log p for exact values).
  long double value() const;
  double error() const { return kind_ == Kind::approx ? error_ : 0.0; }

  LogValue& operator+=(const LogValue& other);
  LogValue& operator-=(const LogValue& other);
  LogValue operator-() const;
  friend LogValue operator+(LogValue a, const LogValue& b) { return a += b; }
  friend LogValue operator-(LogValue a, const LogValue& b) { return a -= b; }

  /// Scaling keeps exact values exact.
  friend LogValue operator*(const Rational& s, LogValue v);
  /// Scaling of a non-exact value; exact zero stays zero.
  friend LogValue operator*(double s, LogValue v);

  /// Structural equality: identical kinds with identical exact coefficients,
  /// or identical approximate value and error.
  friend bool operator==(const LogValue& a, const LogValue& b);

  std::string to_string() const;

 private:
  Kind kind_ = Kind::exact;
  Rational coeff_ = 0;
  Integer prime_ = 0;
  double value_ = 0.0;
  double error_ = 0.0;
};

/// Three-way comparison of exact values at the same prime (or zero);
/// throws std::logic_error otherwise.
int compare_exact(const LogValue& a, const LogValue& b);

}  // namespace adelic
