#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <variant>

#include "momentbody/errors.hpp"

namespace momentbody {

using BigInt = mpz_class;
using Rational = mpq_class;

// Arithmetic mode of a Scalar. Exact rationals are used for identity tests
// at small n (Hankel determinants shrink like 4^(-n^2) and underflow doubles
// near n = 20); floats are used for asymptotic sweeps.
enum class Mode { exact, floating };

Rational make_rational(long num, long den = 1);

// Parses "p/q" or a bare integer. Throws InvalidArgument on anything else.
Rational parse_rational(const std::string& text);

// Lowest terms, positive denominator; denominator 1 prints as a bare integer.
std::string format_rational(const Rational& q);

// Shortest round-trip decimal.
std::string format_double(double x);
double parse_double(const std::string& text);

// base^exp for integer exp (exp may be negative if base != 0).
Rational pow_rational(const Rational& base, long exp);

// C(n, k), exact. k > n yields 0 (the a_ij = 0 for j > i convention).
BigInt binomial(unsigned long n, unsigned long k);

// One number in either arithmetic mode. Mixing modes in an arithmetic
// expression is a contract violation and throws ModeMismatch; there is no
// silent coercion. Conversion exact -> float is explicit via to_double().
class Scalar {
 public:
  Scalar() : value_(0.0) {}
  explicit Scalar(double x) : value_(x) {}
  explicit Scalar(Rational q) : value_(std::move(q)) {}

  static Scalar exact(long num, long den = 1) { return Scalar(make_rational(num, den)); }

  Mode mode() const { return std::holds_alternative<Rational>(value_) ? Mode::exact : Mode::floating; }
  bool is_exact() const { return mode() == Mode::exact; }

  const Rational& rational() const;  // throws ModeMismatch if floating
  double floating() const;           // throws ModeMismatch if exact
  double to_double() const;          // explicit lossy view, either mode

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  bool operator<(const Scalar& o) const;
  bool operator<=(const Scalar& o) const;
  bool operator>(const Scalar& o) const { return o < *this; }
  bool operator>=(const Scalar& o) const { return o <= *this; }

  // "p/q" in exact mode, shortest round-trip decimal in float mode.
  std::string to_string() const;
  // Parses according to the requested mode.
  static Scalar parse(const std::string& text, Mode mode);

 private:
  std::variant<Rational, double> value_;
};

}  // namespace momentbody
