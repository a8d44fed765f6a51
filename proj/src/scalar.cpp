#include "momentbody/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace momentbody {

Rational make_rational(long num, long den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw InvalidArgument("empty rational literal");
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      const BigInt num(text);
      return Rational(num);
    }
    const std::string num_text = text.substr(0, slash);
    const std::string den_text = text.substr(slash + 1);
    if (num_text.empty() || den_text.empty()) throw std::invalid_argument(text);
    const BigInt num(num_text);
    const BigInt den(den_text);
    if (den == 0) throw InvalidArgument("zero denominator in \"" + text + "\"");
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw InvalidArgument("not a rational literal: \"" + text + "\"");
  }
}

std::string format_rational(const Rational& q) { return q.get_str(); }

std::string format_double(double x) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw InvalidArgument("not a number: \"" + text + "\"");
  if (!std::isfinite(x)) throw InvalidArgument("non-finite literal: \"" + text + "\"");
  return x;
}

Rational pow_rational(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  const bool invert = exp < 0;
  unsigned long e = invert ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
  if (invert && base == 0) throw InvalidArgument("0 raised to a negative power");
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
  out.canonicalize();
  return invert ? Rational(1) / out : out;
}

BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return BigInt(0);
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

const Rational& Scalar::rational() const {
  if (!is_exact()) throw ModeMismatch("float scalar used where an exact one is required");
  return std::get<Rational>(value_);
}

double Scalar::floating() const {
  if (is_exact()) throw ModeMismatch("exact scalar used where a float one is required");
  return std::get<double>(value_);
}

double Scalar::to_double() const {
  return is_exact() ? std::get<Rational>(value_).get_d() : std::get<double>(value_);
}

namespace {
void require_same_mode(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) throw ModeMismatch("mixed exact/float arithmetic");
}
}  // namespace

Scalar Scalar::operator+(const Scalar& o) const {
  require_same_mode(*this, o);
  if (is_exact()) return Scalar(rational() + o.rational());
  return Scalar(floating() + o.floating());
}

Scalar Scalar::operator-(const Scalar& o) const {
  require_same_mode(*this, o);
  if (is_exact()) return Scalar(rational() - o.rational());
  return Scalar(floating() - o.floating());
}

Scalar Scalar::operator*(const Scalar& o) const {
  require_same_mode(*this, o);
  if (is_exact()) return Scalar(rational() * o.rational());
  return Scalar(floating() * o.floating());
}

Scalar Scalar::operator/(const Scalar& o) const {
  require_same_mode(*this, o);
  if (is_exact()) {
    if (o.rational() == 0) throw InvalidArgument("exact division by zero");
    return Scalar(rational() / o.rational());
  }
  return Scalar(floating() / o.floating());
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(Rational(-rational()));
  return Scalar(-std::get<double>(value_));
}

bool Scalar::operator==(const Scalar& o) const {
  require_same_mode(*this, o);
  if (is_exact()) return rational() == o.rational();
  return floating() == o.floating();
}

bool Scalar::operator<(const Scalar& o) const {
  require_same_mode(*this, o);
  if (is_exact()) return rational() < o.rational();
  return floating() < o.floating();
}

bool Scalar::operator<=(const Scalar& o) const {
  require_same_mode(*this, o);
  if (is_exact()) return rational() <= o.rational();
  return floating() <= o.floating();
}

std::string Scalar::to_string() const {
  return is_exact() ? format_rational(rational()) : format_double(std::get<double>(value_));
}

Scalar Scalar::parse(const std::string& text, Mode mode) {
  if (mode == Mode::exact) return Scalar(parse_rational(text));
  return Scalar(parse_double(text));
}

}  // namespace momentbody
