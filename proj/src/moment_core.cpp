#include "momentbody/moment_core.hpp"

#include <algorithm>
#include <cmath>

namespace momentbody {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::interior: return "interior";
    case Classification::boundary: return "boundary";
    case Classification::outside: return "outside";
  }
  return "?";
}

MomentVector MomentVector::exact(std::vector<Rational> entries) {
  MomentVector v;
  v.entries_ = std::move(entries);
  return v;
}

MomentVector MomentVector::floating(std::vector<double> entries) {
  MomentVector v;
  v.entries_ = std::move(entries);
  return v;
}

Mode MomentVector::mode() const {
  return std::holds_alternative<std::vector<Rational>>(entries_) ? Mode::exact : Mode::floating;
}

std::size_t MomentVector::size() const {
  return std::visit([](const auto& e) { return e.size(); }, entries_);
}

Scalar MomentVector::entry(std::size_t k) const {
  if (k > size()) throw InvalidArgument("moment index out of range");
  if (k == 0) return mode() == Mode::exact ? Scalar(Rational(1)) : Scalar(1.0);
  if (mode() == Mode::exact) return Scalar(exact_entries()[k - 1]);
  return Scalar(float_entries()[k - 1]);
}

MomentVector MomentVector::prefix(std::size_t k) const {
  if (k > size()) throw InvalidArgument("prefix length exceeds vector size");
  if (mode() == Mode::exact) {
    const auto& e = exact_entries();
    return exact(std::vector<Rational>(e.begin(), e.begin() + k));
  }
  const auto& e = float_entries();
  return floating(std::vector<double>(e.begin(), e.begin() + k));
}

const std::vector<Rational>& MomentVector::exact_entries() const {
  if (mode() != Mode::exact) throw ModeMismatch("float moment vector used as exact");
  return std::get<std::vector<Rational>>(entries_);
}

const std::vector<double>& MomentVector::float_entries() const {
  if (mode() != Mode::floating) throw ModeMismatch("exact moment vector used as float");
  return std::get<std::vector<double>>(entries_);
}

std::vector<double> MomentVector::to_doubles() const {
  if (mode() == Mode::floating) return float_entries();
  std::vector<double> out;
  out.reserve(size());
  for (const auto& q : exact_entries()) out.push_back(q.get_d());
  return out;
}

namespace {

template <class T>
void check_canonical_open(const std::vector<T>& entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!(entries[i] > T(0) && entries[i] < T(1))) {
      throw InvalidArgument("canonical moment p_" + std::to_string(i + 1) +
                            " is not strictly inside (0,1)");
    }
  }
}

}  // namespace

CanonicalVector CanonicalVector::exact(std::vector<Rational> entries) {
  check_canonical_open(entries);
  CanonicalVector v;
  v.entries_ = std::move(entries);
  return v;
}

CanonicalVector CanonicalVector::floating(std::vector<double> entries) {
  check_canonical_open(entries);
  CanonicalVector v;
  v.entries_ = std::move(entries);
  return v;
}

Mode CanonicalVector::mode() const {
  return std::holds_alternative<std::vector<Rational>>(entries_) ? Mode::exact : Mode::floating;
}

std::size_t CanonicalVector::size() const {
  return std::visit([](const auto& e) { return e.size(); }, entries_);
}

Scalar CanonicalVector::entry(std::size_t i) const {
  if (i == 0 || i > size()) throw InvalidArgument("canonical index out of range");
  if (mode() == Mode::exact) return Scalar(exact_entries()[i - 1]);
  return Scalar(float_entries()[i - 1]);
}

const std::vector<Rational>& CanonicalVector::exact_entries() const {
  if (mode() != Mode::exact) throw ModeMismatch("float canonical vector used as exact");
  return std::get<std::vector<Rational>>(entries_);
}

const std::vector<double>& CanonicalVector::float_entries() const {
  if (mode() != Mode::floating) throw ModeMismatch("exact canonical vector used as float");
  return std::get<std::vector<double>>(entries_);
}

std::vector<double> CanonicalVector::to_doubles() const {
  if (mode() == Mode::floating) return float_entries();
  std::vector<double> out;
  out.reserve(size());
  for (const auto& q : exact_entries()) out.push_back(q.get_d());
  return out;
}

namespace detail {

namespace {

// Fraction-free (Bareiss) elimination over the integers; all divisions are
// exact, which bounds intermediate growth.
BigInt bareiss_det(std::vector<std::vector<BigInt>>& a) {
  const std::size_t n = a.size();
  int sign = 1;
  BigInt prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && a[pivot][k] == 0) ++pivot;
      if (pivot == n) return BigInt(0);
      std::swap(a[k], a[pivot]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(num);
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign < 0 ? BigInt(-a[n - 1][n - 1]) : a[n - 1][n - 1];
}

}  // namespace

Rational det_matrix(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Rational(1);
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  Rational scale(1);
  for (std::size_t i = 0; i < n; ++i) {
    BigInt l(1);
    for (std::size_t j = 0; j < n; ++j) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m[i][j].get_den().get_mpz_t());
    }
    scale *= Rational(l);
    for (std::size_t j = 0; j < n; ++j) {
      BigInt factor;
      mpz_divexact(factor.get_mpz_t(), l.get_mpz_t(), m[i][j].get_den().get_mpz_t());
      a[i][j] = m[i][j].get_num() * factor;
    }
  }
  Rational det(bareiss_det(a));
  det /= scale;
  return det;
}

double det_matrix(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1.0;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(m[i][k]) > std::fabs(m[pivot][k])) pivot = i;
    }
    if (m[pivot][k] == 0.0) return 0.0;
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = m[i][k] / m[k][k];
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] -= factor * m[k][j];
    }
  }
  return det;
}

std::pair<Rational, Rational> range_by_hankel(const std::vector<Rational>& c) {
  const std::size_t k = c.size();
  auto root_of = [&](bool lower_side) {
    auto det_at = [&](const Rational& x) {
      std::vector<Rational> ext = c;
      ext.push_back(x);
      auto [lo, up] = hankel_pair<Rational>(ext, k + 1);
      return lower_side ? lo : up;
    };
    const Rational d0 = det_at(Rational(0));
    const Rational d1 = det_at(Rational(1));
    const Rational slope = d1 - d0;
    if (slope == 0) {
      throw DomainError("Hankel determinant is degenerate in the last moment (non-interior prefix)");
    }
    Rational root = -d0 / slope;
    return root;
  };
  Rational a = root_of(true);
  Rational b = root_of(false);
  if (a > b) std::swap(a, b);
  return {a, b};
}

}  // namespace detail

namespace {

template <class T>
std::string non_interior_message(const detail::CanonicalExtraction<T>& ex) {
  if (ex.cls == Classification::boundary) {
    return "moment vector lies on the boundary: p_" + std::to_string(ex.terminal) + " = " +
           (ex.terminal_is_upper ? std::string("1 (determinant H-bar_")
                                 : std::string("0 (determinant H-low_")) +
           std::to_string(ex.terminal) + " vanishes)";
  }
  if (ex.outside_forced) {
    return "moment vector lies outside the moment body: c_" + std::to_string(ex.offending) +
           " deviates from the forced boundary continuation";
  }
  return "moment vector lies outside the moment body: determinant " +
         (ex.outside_above ? std::string("H-bar_") : std::string("H-low_")) +
         std::to_string(ex.offending) + " is negative";
}

template <class T>
void require_interior(const detail::CanonicalExtraction<T>& ex) {
  if (ex.cls != Classification::interior) {
    throw DomainError(non_interior_message(ex));
  }
}

}  // namespace

HankelPair hankel(const MomentVector& c, std::size_t m) {
  HankelPair out;
  out.index = m;
  if (c.mode() == Mode::exact) {
    auto [lo, up] = detail::hankel_pair<Rational>(c.exact_entries(), m);
    out.lower = Scalar(std::move(lo));
    out.upper = Scalar(std::move(up));
  } else {
    auto [lo, up] = detail::hankel_pair<double>(c.float_entries(), m);
    out.lower = Scalar(lo);
    out.upper = Scalar(up);
  }
  return out;
}

Classification classify(const MomentVector& c) {
  if (c.mode() == Mode::exact) return detail::extract_canonical(c.exact_entries()).cls;
  return detail::extract_canonical(c.float_entries()).cls;
}

MomentRange moment_range(const MomentVector& c) {
  MomentRange out;
  if (c.mode() == Mode::exact) {
    const auto ex = detail::extract_canonical(c.exact_entries());
    require_interior(ex);
    auto [lo, hi] = detail::range_by_hankel(c.exact_entries());
    out.c_minus = Scalar(lo);
    out.c_plus = Scalar(hi);
    out.width = Scalar(Rational(hi - lo));
  } else {
    const auto ex = detail::extract_canonical(c.float_entries());
    require_interior(ex);
    const double c_minus = detail::moments_from_canonical(ex.p, c.size() + 1).back();
    double width = 1.0;
    for (double p : ex.p) width *= p * (1.0 - p);
    out.c_minus = Scalar(c_minus);
    out.c_plus = Scalar(c_minus + width);
    out.width = Scalar(width);
  }
  return out;
}

CanonicalVector moments_to_canonical(const MomentVector& c) {
  if (c.mode() == Mode::exact) {
    auto ex = detail::extract_canonical(c.exact_entries());
    if (ex.cls == Classification::boundary) {
      throw DomainError("boundary moment vector: p_" + std::to_string(ex.terminal) + " = " +
                        (ex.terminal_is_upper ? "1" : "0") + ", canonical coordinates undefined");
    }
    require_interior(ex);
    return CanonicalVector::exact(std::move(ex.p));
  }
  auto ex = detail::extract_canonical(c.float_entries());
  if (ex.cls == Classification::boundary) {
    throw DomainError("boundary moment vector: p_" + std::to_string(ex.terminal) + " = " +
                      (ex.terminal_is_upper ? "1" : "0") + ", canonical coordinates undefined");
  }
  require_interior(ex);
  return CanonicalVector::floating(std::move(ex.p));
}

MomentVector canonical_to_moments(const CanonicalVector& p) {
  if (p.mode() == Mode::exact) {
    return MomentVector::exact(detail::moments_from_canonical(p.exact_entries(), p.size()));
  }
  return MomentVector::floating(detail::moments_from_canonical(p.float_entries(), p.size()));
}

Scalar range_width_product(const CanonicalVector& p) {
  if (p.mode() == Mode::exact) {
    Rational prod(1);
    for (const auto& pi : p.exact_entries()) prod *= pi * (Rational(1) - pi);
    return Scalar(std::move(prod));
  }
  double prod = 1.0;
  for (double pi : p.float_entries()) prod *= pi * (1.0 - pi);
  return Scalar(prod);
}

Scalar range_width_hankel(const MomentVector& c) {
  const std::size_t n = c.size();
  if (classify(c) != Classification::interior) {
    throw DomainError("range via Hankel determinants needs an interior moment vector");
  }
  if (c.mode() == Mode::exact) {
    auto [lo_n, up_n] = detail::hankel_pair<Rational>(c.exact_entries(), n);
    auto [lo_p, up_p] = detail::hankel_pair<Rational>(c.exact_entries(), n == 0 ? 0 : n - 1);
    Rational r = (lo_n * up_n) / (lo_p * up_p);
    return Scalar(std::move(r));
  }
  auto [lo_n, up_n] = detail::hankel_pair<double>(c.float_entries(), n);
  auto [lo_p, up_p] = detail::hankel_pair<double>(c.float_entries(), n == 0 ? 0 : n - 1);
  return Scalar((lo_n * up_n) / (lo_p * up_p));
}

}  // namespace momentbody
