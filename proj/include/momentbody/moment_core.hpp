#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "momentbody/scalar.hpp"

namespace momentbody {

// Trichotomy of a truncated moment vector: infinitely many representing
// measures (interior of the moment body), exactly one (boundary), or none.
enum class Classification { interior, boundary, outside };

std::string to_string(Classification c);

// Float-mode boundary tolerance: a canonical entry within this distance of
// {0,1} is treated as a boundary termination.
inline constexpr double kBoundaryEps = 1e-12;

// Truncated power-moment sequence (c_1, ..., c_n); c_0 = 1 is implicit.
// Entries are all-exact or all-float, fixed at construction.
class MomentVector {
 public:
  MomentVector() : entries_(std::vector<double>{}) {}
  static MomentVector exact(std::vector<Rational> entries);
  static MomentVector floating(std::vector<double> entries);

  Mode mode() const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  Scalar entry(std::size_t k) const;  // 1-based; entry(0) == 1
  MomentVector prefix(std::size_t k) const;

  const std::vector<Rational>& exact_entries() const;
  const std::vector<double>& float_entries() const;
  std::vector<double> to_doubles() const;  // explicit lossy view

 private:
  std::variant<std::vector<Rational>, std::vector<double>> entries_;
};

// Canonical moments (p_1, ..., p_n), each strictly inside (0, 1); boundary
// terminations are not representable here (principal representations carry
// the terminal 0/1 as a separate side flag).
class CanonicalVector {
 public:
  CanonicalVector() : entries_(std::vector<double>{}) {}
  static CanonicalVector exact(std::vector<Rational> entries);
  static CanonicalVector floating(std::vector<double> entries);

  Mode mode() const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  Scalar entry(std::size_t i) const;  // 1-based

  const std::vector<Rational>& exact_entries() const;
  const std::vector<double>& float_entries() const;
  std::vector<double> to_doubles() const;

 private:
  std::variant<std::vector<Rational>, std::vector<double>> entries_;
};

// Admissible interval for the next moment given a prefix.
struct MomentRange {
  Scalar c_minus;
  Scalar c_plus;
  Scalar width;  // c_plus - c_minus, equal to the product of p_i (1 - p_i)
};

// Hankel determinants of index m over a moment prefix; H_0 = 1 on both
// sides by the empty-determinant convention.
struct HankelPair {
  Scalar lower;  // moment matrix determinant
  Scalar upper;  // difference-moment matrix determinant
  std::size_t index = 0;
};

HankelPair hankel(const MomentVector& c, std::size_t m);
Classification classify(const MomentVector& c);
MomentRange moment_range(const MomentVector& c);
CanonicalVector moments_to_canonical(const MomentVector& c);
MomentVector canonical_to_moments(const CanonicalVector& p);
Scalar range_width_product(const CanonicalVector& p);
Scalar range_width_hankel(const MomentVector& c);

namespace detail {

Rational det_matrix(std::vector<std::vector<Rational>> m);  // fraction-free Bareiss
double det_matrix(std::vector<std::vector<double>> m);      // partial-pivot LU

// Moments c_1..c_count of the measure whose canonical-moment sequence is p,
// padded with zeros past the end of p (a zero entry terminates the measure,
// so padding realizes the lower principal representation of the prefix).
// Entries of p may lie in the closed interval [0, 1]. The walk is the
// three-term transfer recurrence: with zeta_k = (1 - p_{k-1}) p_k, the
// tridiagonal matrix T with T(i,i) = zeta_{2i} + zeta_{2i+1},
// T(i+1,i) = 1, T(i,i+1) = zeta_{2i+1} zeta_{2i+2} has c_k = (T^k)(0,0).
template <class T>
std::vector<T> moments_from_canonical(const std::vector<T>& p, std::size_t count) {
  const std::size_t height = count / 2 + 1;
  std::vector<T> zeta(2 * height, T(0));
  for (std::size_t k = 1; k < 2 * height; ++k) {
    if (k > p.size()) break;
    if (k == 1) {
      zeta[k] = p[0];
    } else {
      zeta[k] = (T(1) - p[k - 2]) * p[k - 1];
    }
  }
  std::vector<T> alpha(height, T(0));
  std::vector<T> beta(height, T(0));
  alpha[0] = zeta[1];
  for (std::size_t j = 1; j < height; ++j) {
    alpha[j] = zeta[2 * j] + zeta[2 * j + 1];
    beta[j] = zeta[2 * j - 1] * zeta[2 * j];
  }

  std::vector<T> v(height, T(0));
  std::vector<T> w(height, T(0));
  v[0] = T(1);
  std::vector<T> out;
  out.reserve(count);
  for (std::size_t step = 0; step < count; ++step) {
    for (std::size_t i = 0; i < height; ++i) {
      T acc = alpha[i] * v[i];
      if (i > 0) acc += v[i - 1];
      if (i + 1 < height) acc += beta[i + 1] * v[i + 1];
      w[i] = std::move(acc);
    }
    v.swap(w);
    out.push_back(v[0]);
  }
  return out;
}

// Hankel determinant pair (lower, upper) of index m over (1, c_1, ..., c_n).
template <class T>
std::pair<T, T> hankel_pair(const std::vector<T>& c, std::size_t m) {
  if (m > c.size()) throw InvalidArgument("hankel index exceeds the available moments");
  auto at = [&](std::size_t idx) { return idx == 0 ? T(1) : c[idx - 1]; };
  std::vector<std::vector<T>> lo, up;
  if (m % 2 == 0) {
    const std::size_t t = m / 2;
    lo.assign(t + 1, std::vector<T>(t + 1));
    for (std::size_t i = 0; i <= t; ++i)
      for (std::size_t j = 0; j <= t; ++j) lo[i][j] = at(i + j);
    if (t > 0) {
      up.assign(t, std::vector<T>(t));
      for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) up[i][j] = at(i + j + 1) - at(i + j + 2);
    }
  } else {
    const std::size_t t = (m - 1) / 2;
    lo.assign(t + 1, std::vector<T>(t + 1));
    up.assign(t + 1, std::vector<T>(t + 1));
    for (std::size_t i = 0; i <= t; ++i)
      for (std::size_t j = 0; j <= t; ++j) {
        lo[i][j] = at(i + j + 1);
        up[i][j] = at(i + j) - at(i + j + 1);
      }
  }
  T lower = lo.empty() ? T(1) : det_matrix(std::move(lo));
  T upper = up.empty() ? T(1) : det_matrix(std::move(up));
  return {std::move(lower), std::move(upper)};
}

// One pass over growing prefixes recovering canonical coordinates and the
// trichotomy. p_i = (c_i - c^-) / r with c^- from the zero-padded forward
// map and r maintained as the running product of p_j (1 - p_j).
template <class T>
struct CanonicalExtraction {
  std::vector<T> p;  // length = index of last processed prefix
  Classification cls = Classification::interior;
  std::size_t terminal = 0;     // 1-based index of the first p in {0,1} (boundary)
  std::size_t offending = 0;    // 1-based index that pushed the vector outside
  bool terminal_is_upper = false;
  bool outside_above = false;  // p_offending > 1 (upper determinant negative)
  bool outside_forced = false;  // mismatch against a forced continuation
};

template <class T>
CanonicalExtraction<T> extract_canonical(const std::vector<T>& c) {
  constexpr bool is_float = std::is_same_v<T, double>;
  CanonicalExtraction<T> out;
  const std::size_t n = c.size();
  T width(1);
  for (std::size_t i = 1; i <= n; ++i) {
    if constexpr (is_float) {
      if (width == 0.0) throw DomainError("admissible moment width underflowed in float mode");
    }
    const T c_minus = moments_from_canonical(out.p, i).back();
    const T pi = (c[i - 1] - c_minus) / width;

    bool at_lower = false, at_upper = false, outside = false;
    if constexpr (is_float) {
      at_lower = pi <= kBoundaryEps && pi >= -kBoundaryEps;
      at_upper = pi >= 1.0 - kBoundaryEps && pi <= 1.0 + kBoundaryEps;
      outside = pi < -kBoundaryEps || pi > 1.0 + kBoundaryEps;
    } else {
      at_lower = pi == 0;
      at_upper = pi == 1;
      outside = pi < 0 || pi > 1;
    }

    if (outside) {
      out.cls = Classification::outside;
      out.offending = i;
      out.outside_above = pi > T(1);
      return out;
    }
    if (at_lower || at_upper) {
      out.p.push_back(at_upper ? T(1) : T(0));
      out.terminal = i;
      out.terminal_is_upper = at_upper;
      // Every later moment is forced; any mismatch means no measure exists.
      const std::vector<T> forced = moments_from_canonical(out.p, n);
      for (std::size_t j = i + 1; j <= n; ++j) {
        bool match;
        if constexpr (is_float) {
          match = std::abs(c[j - 1] - forced[j - 1]) <= kBoundaryEps;
        } else {
          match = c[j - 1] == forced[j - 1];
        }
        if (!match) {
          out.cls = Classification::outside;
          out.offending = j;
          out.outside_forced = true;
          return out;
        }
      }
      out.cls = Classification::boundary;
      return out;
    }

    out.p.push_back(pi);
    width = width * pi * (T(1) - pi);
  }
  out.cls = Classification::interior;
  return out;
}

// (c^-, c^+) for the next moment after an interior exact prefix, by solving
// the two affine-in-the-last-moment Hankel equations H = 0. Which root is
// which endpoint is decided by ordering, not parity bookkeeping.
std::pair<Rational, Rational> range_by_hankel(const std::vector<Rational>& c);

}  // namespace detail

}  // namespace momentbody
