#pragma once

#include <random>
#include <vector>

#include "momentbody/moment_core.hpp"

namespace testhelp {

using momentbody::make_rational;
using momentbody::Rational;

inline std::vector<Rational> random_canonical_exact(std::mt19937& rng, std::size_t n,
                                                    long den = 64) {
  std::uniform_int_distribution<long> num(1, den - 1);
  std::vector<Rational> p;
  p.reserve(n);
  for (std::size_t i = 0; i < n; ++i) p.push_back(make_rational(num(rng), den));
  return p;
}

inline std::vector<double> random_canonical_float(std::mt19937& rng, std::size_t n,
                                                  double lo = 0.05, double hi = 0.95) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> p;
  p.reserve(n);
  for (std::size_t i = 0; i < n; ++i) p.push_back(u(rng));
  return p;
}

// Moments of the image measure under x -> 1-x, by binomial expansion of
// E[(1-X)^k].
inline std::vector<Rational> reflect_moments_exact(const std::vector<Rational>& c) {
  std::vector<Rational> out;
  out.reserve(c.size());
  for (std::size_t k = 1; k <= c.size(); ++k) {
    Rational sum(0);
    for (std::size_t j = 0; j <= k; ++j) {
      const Rational term = Rational(momentbody::binomial(k, j)) * (j == 0 ? Rational(1) : c[j - 1]);
      if (j % 2 == 0) {
        sum += term;
      } else {
        sum -= term;
      }
    }
    out.push_back(sum);
  }
  return out;
}

}  // namespace testhelp
