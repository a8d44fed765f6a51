#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "momentbody/scalar.hpp"

namespace momentbody {

// The arcsine law nu(dx) = dx / (pi sqrt(x (1-x))) on [0,1]: density, CDF,
// and the exact moment sequence c_k = C(2k, k) / 4^k.
namespace arcsine {

double density(double x);
double cdf(double x);
Rational moment_exact(unsigned long k);
Scalar moment(unsigned long k, Mode mode);
double moment_d(unsigned long k);

}  // namespace arcsine

// An m-point rule integrating f against nu. Nodes are the Chebyshev points
// transported to (0,1), x_j = (1 + cos((2j-1) pi / (2m))) / 2, with equal
// weights 1/m: the arcsine law is the Chebyshev weight on [0,1], so the rule
// is exact for polynomials of degree <= 2m-1 and has no endpoint nodes
// (endpoint-singular integrands need no special casing).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t order = 0;

  double apply(const std::function<double(double)>& f) const;
};

QuadratureRule nu_quadrature(std::size_t order);

struct QuadratureOptions {
  double tol = 1e-10;
  std::size_t initial_order = 16;
  std::size_t max_order = std::size_t(1) << 16;
  // An interior point where the integrand is singular; when set, the
  // integration is done in the Chebyshev angle with a quadratic grading of
  // the nodes toward the singularity.
  std::optional<double> singular_at = std::nullopt;
  // Grades nodes toward both endpoints instead. The plain rule stays valid
  // for integrable endpoint singularities (it has no endpoint nodes) but
  // converges like 1/m for log-type ones; grading restores fast convergence.
  bool endpoint_graded = false;
  // When the running estimates exceed this bound the integral is declared
  // divergent and +infinity is returned instead of an error.
  std::optional<double> divergence_bound = std::nullopt;
};

// Integral of f against nu by node doubling until two successive estimates
// differ by less than tol. Non-convergence throws QuadratureError carrying
// the last two estimates (unless a divergence bound is set and hit).
double integrate_nu(const std::function<double(double)>& f, const QuadratureOptions& opts);
double integrate_nu(const std::function<double(double)>& f, double tol);

}  // namespace momentbody
