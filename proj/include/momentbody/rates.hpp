#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "momentbody/arcsine.hpp"
#include "momentbody/moment_core.hpp"
#include "momentbody/principal.hpp"

namespace momentbody {

// Large-deviation rate of Beta(n,n): -ln(x - x^2) - ln 4 on (0,1), +inf
// elsewhere (ln tau = -inf for tau <= 0).
double rate_I1_beta(double x);

// Rate of the k-prefix of a uniform moment-body point:
// -ln(c^+ - c^-) - k ln 4 on the interior, evaluated in canonical
// coordinates as sum_i -ln(4 p_i (1 - p_i)); +inf otherwise.
double rate_Ik(const MomentVector& c);
double rate_Ik_from_canonical(const std::vector<double>& p);

// Moderate-deviation data: A(i,j) = 2^{-2i+1} C(2i, i-j) for j <= i,
// Sigma = A A^T / 2, kept exact.
struct MDCoefficients {
  std::size_t k = 0;
  std::vector<std::vector<Rational>> A;
  std::vector<std::vector<Rational>> Sigma;
  std::vector<std::vector<Rational>> SigmaInv;

  std::vector<std::vector<double>> sigma_d() const;
};

MDCoefficients md_coefficients(std::size_t k);

// Quadratic moderate-deviation rate x^T Sigma_k^{-1} x / 2, k = x.size(),
// via a Cholesky factorization of Sigma_k.
double rate_Jk(const std::vector<double>& xbar);

// A probability measure given as a density g w.r.t. the arcsine law plus an
// optional atomic part.
struct MeasureSpec {
  std::function<double(double)> density;  // g = d(mu_a)/d(nu); may be empty
  // Interior point where the density blows up, if any (quadrature hint).
  std::optional<double> density_singular_at;
  DiscreteMeasure atoms;  // may be empty

  // Checks that the total mass is 1 within the quadrature tolerance.
  void validate(double tol = 1e-9) const;
};

// Reversed Kullback information I(mu) = K(nu, mu) = -int ln g dnu; +inf
// when the density part vanishes on a node (atoms are nu-null and never
// contribute).
double reversed_kullback(const MeasureSpec& mu, double quad_tol = 1e-10);

// Concave dual of inf { I(mu) : mu has moments c }:
//   H(l0, l) = l0 + <l, c> + int ln(1 - l0 - <l, phi_k(x)>) dnu(x),
// maximized by a safeguarded Newton iteration with the positivity of the
// log argument enforced at the quadrature nodes.
struct DualSolution {
  double lambda0 = 0.0;
  std::vector<double> lambda;
  double value = 0.0;
  double grad_norm = 0.0;  // infinity norm at exit
  std::size_t iterations = 0;
  std::size_t quadrature_order = 0;
};

struct DualOptions {
  double tol = 1e-9;          // gradient infinity-norm target
  std::size_t max_iter = 200;
  std::size_t initial_order = 128;
  std::size_t max_order = std::size_t(1) << 14;
};

DualSolution dual_Hk_maximize(const MomentVector& c, const DualOptions& opts = {});

// r_{k+1}(c): the admissible width of the next moment. Boundary input gives
// 0; outside input is rejected. With check_dual set, cross-checks the
// width against exp(-dual value - k ln 4) and throws on disagreement.
Scalar range_size(const MomentVector& c, bool check_dual = false);

// Moments of nu/P for a polynomial P > 0 on [0,1] normalized so that
// int dnu/P = 1, plus the predicted and computed width of the next moment
// interval; r_{j+1} = exp(-j ln 4 - int ln P dnu) for j >= deg P.
struct PolynomialCaseResult {
  std::vector<double> moments;   // d_1..d_j
  double normalization = 0.0;    // int dnu / P (checked to be 1)
  double predicted_width = 0.0;
  double computed_width = 0.0;
  double kullback = 0.0;         // I(nu/P) = int ln P dnu
};

PolynomialCaseResult polynomial_case_range(const std::vector<double>& poly_coeffs, std::size_t j,
                                           double norm_tol = 1e-10, double quad_tol = 1e-12);

double evaluate_polynomial(const std::vector<double>& coeffs, double x);

// Limit of the exponentially tilted random measures for the tilt
// F(mu) = int f0 dmu: either an absolutely continuous law with density
// 1/(lambda* - f0) w.r.t. nu, or that density at lambda-bar plus an atom at
// the unique maximizer of f0.
enum class TiltCase { absolutely_continuous, atom_at_maximizer };

struct TiltSolution {
  double lambda_bar = 0.0;   // max of f0 on [0,1]
  double chi0 = 0.0;         // int (lambda_bar - f0)^{-1} dnu, may be +inf
  double lambda_star = 0.0;  // case (i) only
  double x0 = 0.0;           // maximizer of f0
  double atom_mass = 0.0;    // case (ii): 1 - chi0
  double k_f = 0.0;          // F(limit) - I(limit), reported variationally
  double f_limit = 0.0;      // F evaluated at the limit
  double i_limit = 0.0;      // I evaluated at the limit
  TiltCase kind = TiltCase::absolutely_continuous;
  MeasureSpec limit;
};

TiltSolution tilt_limit(const std::function<double(double)>& f0, double tol = 1e-9);

}  // namespace momentbody
