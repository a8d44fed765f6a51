#pragma once

namespace momentbody {

// Regularized incomplete beta I_x(a, b) = P(X <= x) for X ~ Beta(a, b),
// by Lentz's continued fraction. Absolute error <= 1e-12.
double regularized_incomplete_beta(double a, double b, double x);

// ln P(X <= x) and ln P(X >= x). These stay accurate deep in the tails
// (P down to exp(-700) and far below), where the linear-scale value
// underflows; the tail experiments at n ~ 10^4 need them.
double log_beta_cdf(double a, double b, double x);
double log_beta_sf(double a, double b, double x);

}  // namespace momentbody
