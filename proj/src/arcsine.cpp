#include "momentbody/arcsine.hpp"

#include <cmath>

namespace momentbody {

namespace arcsine {

double density(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return 1.0 / (M_PI * std::sqrt(x * (1.0 - x)));
}

double cdf(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return 2.0 / M_PI * std::asin(std::sqrt(x));
}

Rational moment_exact(unsigned long k) {
  Rational q(binomial(2 * k, k));
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 4, k);
  q /= Rational(den);
  return q;
}

Scalar moment(unsigned long k, Mode mode) {
  Rational q = moment_exact(k);
  if (mode == Mode::exact) return Scalar(std::move(q));
  return Scalar(q.get_d());
}

double moment_d(unsigned long k) { return moment_exact(k).get_d(); }

}  // namespace arcsine

QuadratureRule nu_quadrature(std::size_t order) {
  if (order == 0) throw InvalidArgument("quadrature order must be positive");
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.assign(order, 1.0 / static_cast<double>(order));
  for (std::size_t j = 1; j <= order; ++j) {
    const double theta = (2.0 * static_cast<double>(j) - 1.0) * M_PI / (2.0 * static_cast<double>(order));
    const double c = std::cos(0.5 * theta);
    rule.nodes[j - 1] = c * c;
  }
  return rule;
}

double QuadratureRule::apply(const std::function<double(double)>& f) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < order; ++j) sum += f(nodes[j]);
  return sum / static_cast<double>(order);
}

namespace {

// Plain estimate: the m-point Chebyshev rule, i.e. the midpoint rule in the
// angle theta for (1/pi) * integral of f((1+cos theta)/2) over [0, pi].
// x(theta) = cos^2(theta/2): same point as (1 + cos theta)/2 but immune to
// the 1 - cos cancellation near theta = pi.
double node_x(double theta) {
  const double c = std::cos(0.5 * theta);
  return c * c;
}

double estimate_plain(const std::function<double(double)>& f, std::size_t m) {
  double sum = 0.0;
  for (std::size_t j = 1; j <= m; ++j) {
    const double theta = (2.0 * static_cast<double>(j) - 1.0) * M_PI / (2.0 * static_cast<double>(m));
    sum += f(node_x(theta));
  }
  return sum / static_cast<double>(m);
}

// Graded estimate for an integrand singular at the interior point x0. Work
// in the angle theta0 = acos(2 x0 - 1), split there, and substitute
// theta = theta0 +/- L s^2 on each side so nodes cluster quadratically at
// the singularity. Midpoint in s never evaluates theta0 itself.
double estimate_graded(const std::function<double(double)>& f, double theta0, std::size_t m) {
  double total = 0.0;
  const double lengths[2] = {theta0, M_PI - theta0};
  const double signs[2] = {-1.0, +1.0};
  for (int side = 0; side < 2; ++side) {
    const double len = lengths[side];
    if (len <= 0.0) continue;
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double s = (static_cast<double>(j) + 0.5) / static_cast<double>(m);
      const double theta = theta0 + signs[side] * len * s * s;
      sum += f(node_x(theta)) * 2.0 * len * s;
    }
    total += sum / static_cast<double>(m);
  }
  return total / M_PI;
}

// Grading toward theta = 0 and theta = pi (x = 1 and x = 0): split at pi/2
// and substitute theta = L s^2 from each end.
double estimate_endpoint_graded(const std::function<double(double)>& f, std::size_t m) {
  const double len = 0.5 * M_PI;
  double total = 0.0;
  for (int side = 0; side < 2; ++side) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double s = (static_cast<double>(j) + 0.5) / static_cast<double>(m);
      const double theta = side == 0 ? len * s * s : M_PI - len * s * s;
      sum += f(node_x(theta)) * 2.0 * len * s;
    }
    total += sum / static_cast<double>(m);
  }
  return total / M_PI;
}

}  // namespace

double integrate_nu(const std::function<double(double)>& f, const QuadratureOptions& opts) {
  if (!(opts.tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  double theta0 = 0.0;
  if (opts.singular_at) {
    const double x0 = std::min(1.0, std::max(0.0, *opts.singular_at));
    theta0 = std::acos(2.0 * x0 - 1.0);
  }
  auto estimate = [&](std::size_t order) {
    if (opts.singular_at) return estimate_graded(f, theta0, order);
    if (opts.endpoint_graded) return estimate_endpoint_graded(f, order);
    return estimate_plain(f, order);
  };
  std::size_t m = opts.initial_order;
  double prev = estimate(m);
  while (true) {
    m *= 2;
    const double cur = estimate(m);
    if (opts.divergence_bound &&
        (!std::isfinite(cur) || std::abs(cur) > *opts.divergence_bound)) {
      return cur >= 0.0 ? HUGE_VAL : -HUGE_VAL;
    }
    if (!std::isfinite(cur)) {
      throw QuadratureError("integrand produced a non-finite value", cur, prev);
    }
    if (std::abs(cur - prev) < opts.tol) return cur;
    if (m >= opts.max_order) {
      throw QuadratureError("nu-quadrature did not converge to tol within the order cap",
                            cur, prev);
    }
    prev = cur;
  }
}

double integrate_nu(const std::function<double(double)>& f, double tol) {
  QuadratureOptions opts;
  opts.tol = tol;
  return integrate_nu(f, opts);
}

}  // namespace momentbody
