#include "momentbody/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace momentbody {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn4 = 1.3862943611198906;

// Solves A x = b for symmetric positive definite A.
std::vector<double> cholesky_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = a.size();
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j][j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j][k] * a[j][k];
    if (!(d > 0.0)) throw DomainError("matrix is not positive definite");
    a[j][j] = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i][k] * a[j][k];
      a[i][j] = s / a[j][j];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= a[k][ii] * x[k];
    x[ii] = s / a[ii][ii];
  }
  return x;
}

std::vector<std::vector<Rational>> invert_exact(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) throw DomainError("singular matrix in exact inversion");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational d = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      const Rational f = m[i][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[col][j];
        inv[i][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

double rate_I1_beta(double x) {
  if (!(x > 0.0 && x < 1.0)) return kInf;
  return -std::log(x - x * x) - kLn4;
}

double rate_Ik_from_canonical(const std::vector<double>& p) {
  double sum = 0.0;
  for (double pi : p) {
    if (!(pi > 0.0 && pi < 1.0)) return kInf;
    sum += -std::log(4.0 * pi * (1.0 - pi));
  }
  return sum;
}

double rate_Ik(const MomentVector& c) {
  if (c.mode() == Mode::exact) {
    const auto ex = detail::extract_canonical(c.exact_entries());
    if (ex.cls != Classification::interior) return kInf;
    std::vector<double> p;
    p.reserve(ex.p.size());
    for (const auto& q : ex.p) p.push_back(q.get_d());
    return rate_Ik_from_canonical(p);
  }
  const auto ex = detail::extract_canonical(c.float_entries());
  if (ex.cls != Classification::interior) return kInf;
  return rate_Ik_from_canonical(ex.p);
}

MDCoefficients md_coefficients(std::size_t k) {
  if (k == 0) throw InvalidArgument("moderate-deviation dimension must be positive");
  MDCoefficients out;
  out.k = k;
  out.A.assign(k, std::vector<Rational>(k, Rational(0)));
  for (std::size_t i = 1; i <= k; ++i) {
    const Rational scale = pow_rational(make_rational(1, 2), 2 * static_cast<long>(i) - 1);
    for (std::size_t j = 1; j <= i; ++j) {
      out.A[i - 1][j - 1] = scale * Rational(binomial(2 * i, i - j));
    }
  }
  out.Sigma.assign(k, std::vector<Rational>(k, Rational(0)));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      Rational s(0);
      for (std::size_t m = 0; m < k; ++m) s += out.A[a][m] * out.A[b][m];
      s /= 2;
      out.Sigma[a][b] = s;
      out.Sigma[b][a] = s;
    }
  }
  out.SigmaInv = invert_exact(out.Sigma);
  return out;
}

std::vector<std::vector<double>> MDCoefficients::sigma_d() const {
  std::vector<std::vector<double>> s(k, std::vector<double>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) s[a][b] = Sigma[a][b].get_d();
  return s;
}

double rate_Jk(const std::vector<double>& xbar) {
  const std::size_t k = xbar.size();
  if (k == 0) throw InvalidArgument("empty vector in rate_Jk");
  // Sigma_k's condition number grows like 4^{2k}, so the quadratic form is
  // evaluated through the exact inverse (a double is an exact rational).
  const MDCoefficients md = md_coefficients(k);
  std::vector<Rational> x;
  x.reserve(k);
  for (double v : xbar) x.emplace_back(v);
  Rational s(0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) s += x[i] * md.SigmaInv[i][j] * x[j];
  }
  s /= 2;
  return s.get_d();
}

void MeasureSpec::validate(double tol) const {
  double mass = 0.0;
  for (const auto& a : atoms.atoms) mass += a.w;
  if (density) {
    QuadratureOptions opts;
    opts.tol = tol;
    opts.singular_at = density_singular_at;
    mass += integrate_nu(density, opts);
  }
  if (std::abs(mass - 1.0) > tol) {
    throw DomainError("measure mass " + format_double(mass) + " is not 1");
  }
}

double reversed_kullback(const MeasureSpec& mu, double quad_tol) {
  if (!mu.density) return kInf;
  // Atoms are nu-null and do not contribute. A density that is nonpositive
  // on a set of positive measure shows up at the probe nodes.
  const QuadratureRule probe = nu_quadrature(512);
  for (double x : probe.nodes) {
    if (!(mu.density(x) > 0.0)) return kInf;
  }
  QuadratureOptions opts;
  opts.tol = quad_tol;
  opts.singular_at = mu.density_singular_at;
  return integrate_nu([&](double x) { return -std::log(mu.density(x)); }, opts);
}

DualSolution dual_Hk_maximize(const MomentVector& cvec, const DualOptions& opts) {
  if (classify(cvec) != Classification::interior) {
    throw DomainError("dual maximization needs an interior moment vector");
  }
  const std::vector<double> c = cvec.to_doubles();
  const std::size_t k = c.size();

  std::vector<double> lam(k + 1, 0.0);  // lam[0] = lambda_0, lam[1..k] = lambda
  DualSolution sol;
  sol.lambda.assign(k, 0.0);

  auto u_at = [&](const std::vector<double>& l, double x) {
    double u = l[k];
    for (std::size_t j = k; j-- > 1;) u = l[j] + x * u;  // Horner over lambda_1..k
    return 1.0 - l[0] - x * u;
  };
  auto value_of = [&](const std::vector<double>& l, const QuadratureRule& rule) {
    double mean_ln = 0.0;
    for (double x : rule.nodes) {
      const double u = u_at(l, x);
      if (!(u > 0.0)) return -kInf;
      mean_ln += std::log(u);
    }
    mean_ln /= static_cast<double>(rule.order);
    double v = l[0] + mean_ln;
    for (std::size_t j = 1; j <= k; ++j) v += l[j] * c[j - 1];
    return v;
  };

  double prev_value = -kInf;
  bool had_converged_round = false;
  for (std::size_t order = opts.initial_order;; order *= 2) {
    const QuadratureRule rule = nu_quadrature(order);
    // A finer rule exposes nodes closer to the endpoints where the current
    // iterate may violate positivity; the feasible set is convex and
    // contains the origin, so shrinking restores it.
    for (int shrink = 0; shrink < 200 && value_of(lam, rule) == -kInf; ++shrink) {
      for (auto& v : lam) v *= 0.5;
    }
    bool converged = false;
    for (std::size_t it = 0; it < opts.max_iter; ++it) {
      // Gradient and Hessian at the current iterate.
      std::vector<double> mom1(k + 1, 0.0);   // mean of x^j / u
      std::vector<double> mom2(2 * k + 1, 0.0);  // mean of x^m / u^2
      for (double x : rule.nodes) {
        const double u = u_at(lam, x);
        const double inv = 1.0 / u;
        const double inv2 = inv * inv;
        double px = 1.0;
        for (std::size_t j = 0; j <= k; ++j) {
          mom1[j] += px * inv;
          px *= x;
        }
        px = 1.0;
        for (std::size_t m = 0; m <= 2 * k; ++m) {
          mom2[m] += px * inv2;
          px *= x;
        }
      }
      const double inv_order = 1.0 / static_cast<double>(rule.order);
      for (auto& v : mom1) v *= inv_order;
      for (auto& v : mom2) v *= inv_order;

      std::vector<double> grad(k + 1);
      grad[0] = 1.0 - mom1[0];
      for (std::size_t j = 1; j <= k; ++j) grad[j] = c[j - 1] - mom1[j];
      double gnorm = 0.0;
      for (double g : grad) gnorm = std::max(gnorm, std::abs(g));
      sol.grad_norm = gnorm;
      if (gnorm <= opts.tol) {
        converged = true;
        break;
      }

      std::vector<std::vector<double>> hess(k + 1, std::vector<double>(k + 1));
      for (std::size_t a = 0; a <= k; ++a)
        for (std::size_t b = 0; b <= k; ++b) hess[a][b] = mom2[a + b];
      // The moment matrix can be numerically semidefinite when the optimal
      // polynomial pinches toward zero on [0,1]; a Levenberg bump keeps the
      // step an ascent direction.
      std::vector<double> step;
      double ridge = 0.0;
      for (;;) {
        try {
          std::vector<std::vector<double>> damped = hess;
          if (ridge > 0.0) {
            for (std::size_t a = 0; a <= k; ++a) damped[a][a] += ridge * (1.0 + hess[a][a]);
          }
          step = cholesky_solve(std::move(damped), grad);
          break;
        } catch (const DomainError&) {
          ridge = ridge == 0.0 ? 1e-14 : ridge * 1e3;
          if (ridge > 1.0) throw;
        }
      }

      const double base = value_of(lam, rule);
      double slope = 0.0;
      for (std::size_t j = 0; j <= k; ++j) slope += grad[j] * step[j];
      // At the optimum of the discretized problem the predicted increase
      // drops below double rounding; that is convergence, not a stall.
      if (slope <= 1e-14 * (1.0 + std::abs(base))) {
        converged = true;
        break;
      }
      double t = 1.0;
      bool moved = false;
      while (t >= 1e-14) {
        std::vector<double> cand(k + 1);
        for (std::size_t j = 0; j <= k; ++j) cand[j] = lam[j] + t * step[j];
        const double v = value_of(cand, rule);  // -inf when feasibility is lost
        if (v >= base + 1e-4 * t * slope) {
          lam = std::move(cand);
          moved = true;
          break;
        }
        t *= 0.5;
      }
      ++sol.iterations;
      if (!moved) {
        converged = true;  // no representable ascent left at this order
        break;
      }
    }
    sol.quadrature_order = order;
    const double v = value_of(lam, rule);
    if (!std::isfinite(v)) converged = false;
    if (converged && had_converged_round &&
        std::abs(v - prev_value) <= std::max(opts.tol, 1e-10)) {
      sol.value = v;
      break;
    }
    if (order >= opts.max_order) {
      if (!converged) {
        throw ConvergenceError("dual ascent exhausted its iterations (best value " +
                               format_double(v) + ", gradient norm " +
                               format_double(sol.grad_norm) + ")");
      }
      sol.value = v;
      break;
    }
    if (converged) {
      had_converged_round = true;
      prev_value = v;
    }
  }

  sol.lambda0 = lam[0];
  for (std::size_t j = 1; j <= k; ++j) sol.lambda[j - 1] = lam[j];
  return sol;
}

Scalar range_size(const MomentVector& c, bool check_dual) {
  const Classification cls = classify(c);
  if (cls == Classification::outside) {
    throw DomainError("range size of a vector outside the moment body");
  }
  if (cls == Classification::boundary) {
    return c.mode() == Mode::exact ? Scalar(Rational(0)) : Scalar(0.0);
  }
  const Scalar width = moment_range(c).width;
  if (check_dual) {
    const DualSolution dual = dual_Hk_maximize(c);
    const double lhs = std::log(width.to_double());
    const double rhs = -dual.value - static_cast<double>(c.size()) * kLn4;
    if (std::abs(lhs - rhs) > 1e-5) {
      throw DomainError("range width disagrees with the dual value: ln r = " +
                        format_double(lhs) + " vs " + format_double(rhs));
    }
  }
  return width;
}

double evaluate_polynomial(const std::vector<double>& coeffs, double x) {
  double v = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) v = coeffs[i] + x * v;
  return v;
}

PolynomialCaseResult polynomial_case_range(const std::vector<double>& poly_coeffs, std::size_t j,
                                           double norm_tol, double quad_tol) {
  if (poly_coeffs.empty()) throw InvalidArgument("empty polynomial");
  if (j == 0) throw InvalidArgument("moment count must be positive");
  for (int i = 0; i <= 4096; ++i) {
    const double x = static_cast<double>(i) / 4096.0;
    if (!(evaluate_polynomial(poly_coeffs, x) > 0.0)) {
      throw InvalidArgument("polynomial is not strictly positive on [0,1]");
    }
  }
  PolynomialCaseResult out;
  out.normalization =
      integrate_nu([&](double x) { return 1.0 / evaluate_polynomial(poly_coeffs, x); }, quad_tol);
  if (std::abs(out.normalization - 1.0) > norm_tol) {
    throw DomainError("polynomial is not normalized: int dnu/P = " +
                      format_double(out.normalization));
  }
  out.moments.resize(j);
  for (std::size_t i = 1; i <= j; ++i) {
    out.moments[i - 1] = integrate_nu(
        [&](double x) { return std::pow(x, static_cast<double>(i)) / evaluate_polynomial(poly_coeffs, x); },
        quad_tol);
  }
  out.kullback = integrate_nu(
      [&](double x) { return std::log(evaluate_polynomial(poly_coeffs, x)); }, quad_tol);
  out.predicted_width = std::exp(-static_cast<double>(j) * kLn4 - out.kullback);
  out.computed_width = moment_range(MomentVector::floating(out.moments)).width.to_double();
  return out;
}

TiltSolution tilt_limit(const std::function<double(double)>& f0, double tol) {
  TiltSolution out;

  // Locate the maximum of f0 on a dense grid, then refine by ternary search.
  const int grid = 8192;
  double best_x = 0.0, best_f = f0(0.0);
  for (int i = 1; i <= grid; ++i) {
    const double x = static_cast<double>(i) / grid;
    const double f = f0(x);
    if (f > best_f) {
      best_f = f;
      best_x = x;
    }
  }
  double lo = std::max(0.0, best_x - 1.0 / grid);
  double hi = std::min(1.0, best_x + 1.0 / grid);
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (f0(m1) < f0(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  out.x0 = 0.5 * (lo + hi);
  out.lambda_bar = std::max(best_f, f0(out.x0));

  bool maximizer_unique = true;
  for (int i = 0; i <= grid; ++i) {
    const double x = static_cast<double>(i) / grid;
    if (std::abs(x - out.x0) > 4.0 / grid && f0(x) >= out.lambda_bar - 1e-9) {
      maximizer_unique = false;
      break;
    }
  }

  const double quad_tol = std::min(tol, 1e-9);
  auto graded = [&](const std::function<double(double)>& f, bool detect_divergence) {
    QuadratureOptions q;
    q.tol = quad_tol;
    q.singular_at = out.x0;
    if (detect_divergence) q.divergence_bound = 1e8;
    return integrate_nu(f, q);
  };

  try {
    out.chi0 = graded([&](double x) { return 1.0 / (out.lambda_bar - f0(x)); }, true);
  } catch (const QuadratureError&) {
    if (!maximizer_unique) {
      throw DomainError("tilt limit with a non-unique maximizer of f0 is unsupported");
    }
    throw;
  }

  auto mass_at = [&](double lambda) {
    // Smooth for lambda > lambda_bar; fall back to the graded rule when the
    // pole creeps close to the interval.
    try {
      return integrate_nu([&](double x) { return 1.0 / (lambda - f0(x)); }, quad_tol);
    } catch (const QuadratureError&) {
      return graded([&](double x) { return 1.0 / (lambda - f0(x)); }, false);
    }
  };

  if (out.chi0 >= 1.0) {
    out.kind = TiltCase::absolutely_continuous;
    double a = out.lambda_bar;
    double b = out.lambda_bar + 1.0;
    while (mass_at(b) > 1.0) b = out.lambda_bar + 2.0 * (b - out.lambda_bar);
    for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
      const double mid = 0.5 * (a + b);
      if (mass_at(mid) > 1.0) {
        a = mid;
      } else {
        b = mid;
      }
    }
    out.lambda_star = 0.5 * (a + b);
    const double lambda = out.lambda_star;
    out.limit.density = [f0, lambda](double x) { return 1.0 / (lambda - f0(x)); };
    out.limit.density_singular_at = out.x0;
    out.f_limit = graded([&](double x) { return f0(x) / (lambda - f0(x)); }, false);
    out.i_limit = graded([&](double x) { return std::log(lambda - f0(x)); }, false);
  } else {
    if (!maximizer_unique) {
      throw DomainError("tilt limit with chi0 < 1 requires a unique maximizer of f0");
    }
    out.kind = TiltCase::atom_at_maximizer;
    out.atom_mass = 1.0 - out.chi0;
    const double lambda = out.lambda_bar;
    out.limit.density = [f0, lambda](double x) { return 1.0 / (lambda - f0(x)); };
    out.limit.density_singular_at = out.x0;
    out.limit.atoms.atoms.push_back({out.x0, out.atom_mass});
    out.f_limit = graded([&](double x) { return f0(x) / (lambda - f0(x)); }, false) +
                  out.lambda_bar * out.atom_mass;
    out.i_limit = graded([&](double x) { return std::log(lambda - f0(x)); }, false);
  }
  out.k_f = out.f_limit - out.i_limit;
  return out;
}

}  // namespace momentbody
