#include "momentbody/principal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "momentbody/tridiag.hpp"

namespace momentbody {

double DiscreteMeasure::total_weight() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.w;
  return s;
}

double DiscreteMeasure::moment(std::size_t k) const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.w * std::pow(a.x, static_cast<double>(k));
  return s;
}

std::vector<double> DiscreteMeasure::moments(std::size_t n) const {
  std::vector<double> out(n, 0.0);
  for (const auto& a : atoms) {
    double power = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      power *= a.x;
      out[k] += a.w * power;
    }
  }
  return out;
}

double DiscreteMeasure::cdf(double x) const {
  double s = 0.0;
  for (const auto& a : atoms) {
    if (a.x <= x) s += a.w;
  }
  return s;
}

void DiscreteMeasure::validate(double weight_tol) const {
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!(atoms[i].w > 0.0)) throw DomainError("discrete measure has a nonpositive weight");
    if (atoms[i].x < 0.0 || atoms[i].x > 1.0) {
      throw DomainError("discrete measure atom outside [0,1]");
    }
    if (i > 0 && !(atoms[i].x > atoms[i - 1].x)) {
      throw DomainError("discrete measure atoms are not strictly increasing");
    }
  }
  if (std::abs(total_weight() - 1.0) > weight_tol) {
    throw DomainError("discrete measure weights do not sum to 1");
  }
}

MomentVector measure_moments(const DiscreteMeasure& mu, std::size_t n) {
  return MomentVector::floating(mu.moments(n));
}

RecurrenceCoefficients RecurrenceCoefficients::from_canonical(const std::vector<double>& p) {
  RecurrenceCoefficients rec;
  const std::size_t len = p.size();
  const std::size_t max_dim = len / 2 + 2;
  // zeta_k for k = 1 .. 2*max_dim, zero past the end of p.
  rec.zeta.assign(2 * max_dim + 1, 0.0);
  for (std::size_t k = 1; k <= std::min(len, 2 * max_dim); ++k) {
    rec.zeta[k] = (k == 1 ? 1.0 : 1.0 - p[k - 2]) * p[k - 1];
  }
  rec.diag.push_back(rec.zeta[1]);
  for (std::size_t j = 1; j < max_dim; ++j) {
    const double beta = rec.zeta[2 * j - 1] * rec.zeta[2 * j];
    if (!(beta > 0.0)) break;  // measure has exactly j atoms
    rec.offdiag.push_back(std::sqrt(beta));
    rec.diag.push_back(rec.zeta[2 * j] + rec.zeta[2 * j + 1]);
  }
  return rec;
}

namespace {

DiscreteMeasure build_and_verify(std::vector<double> p, std::size_t n_moments,
                                 const char* side_name, double tol) {
  const RecurrenceCoefficients rec = RecurrenceCoefficients::from_canonical(p);
  const TridiagonalEigen eig = symmetric_tridiagonal_eigen(rec.diag, rec.offdiag);

  DiscreteMeasure mu;
  mu.atoms.reserve(eig.values.size());
  for (std::size_t i = 0; i < eig.values.size(); ++i) {
    double x = eig.values[i];
    if (x < -1e-9 || x > 1.0 + 1e-9) {
      throw ConstructionError(std::string("principal representation (") + side_name +
                              "): spectrum left [0,1]");
    }
    x = std::min(1.0, std::max(0.0, x));
    mu.atoms.push_back({x, eig.first_component_sq[i]});
  }

  // Verify the contract the construction promises: the measure reproduces
  // the prescribed moments and attains the extremal next moment.
  const std::vector<double> target = detail::moments_from_canonical(p, n_moments);
  const std::vector<double> got = mu.moments(n_moments);
  double worst = std::abs(mu.total_weight() - 1.0);
  for (std::size_t k = 0; k < n_moments; ++k) {
    worst = std::max(worst, std::abs(got[k] - target[k]));
  }
  if (!(worst <= tol)) {
    throw ConstructionError(std::string("principal representation (") + side_name +
                            ") failed its moment-match check: max deviation " +
                            format_double(worst));
  }
  return mu;
}

}  // namespace

DiscreteMeasure principal_representation_from_canonical(std::vector<double> p, Side side,
                                                        double moment_match_tol) {
  for (double pi : p) {
    if (!(pi > 0.0 && pi < 1.0)) {
      throw InvalidArgument("canonical entries must lie strictly inside (0,1)");
    }
  }
  const std::size_t n = p.size();
  p.push_back(side == Side::upper ? 1.0 : 0.0);
  return build_and_verify(std::move(p), n + 1, side == Side::upper ? "upper" : "lower",
                          moment_match_tol);
}

DiscreteMeasure principal_representation(const MomentVector& c, Side side,
                                         double moment_match_tol) {
  const CanonicalVector p = moments_to_canonical(c);  // rejects non-interior input
  return principal_representation_from_canonical(p.to_doubles(), side, moment_match_tol);
}

DiscreteMeasure sigma_plus_of_sample(const MomentVector& c) {
  return principal_representation(c, Side::upper);
}

}  // namespace momentbody
