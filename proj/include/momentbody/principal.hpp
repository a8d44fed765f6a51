#pragma once

#include <cstddef>
#include <vector>

#include "momentbody/moment_core.hpp"

namespace momentbody {

// Finitely many atoms with positive weights summing to 1. Float-only: atom
// locations are eigenvalues and are not representable exactly.
struct DiscreteMeasure {
  struct Atom {
    double x;
    double w;
  };
  std::vector<Atom> atoms;  // locations strictly increasing

  double total_weight() const;
  double moment(std::size_t k) const;
  std::vector<double> moments(std::size_t n) const;  // c_1..c_n
  double cdf(double x) const;
  void validate(double weight_tol = 1e-12) const;
};

MomentVector measure_moments(const DiscreteMeasure& mu, std::size_t n);

enum class Side { lower, upper };

// Jacobi-type recurrence induced by a canonical sequence (terminal 0/1
// entries allowed): zeta_k = (1 - p_{k-1}) p_k, diagonal
// zeta_{2j} + zeta_{2j+1}, off-diagonal sqrt(zeta_{2j-1} zeta_{2j}),
// truncated at the first vanishing product (the measure is finite there).
struct RecurrenceCoefficients {
  std::vector<double> zeta;
  std::vector<double> diag;
  std::vector<double> offdiag;

  static RecurrenceCoefficients from_canonical(const std::vector<double>& p);
};

// The measure matching the n moments of c whose (n+1)th moment attains
// c^+ (upper) or c^- (lower). Route: canonical coordinates, terminal 0/1,
// recurrence, tridiagonal eigenproblem. The atom/endpoint structure is read
// off the computed spectrum, never assumed; the construction is verified
// against its own moment contract and throws ConstructionError on mismatch.
DiscreteMeasure principal_representation(const MomentVector& c, Side side,
                                         double moment_match_tol = 1e-8);

// Same construction when the canonical coordinates are already in hand (the
// sampler produces them; at large n the moment vector itself cannot carry
// the prefix information in doubles).
DiscreteMeasure principal_representation_from_canonical(std::vector<double> p, Side side,
                                                        double moment_match_tol = 1e-8);

// Alias for the upper construction: realizes the random measure attached to
// a sampled moment point.
DiscreteMeasure sigma_plus_of_sample(const MomentVector& c);

}  // namespace momentbody
