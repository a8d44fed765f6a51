#pragma once

#include <vector>

namespace momentbody {

struct TridiagonalEigen {
  std::vector<double> values;              // ascending
  std::vector<double> first_component_sq;  // squared first entries of the
                                           // normalized eigenvectors
};

// Eigendecomposition of a symmetric tridiagonal matrix, returning each
// eigenvalue together with the squared first component of its normalized
// eigenvector (all that Gauss-type quadrature extraction needs). QL with
// implicit shifts; only a first-row vector is rotated, not the full matrix.
// Off-diagonal entries must be strictly positive (simple spectrum).
TridiagonalEigen symmetric_tridiagonal_eigen(const std::vector<double>& diag,
                                             const std::vector<double>& offdiag);

}  // namespace momentbody
