#include "momentbody/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>

#include "momentbody/errors.hpp"

namespace momentbody {

TridiagonalEigen symmetric_tridiagonal_eigen(const std::vector<double>& diag,
                                             const std::vector<double>& offdiag) {
  const std::size_t n = diag.size();
  if (n == 0) throw InvalidArgument("empty tridiagonal matrix");
  if (offdiag.size() + 1 != n) {
    throw InvalidArgument("offdiagonal must have one entry fewer than the diagonal");
  }
  for (double e : offdiag) {
    if (!(e > 0.0)) throw DomainError("tridiagonal off-diagonal entries must be strictly positive");
  }

  std::vector<double> d = diag;
  std::vector<double> e = offdiag;
  e.push_back(0.0);
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;

  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    for (int iter = 0;; ++iter) {
      if (iter >= 64) throw ConvergenceError("tridiagonal QL iteration did not converge");
      std::size_t m = l;
      while (m + 1 < n) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
        ++m;
      }
      if (m == l) break;

      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow_restart = false;
      for (std::size_t ii = m; ii-- > l;) {
        double f = s * e[ii];
        const double b = c * e[ii];
        r = std::hypot(f, g);
        e[ii + 1] = r;
        if (r == 0.0) {
          d[ii + 1] -= p;
          e[m] = 0.0;
          underflow_restart = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[ii + 1] - p;
        r = (d[ii] - g) * s + 2.0 * c * b;
        p = s * r;
        d[ii + 1] = g + p;
        g = c * r - b;

        f = z[ii + 1];
        z[ii + 1] = s * z[ii] + c * f;
        z[ii] = c * z[ii] - s * f;
      }
      if (underflow_restart) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  TridiagonalEigen out;
  out.values.reserve(n);
  out.first_component_sq.reserve(n);
  for (std::size_t idx : order) {
    out.values.push_back(d[idx]);
    out.first_component_sq.push_back(z[idx] * z[idx]);
  }
  return out;
}

}  // namespace momentbody
