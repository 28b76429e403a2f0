#pragma once

#include <functional>
#include <span>

namespace grover_qa {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // summed local error estimates
  double l1 = 0.0;     // integral of |f|, the scale the tolerance refers to
};

/// Adaptive Gauss-Kronrod (7/15) quadrature over [a, b], split a priori at
/// every breakpoint strictly inside (a, b). Throws NumericalError when the
/// summed error estimate exceeds rel_tol * l1.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, std::span<const double> breakpoints,
                           double rel_tol);

inline QuadratureResult integrate(const std::function<double(double)>& f,
                                  double a, double b, double rel_tol) {
  return integrate(f, a, b, {}, rel_tol);
}

}  // namespace grover_qa
