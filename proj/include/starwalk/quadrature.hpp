// SPDX-License-Identifier: MIT
#pragma once

#include <functional>

namespace starwalk {

/// Tolerances shared by all quadrature-backed routines.  `abs_tol` is the
/// requested absolute error; nested (integral-inside-integral) uses typically
/// relax it to ~1e-8 for the inner call.
struct QuadratureConfig {
  double abs_tol = 1e-10;
  int max_subdiv = 2000;
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;  ///< estimated, from Gauss/Kronrod differences
  int subdivisions = 0;
  bool converged = true;
};

/// Adaptive 15-point Gauss--Kronrod quadrature on the finite interval [a,b].
/// Bisects the subinterval with the largest error estimate until the summed
/// estimate drops below `cfg.abs_tol` or `cfg.max_subdiv` splits have been
/// spent (then `converged` is false and the best value is returned).
QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, const QuadratureConfig& cfg = {});

/// Integral over [a, infinity) for integrands with (at least) exponential
/// decay: exponentially growing windows [a, a+1], [a+1, a+3], ... are added
/// until two consecutive windows contribute less than abs_tol/10 each.
QuadResult integrate_halfline(const std::function<double(double)>& f, double a,
                              const QuadratureConfig& cfg = {});

}  // namespace starwalk
