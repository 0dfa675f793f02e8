#pragma once

#include <functional>

#include "dytwist/types.hpp"

namespace dytwist::detail {

struct QuadratureResult {
  Complex value{0.0, 0.0};
  double error = 0.0;
  /// Integral of |f|, used to put a floor under the tolerance.
  double l1 = 0.0;
  int panels = 0;
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of a complex function
/// over [a, b]. The interval is first split geometrically (ratio 2), which
/// suits integrands with 1/t^k behaviour near a small left end point.
/// Panels are bisected worst-first until the summed error estimate is below
/// max(abs_tol, 64 eps * l1) or max_panels is reached.
QuadratureResult integrate_adaptive(const std::function<Complex(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_panels);

}  // namespace dytwist::detail
