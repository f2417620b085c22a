#pragma once

#include <functional>
#include <vector>

namespace wkam {

/// Adaptive Gauss-Kronrod (G7,K15) quadrature of f over [a,b].
/// `split_points` force panel boundaries, used to isolate the integrable
/// square-root singularities the action integrands develop at argmax U.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, const std::vector<double>& split_points = {});

/// Bisection root find on [lo, hi]; f(lo) and f(hi) must bracket a root.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol);

} // namespace wkam
