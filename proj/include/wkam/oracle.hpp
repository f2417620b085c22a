#pragma once

#include "wkam/convex_analysis.hpp"
#include "wkam/dynamics.hpp"
#include "wkam/fourier.hpp"

#include <vector>

namespace wkam {

/// Closed-form reference for the one-degree-of-freedom mechanical family
/// H(x,p) = p^2/(2m) + U(x) on the circle. Everything here reduces to
/// quadrature of sqrt(2m(E - U)) and inversion of its energy dependence,
/// so it is independent of the LP / semigroup / graph engines and serves
/// as their ground truth.
struct OracleSpec {
    FourierSeries potential; // dim == 1
    double mass = 1.0;
    double qtol = 1e-10; // quadrature tolerance
    double rtol = 1e-10; // root-find tolerance

    static OracleSpec for_system(const SystemSpec& sys, double qtol = 1e-10, double rtol = 1e-10);
};

/// c*(U) = integral of sqrt(2m(max U - U)) over the circle. Zero iff U is
/// constant.
double c_star(const OracleSpec& o);

/// c+(E) = integral of sqrt(2m(E - U)), strictly increasing for E >= max U.
double c_plus(const OracleSpec& o, double energy);

/// Inverse of c_plus by bisection; defined for c >= c*(U).
double e_plus(const OracleSpec& o, double c);

/// Piecewise alpha: the critical value max U on [-c*, c*], E^{+/-}(c) outside.
/// Continuous, convex, C1, and even for even U.
double alpha_closed(const OracleSpec& o, double c);

/// Rotation number of the energy-E level orbit (E > max U):
/// 1 / integral of dx / sqrt(2(E - U)/m). Equals d alpha/dc at c = c_plus(E).
double rotation_number(const OracleSpec& o, double energy);

/// Derivative samples du(x_i), x_i = i/nx, of the classical solution of
/// H(x, c + u') = alpha(c). Only defined for |c| >= c*; inside the flat
/// segment the solution is Lipschitz but not C1 and the oracle refuses.
std::vector<double> weak_kam_closed(const OracleSpec& o, double c, int nx);

/// Values u(x_i) of the same solution, normalized to min u = 0; each cell
/// increment is quadrature-accurate rather than a trapezoid of samples.
std::vector<double> weak_kam_closed_values(const OracleSpec& o, double c, int nx);

/// |c| < c* -> FlatInterior, |c| = c* (within rtol) -> ExtremeNotExposed,
/// |c| > c* -> Exposed. When c* = 0 every class is Exposed.
PointClass classify_closed(const OracleSpec& o, double c);

} // namespace wkam
