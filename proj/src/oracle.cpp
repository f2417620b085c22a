#include "wkam/oracle.hpp"

#include "wkam/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace wkam {

namespace {

std::vector<double> argmax_splits(const OracleSpec& o) {
    std::vector<double> splits;
    for (const auto& p : o.potential.argmax_points()) splits.push_back(p[0]);
    return splits;
}

// sqrt(2m(E - U(x))), clamped against roundoff at E = max U.
double momentum_at(const OracleSpec& o, double energy, double x) {
    double gap = energy - o.potential.value1(x);
    return std::sqrt(std::max(0.0, 2.0 * o.mass * gap));
}

} // namespace

OracleSpec OracleSpec::for_system(const SystemSpec& sys, double qtol, double rtol) {
    if (sys.dim() != 1)
        throw std::invalid_argument("OracleSpec: closed forms exist only for one degree of freedom");
    OracleSpec o;
    o.potential = sys.potential();
    o.mass = sys.mass();
    o.qtol = qtol;
    o.rtol = rtol;
    return o;
}

double c_star(const OracleSpec& o) {
    if (o.potential.is_zero()) return 0.0;
    double umax = o.potential.max_value();
    return integrate([&](double x) { return momentum_at(o, umax, x); }, 0.0, 1.0, o.qtol,
                     argmax_splits(o));
}

double c_plus(const OracleSpec& o, double energy) {
    double umax = o.potential.max_value();
    if (energy < umax - o.rtol)
        throw std::invalid_argument("c_plus: energy below the critical level max U");
    return integrate([&](double x) { return momentum_at(o, energy, x); }, 0.0, 1.0, o.qtol,
                     argmax_splits(o));
}

double e_plus(const OracleSpec& o, double c) {
    double cs = c_star(o);
    if (c < cs - o.rtol)
        throw std::invalid_argument("e_plus: c below c*, no rotating level exists");
    double umax = o.potential.max_value();
    double lo = umax;
    double hi = umax + (std::abs(c) + 1.0) * (std::abs(c) + 1.0) / (2.0 * o.mass);
    // superlinearity bounds c_plus(hi) > c; expand defensively anyway
    int guard = 0;
    while (c_plus(o, hi) < c) {
        hi = umax + 2.0 * (hi - umax) + 1.0;
        if (++guard > 60) throw std::runtime_error("e_plus: bracket expansion failed");
    }
    if (c <= cs + o.rtol) return umax;
    return bisect([&](double e) { return c_plus(o, e) - c; }, lo, hi, o.rtol);
}

double alpha_closed(const OracleSpec& o, double c) {
    double cs = c_star(o);
    double umax = o.potential.max_value();
    if (std::abs(c) <= cs) return umax;
    return e_plus(o, std::abs(c));
}

double rotation_number(const OracleSpec& o, double energy) {
    double umax = o.potential.max_value();
    if (energy <= umax + o.rtol)
        throw std::invalid_argument("rotation_number: energy level must be above max U");
    double period = integrate(
        [&](double x) { return 1.0 / std::sqrt(2.0 * (energy - o.potential.value1(x)) / o.mass); },
        0.0, 1.0, o.qtol, argmax_splits(o));
    return 1.0 / period;
}

std::vector<double> weak_kam_closed(const OracleSpec& o, double c, int nx) {
    double cs = c_star(o);
    if (std::abs(c) < cs - o.rtol)
        throw std::domain_error(
            "weak_kam_closed: |c| < c*, the solution is Lipschitz but not C1 and has no closed form");
    if (nx < 2) throw std::invalid_argument("weak_kam_closed: nx must be >= 2");
    double energy = alpha_closed(o, c);
    double sign = (c >= 0.0) ? 1.0 : -1.0;
    std::vector<double> du(std::size_t(nx));
    for (int i = 0; i < nx; ++i) {
        double x = double(i) / nx;
        du[std::size_t(i)] = sign * momentum_at(o, energy, x) - c;
    }
    return du;
}

std::vector<double> weak_kam_closed_values(const OracleSpec& o, double c, int nx) {
    double cs = c_star(o);
    if (std::abs(c) < cs - o.rtol)
        throw std::domain_error("weak_kam_closed_values: |c| < c*, no classical solution");
    if (nx < 2) throw std::invalid_argument("weak_kam_closed_values: nx must be >= 2");
    double energy = alpha_closed(o, c);
    double sign = (c >= 0.0) ? 1.0 : -1.0;
    auto du = [&](double x) { return sign * momentum_at(o, energy, x) - c; };
    auto splits = argmax_splits(o);
    std::vector<double> u(std::size_t(nx));
    u[0] = 0.0;
    for (int i = 1; i < nx; ++i) {
        double a = double(i - 1) / nx, b = double(i) / nx;
        u[std::size_t(i)] = u[std::size_t(i - 1)] + integrate(du, a, b, o.qtol, splits);
    }
    double umin = u[0];
    for (double v : u) umin = std::min(umin, v);
    for (double& v : u) v -= umin;
    return u;
}

PointClass classify_closed(const OracleSpec& o, double c) {
    double cs = c_star(o);
    if (cs <= o.rtol) return PointClass::Exposed; // strictly convex family
    if (std::abs(std::abs(c) - cs) <= o.rtol) return PointClass::ExtremeNotExposed;
    return (std::abs(c) < cs) ? PointClass::FlatInterior : PointClass::Exposed;
}

} // namespace wkam
