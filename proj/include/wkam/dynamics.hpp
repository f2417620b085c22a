#pragma once

#include "wkam/fourier.hpp"

#include <array>
#include <vector>

namespace wkam {

/// Mechanical system on the flat torus T^n (n = 1 or 2):
///   L(x,v) = m|v|^2/2 - U(x),   H(x,p) = |p|^2/(2m) + U(x).
/// Immutable after construction; safe to share across workers.
class SystemSpec {
  public:
    SystemSpec(int dim, double mass, FourierSeries potential);

    int dim() const { return dim_; }
    double mass() const { return mass_; }
    const FourierSeries& potential() const { return potential_; }

    double potential_at(const double* x) const { return potential_.value(x); }
    double potential_at1(double x) const { return potential_.value1(x); }
    void potential_gradient(const double* x, double* out) const { potential_.gradient(x, out); }

    double lagrangian(const double* x, const double* v) const;
    double hamiltonian(const double* x, const double* p) const;

    double max_potential() const { return max_u_; }
    double min_potential() const { return min_u_; }

  private:
    int dim_;
    double mass_;
    FourierSeries potential_;
    double max_u_;
    double min_u_;
};

enum class Chart { Tangent, Cotangent };

/// Point of TM or T*M; `vp` holds the velocity or the momentum depending on
/// the chart flag. Positions are kept reduced to [0,1).
struct PhasePoint {
    Chart chart = Chart::Tangent;
    std::array<double, 2> x{0.0, 0.0};
    std::array<double, 2> vp{0.0, 0.0};

    static PhasePoint tangent1(double x, double v) { return {Chart::Tangent, {wrap_unit(x), 0.0}, {v, 0.0}}; }
    static PhasePoint cotangent1(double x, double p) { return {Chart::Cotangent, {wrap_unit(x), 0.0}, {p, 0.0}}; }
};

/// Discrete orbit of the Euler-Lagrange flow. Positions are stored reduced,
/// with the accumulated integer lift kept separately so winding (homology)
/// data survives the mod-1 reduction.
struct Trajectory {
    int dim = 1;
    double dt = 0.0;
    struct Sample {
        std::array<double, 2> x;
        std::array<double, 2> v;
    };
    std::vector<Sample> samples;
    std::vector<std::array<int, 2>> lifts; // per-sample accumulated winding

    double total_time() const { return dt * double(samples.size() - 1); }
    std::array<int, 2> winding() const { return lifts.empty() ? std::array<int, 2>{0, 0} : lifts.back(); }
    /// Position in the universal cover at sample s.
    std::array<double, 2> cover_position(std::size_t s) const;
};

/// E(x,v) = <dL/dv, v> - L = m|v|^2/2 + U(x). Requires the tangent chart.
double eval_energy(const SystemSpec& sys, const PhasePoint& pt);

/// Legendre transform between charts: p = m v, v = p/m. Involution.
PhasePoint legendre_point(const SystemSpec& sys, const PhasePoint& pt);

/// Velocity-Verlet (leapfrog) integration of m*xdd = -grad U.
/// Rejects steps coarse enough to alias on the torus (dt*|v|_max > 0.5).
Trajectory integrate_flow(const SystemSpec& sys, const PhasePoint& start, double dt, int steps);

/// Empirical rotation vector: cover displacement / total time.
/// Requires total time >= 1 and a nonempty trajectory.
std::array<double, 2> birkhoff_rotation(const Trajectory& traj);

/// Time-reversed orbit (v -> -v); birkhoff_rotation negates under this.
Trajectory reversed(const Trajectory& traj);

} // namespace wkam
