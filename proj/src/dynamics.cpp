#include "wkam/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace wkam {

SystemSpec::SystemSpec(int dim, double mass, FourierSeries potential)
    : dim_(dim), mass_(mass), potential_(std::move(potential)) {
    if (dim_ != 1 && dim_ != 2)
        throw std::invalid_argument("SystemSpec: dimension must be 1 or 2");
    if (!(mass_ > 0.0))
        throw std::invalid_argument("SystemSpec: kinetic coefficient must be positive");
    if (potential_.dim != dim_)
        throw std::invalid_argument("SystemSpec: potential dimension mismatch");
    max_u_ = potential_.max_value();
    min_u_ = potential_.min_value();
    if (!std::isfinite(max_u_) || !std::isfinite(min_u_))
        throw std::invalid_argument("SystemSpec: potential is not finite");
}

double SystemSpec::lagrangian(const double* x, const double* v) const {
    double k = 0.0;
    for (int a = 0; a < dim_; ++a) k += v[a] * v[a];
    return 0.5 * mass_ * k - potential_.value(x);
}

double SystemSpec::hamiltonian(const double* x, const double* p) const {
    double k = 0.0;
    for (int a = 0; a < dim_; ++a) k += p[a] * p[a];
    return 0.5 * k / mass_ + potential_.value(x);
}

std::array<double, 2> Trajectory::cover_position(std::size_t s) const {
    std::array<double, 2> out{0.0, 0.0};
    for (int a = 0; a < dim; ++a) out[a] = samples[s].x[a] + double(lifts[s][a]);
    return out;
}

double eval_energy(const SystemSpec& sys, const PhasePoint& pt) {
    if (pt.chart != Chart::Tangent)
        throw std::invalid_argument("eval_energy: expected a tangent-chart point");
    double k = 0.0;
    for (int a = 0; a < sys.dim(); ++a) k += pt.vp[a] * pt.vp[a];
    return 0.5 * sys.mass() * k + sys.potential_at(pt.x.data());
}

PhasePoint legendre_point(const SystemSpec& sys, const PhasePoint& pt) {
    PhasePoint out = pt;
    if (pt.chart == Chart::Tangent) {
        out.chart = Chart::Cotangent;
        for (int a = 0; a < sys.dim(); ++a) out.vp[a] = sys.mass() * pt.vp[a];
    } else {
        out.chart = Chart::Tangent;
        for (int a = 0; a < sys.dim(); ++a) out.vp[a] = pt.vp[a] / sys.mass();
    }
    return out;
}

Trajectory integrate_flow(const SystemSpec& sys, const PhasePoint& start, double dt, int steps) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_flow: dt must be positive");
    if (steps < 1) throw std::invalid_argument("integrate_flow: steps must be >= 1");
    PhasePoint s0 = start.chart == Chart::Tangent ? start : legendre_point(sys, start);

    // CFL-style guard: bound |v| along the orbit via energy conservation.
    double e0 = eval_energy(sys, s0);
    double vbound = std::sqrt(std::max(0.0, 2.0 * (e0 - sys.min_potential()) / sys.mass()));
    if (dt * vbound > 0.5)
        throw std::invalid_argument("integrate_flow: dt*|v| exceeds 0.5, step would alias on the torus");

    const int n = sys.dim();
    Trajectory traj;
    traj.dim = n;
    traj.dt = dt;
    traj.samples.reserve(std::size_t(steps) + 1);
    traj.lifts.reserve(std::size_t(steps) + 1);

    double x[2] = {s0.x[0], s0.x[1]};
    double v[2] = {s0.vp[0], s0.vp[1]};
    std::array<int, 2> lift{0, 0};
    double g[2] = {0.0, 0.0};
    sys.potential_gradient(x, g);
    double a[2] = {-g[0] / sys.mass(), -g[1] / sys.mass()};

    auto push = [&]() {
        Trajectory::Sample smp;
        smp.x = {x[0], x[1]};
        smp.v = {v[0], v[1]};
        traj.samples.push_back(smp);
        traj.lifts.push_back(lift);
    };
    push();

    for (int step = 0; step < steps; ++step) {
        for (int c = 0; c < n; ++c) {
            double xn = x[c] + v[c] * dt + 0.5 * a[c] * dt * dt;
            double wrapped = wrap_unit(xn);
            lift[c] += int(std::lround(xn - wrapped));
            x[c] = wrapped;
        }
        sys.potential_gradient(x, g);
        for (int c = 0; c < n; ++c) {
            double an = -g[c] / sys.mass();
            v[c] += 0.5 * (a[c] + an) * dt;
            a[c] = an;
        }
        push();
    }
    return traj;
}

std::array<double, 2> birkhoff_rotation(const Trajectory& traj) {
    if (traj.samples.size() < 2)
        throw std::invalid_argument("birkhoff_rotation: empty trajectory");
    double T = traj.total_time();
    if (T < 1.0)
        throw std::invalid_argument("birkhoff_rotation: total time must be >= 1");
    auto first = traj.cover_position(0);
    auto last = traj.cover_position(traj.samples.size() - 1);
    std::array<double, 2> rho{0.0, 0.0};
    for (int a = 0; a < traj.dim; ++a) rho[a] = (last[a] - first[a]) / T;
    return rho;
}

Trajectory reversed(const Trajectory& traj) {
    Trajectory out;
    out.dim = traj.dim;
    out.dt = traj.dt;
    std::size_t n = traj.samples.size();
    out.samples.resize(n);
    out.lifts.resize(n);
    auto end_lift = traj.winding();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = traj.samples[n - 1 - i];
        out.samples[i].x = s.x;
        for (int a = 0; a < traj.dim; ++a) {
            out.samples[i].v[a] = -s.v[a];
            out.lifts[i][a] = traj.lifts[n - 1 - i][a] - end_lift[a];
        }
    }
    return out;
}

} // namespace wkam
