#pragma once

#include "wkam/dynamics.hpp"

#include <cstdint>
#include <vector>

namespace wkam {

/// Periodic grid samples of a candidate weak KAM solution at a fixed
/// cohomology class, together with the critical-value estimate the fixed
/// point iteration produced.
struct ValueFunction {
    int nx = 0;
    double c = 0.0;
    double alpha_estimate = 0.0;
    std::vector<double> samples;

    static ValueFunction constant(int nx, double c, double value = 0.0);
    double x(int i) const { return double(i) / double(nx); }
    double min() const;
    double max() const;
    /// Shift so min u = 0.
    void normalize();
};

/// One-step cost quadrature along the chord. Departure: L at the departure
/// node (first-order, the plain min-plus convolution). Midpoint and Simpson
/// sharpen the potential term; all three keep the step monotone because the
/// cost never depends on u.
enum class CostRule { Departure, Midpoint, Simpson };

struct SemigroupConfig {
    double tau = 0.0;     // 0: auto, window/(nx*vmax)
    int window = 0;       // 0: auto, nx/4
    double vmax = 4.0;    // velocity coverage used by the auto rules
    double span_tol = 1e-8;
    int max_iters = 300000;
    CostRule cost_rule = CostRule::Simpson;

    double resolved_tau(int nx) const;
    int resolved_window(int nx) const;
};

enum class SemigroupSign { Negative, Positive };

struct StepResult {
    ValueFunction u;
    bool window_boundary_hit = false; // some arg-opt landed on |offset| = W
};

/// One discrete Lax-Oleinik step. Negative sign:
///   u'(x_i) = min_{|j-i|<=W} [ u(x_j) + tau L(x_j, d/tau) - c d ],
/// d the nearest-lift displacement x_i - x_j; positive sign is the
/// max / minus-action mirror. Monotone and commutes with constants exactly.
StepResult lax_oleinik_step(const SystemSpec& sys, const ValueFunction& u, double c,
                            const SemigroupConfig& cfg, SemigroupSign sign);

struct FixedPointResult {
    ValueFunction u;
    double alpha_estimate = 0.0;
    int iterations = 0;
    double final_span = 0.0;
    bool converged = false;
    int window_used = 0;
};

/// Iterate the shifted semigroup until the increment has span <= span_tol.
/// The drift of the increments estimates alpha(c); the window grows (and is
/// reported) when an arg-opt presses against it.
FixedPointResult weak_kam_fixed_point(const SystemSpec& sys, double c, const SemigroupConfig& cfg,
                                      const ValueFunction& u0, SemigroupSign sign);

struct ConjugatePair {
    ValueFunction u_minus;
    ValueFunction u_plus;
    // after alignment min(u_minus - u_plus) = 0; gap per node:
    std::vector<double> gap;
};

/// Run the positive semigroup to its fixed point starting from a converged
/// negative solution and align constants so the pair touches (min gap = 0).
ConjugatePair conjugate_solution(const SystemSpec& sys, const FixedPointResult& minus_fp,
                                 double c, const SemigroupConfig& cfg);

/// Indices where the aligned pair coincides within eps_set. Never empty.
std::vector<int> coincidence_set(const ConjugatePair& pair, double eps_set);

struct AubryManeEstimate {
    std::vector<int> aubry; // intersection of coincidence sets over seeds
    std::vector<int> mane;  // union
    int seeds_used = 0;
    int seeds_failed = 0;
    double aubry_fraction = 0.0;
    double mane_fraction = 0.0;
    // spans of pairwise differences of the converged negative solutions;
    // near-zero entries mean the solution is unique up to constants
    double max_pairwise_span = 0.0;
};

/// Sample conjugate pairs from randomized smooth initial data (plus the
/// flat start) and return the union/intersection coincidence estimates of
/// the Mane and Aubry sets. Sampling approximates the pair family; it can
/// only overestimate the intersection.
AubryManeEstimate mane_aubry_estimates(const SystemSpec& sys, double c, const SemigroupConfig& cfg,
                                       int num_seeds, double eps_set, std::uint64_t rng_seed = 0);

/// max_i min over {left,right,centered} differences of
/// |H(x_i, c + Du_i) - alpha_estimate|; the min-over-stencils keeps genuine
/// viscosity kinks from registering as residual failures.
double hj_residual(const SystemSpec& sys, const ValueFunction& u, double c);

/// Centered-difference derivative samples of u.
std::vector<double> centered_derivative(const ValueFunction& u);

} // namespace wkam
