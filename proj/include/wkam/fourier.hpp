#pragma once

#include <array>
#include <vector>

namespace wkam {

/// Real trigonometric polynomial on the unit torus T^n (n = 1 or 2):
///   f(x) = sum_k [ a_k cos(2*pi*<k,x>) + b_k sin(2*pi*<k,x>) ].
/// Exactly periodic with closed-form derivatives, which is what the
/// potential machinery relies on throughout.
struct FourierSeries {
    struct Term {
        std::array<int, 2> k{0, 0};
        double cos_coeff = 0.0;
        double sin_coeff = 0.0;
    };

    int dim = 1;
    std::vector<Term> terms;

    FourierSeries() = default;
    explicit FourierSeries(int n) : dim(n) {}

    /// 1-d helper: constant + amplitude*cos(2*pi*k*x).
    static FourierSeries cosine1(double amplitude, int k = 1, double constant = 0.0);

    bool is_zero() const { return terms.empty(); }

    double value(const double* x) const;
    void gradient(const double* x, double* out) const;
    /// Hessian entry d^2 f / dx_a dx_b.
    double second_derivative(const double* x, int a, int b) const;

    // dim == 1 conveniences
    double value1(double x) const { return value(&x); }
    double derivative1(double x) const;

    /// Global maximum over the torus (dense sampling + Newton polish).
    double max_value() const;
    double min_value() const;
    /// Points attaining the maximum within tol, deduplicated to distinct
    /// torus locations.
    std::vector<std::array<double, 2>> argmax_points(double tol = 1e-9) const;
};

/// Reduce to [0, 1).
double wrap_unit(double x);
/// Reduce to [-1/2, 1/2): the nearest-lift displacement convention.
double wrap_signed(double x);

} // namespace wkam
