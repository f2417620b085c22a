#include "wkam/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wkam {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double wrap_unit(double x) {
    double r = x - std::floor(x);
    // floor can land exactly on 1.0 for tiny negative x
    if (r >= 1.0) r -= 1.0;
    return r;
}

double wrap_signed(double x) {
    double r = x - std::round(x);
    if (r < -0.5) r += 1.0;
    if (r >= 0.5) r -= 1.0;
    return r;
}

FourierSeries FourierSeries::cosine1(double amplitude, int k, double constant) {
    FourierSeries f(1);
    if (constant != 0.0) f.terms.push_back({{0, 0}, constant, 0.0});
    f.terms.push_back({{k, 0}, amplitude, 0.0});
    return f;
}

double FourierSeries::value(const double* x) const {
    double s = 0.0;
    for (const Term& t : terms) {
        double phase = kTwoPi * (t.k[0] * x[0] + (dim > 1 ? t.k[1] * x[1] : 0.0));
        s += t.cos_coeff * std::cos(phase) + t.sin_coeff * std::sin(phase);
    }
    return s;
}

void FourierSeries::gradient(const double* x, double* out) const {
    for (int a = 0; a < dim; ++a) out[a] = 0.0;
    for (const Term& t : terms) {
        double phase = kTwoPi * (t.k[0] * x[0] + (dim > 1 ? t.k[1] * x[1] : 0.0));
        double d = -t.cos_coeff * std::sin(phase) + t.sin_coeff * std::cos(phase);
        for (int a = 0; a < dim; ++a) out[a] += kTwoPi * t.k[a] * d;
    }
}

double FourierSeries::second_derivative(const double* x, int a, int b) const {
    double s = 0.0;
    for (const Term& t : terms) {
        double phase = kTwoPi * (t.k[0] * x[0] + (dim > 1 ? t.k[1] * x[1] : 0.0));
        double d2 = -t.cos_coeff * std::cos(phase) - t.sin_coeff * std::sin(phase);
        s += kTwoPi * kTwoPi * t.k[a] * t.k[b] * d2;
    }
    return s;
}

double FourierSeries::derivative1(double x) const {
    double g;
    gradient(&x, &g);
    return g;
}

namespace {

// Newton polish of a 1-d critical point of f near x0.
double polish_max_1d(const FourierSeries& f, double x0) {
    double x = x0;
    for (int it = 0; it < 30; ++it) {
        double d1 = f.derivative1(x);
        double d2 = f.second_derivative(&x, 0, 0);
        if (std::abs(d2) < 1e-14) break;
        double step = d1 / d2;
        if (std::abs(step) > 0.01) step = std::copysign(0.01, step);
        x -= step;
        if (std::abs(d1) < 1e-15) break;
    }
    return wrap_unit(x);
}

} // namespace

double FourierSeries::max_value() const {
    auto pts = argmax_points();
    if (pts.empty()) return 0.0;
    return value(pts.front().data());
}

double FourierSeries::min_value() const {
    FourierSeries neg = *this;
    for (Term& t : neg.terms) {
        t.cos_coeff = -t.cos_coeff;
        t.sin_coeff = -t.sin_coeff;
    }
    return -neg.max_value();
}

std::vector<std::array<double, 2>> FourierSeries::argmax_points(double tol) const {
    std::vector<std::array<double, 2>> out;
    if (terms.empty()) {
        out.push_back({0.0, 0.0});
        return out;
    }
    if (dim == 1) {
        const int N = 4096;
        double best = -1e300;
        std::vector<double> vals(N);
        for (int i = 0; i < N; ++i) {
            double x = double(i) / N;
            vals[i] = value1(x);
            best = std::max(best, vals[i]);
        }
        // Polish every local max near the global level, then dedupe.
        std::vector<double> cands;
        for (int i = 0; i < N; ++i) {
            double prev = vals[(i + N - 1) % N], next = vals[(i + 1) % N];
            if (vals[i] >= prev && vals[i] >= next && vals[i] > best - 1e-6)
                cands.push_back(polish_max_1d(*this, double(i) / N));
        }
        double polished_best = -1e300;
        for (double x : cands) polished_best = std::max(polished_best, value1(x));
        std::sort(cands.begin(), cands.end());
        for (double x : cands) {
            if (value1(x) < polished_best - tol) continue;
            bool dup = false;
            for (auto& p : out)
                if (std::abs(wrap_signed(x - p[0])) < 1e-7) dup = true;
            if (!dup) out.push_back({x, 0.0});
        }
        return out;
    }
    // dim == 2: sampled grid with a few gradient-ascent polish steps.
    const int N = 256;
    double best = -1e300;
    std::array<double, 2> bx{0, 0};
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            double x[2] = {double(i) / N, double(j) / N};
            double v = value(x);
            if (v > best) {
                best = v;
                bx = {x[0], x[1]};
            }
        }
    double x[2] = {bx[0], bx[1]};
    for (int it = 0; it < 200; ++it) {
        double g[2];
        gradient(x, g);
        double step = 1e-3;
        double cand[2] = {x[0] + step * g[0], x[1] + step * g[1]};
        if (value(cand) <= value(x)) break;
        x[0] = cand[0];
        x[1] = cand[1];
    }
    out.push_back({wrap_unit(x[0]), wrap_unit(x[1])});
    return out;
}

} // namespace wkam
