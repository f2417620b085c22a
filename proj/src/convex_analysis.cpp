#include "wkam/convex_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wkam {

const char* to_string(PointClass c) {
    switch (c) {
        case PointClass::FlatInterior: return "FlatInterior";
        case PointClass::ExtremeNotExposed: return "ExtremeNotExposed";
        case PointClass::Exposed: return "Exposed";
    }
    return "?";
}

const char* to_string(C0Verdict v) {
    switch (v) {
        case C0Verdict::Blocked: return "Blocked";
        case C0Verdict::Consistent: return "C0-consistent";
        case C0Verdict::FailsAt: return "Fails-at";
    }
    return "?";
}

ConvexProfile::ConvexProfile(std::vector<double> ts, std::vector<double> fs, double conv_tol)
    : ts_(std::move(ts)), fs_(std::move(fs)) {
    if (ts_.size() != fs_.size() || ts_.size() < 2)
        throw std::invalid_argument("ConvexProfile: need >= 2 matched samples");
    for (std::size_t i = 0; i + 1 < ts_.size(); ++i)
        if (!(ts_[i] < ts_[i + 1]))
            throw std::invalid_argument("ConvexProfile: sample parameters must be strictly increasing");
    for (std::size_t i = 1; i + 1 < ts_.size(); ++i) {
        if (interval_slope(i) - interval_slope(i - 1) < -conv_tol) {
            std::ostringstream msg;
            msg << "ConvexProfile: convexity violated at sample index " << i
                << " (slope drop " << interval_slope(i - 1) - interval_slope(i) << ")";
            throw std::invalid_argument(msg.str());
        }
    }
}

double ConvexProfile::interval_slope(std::size_t i) const {
    return (fs_[i + 1] - fs_[i]) / (ts_[i + 1] - ts_[i]);
}

double ConvexProfile::max_spacing() const {
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < ts_.size(); ++i) m = std::max(m, ts_[i + 1] - ts_[i]);
    return m;
}

std::size_t ConvexProfile::nearest_index(double t) const {
    auto it = std::lower_bound(ts_.begin(), ts_.end(), t);
    if (it == ts_.end()) return ts_.size() - 1;
    if (it == ts_.begin()) return 0;
    std::size_t hi = std::size_t(it - ts_.begin());
    return (t - ts_[hi - 1] <= ts_[hi] - t) ? hi - 1 : hi;
}

ConvexProfile discrete_conjugate(const ConvexProfile& p, const std::vector<double>& dual_grid) {
    if (dual_grid.size() < 2)
        throw std::invalid_argument("discrete_conjugate: dual grid needs >= 2 nodes");
    for (std::size_t i = 0; i + 1 < dual_grid.size(); ++i)
        if (!(dual_grid[i] < dual_grid[i + 1]))
            throw std::invalid_argument("discrete_conjugate: dual grid must be strictly increasing");

    const std::size_t n = p.size();
    std::vector<double> conj(dual_grid.size());
    std::size_t arg = 0; // argmax is nondecreasing along a sorted dual grid
    for (std::size_t j = 0; j < dual_grid.size(); ++j) {
        double s = dual_grid[j];
        while (arg + 1 < n && s * p.t(arg + 1) - p.f(arg + 1) >= s * p.t(arg) - p.f(arg)) ++arg;
        conj[j] = s * p.t(arg) - p.f(arg);
    }
    // A max of affine functions sampled anywhere is convex; conv_tol here
    // only absorbs roundoff.
    return ConvexProfile(dual_grid, std::move(conj), 1e-9);
}

ConvexProfile discrete_conjugate(const ConvexProfile& p) {
    std::vector<double> slopes;
    slopes.reserve(p.size() - 1);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        double s = p.interval_slope(i);
        if (slopes.empty() || s > slopes.back() + 1e-15) slopes.push_back(s);
    }
    if (slopes.size() < 2) {
        // affine data: conjugate is known only at the single slope; pad.
        double s = slopes.empty() ? 0.0 : slopes.front();
        slopes = {s - 1.0, s, s + 1.0};
        std::sort(slopes.begin(), slopes.end());
        slopes.erase(std::unique(slopes.begin(), slopes.end()), slopes.end());
    }
    return discrete_conjugate(p, slopes);
}

ConvexProfile biconjugate(const ConvexProfile& p) {
    ConvexProfile star = discrete_conjugate(p);
    return discrete_conjugate(star, p.ts());
}

namespace {

// One-sided slope at node i from the given side, Richardson-refined when a
// second chord is available on that side.
double one_sided_slope(const ConvexProfile& p, std::size_t i, bool left) {
    const auto& ts = p.ts();
    const auto& fs = p.fs();
    auto chord = [&](std::size_t a, std::size_t b) { return (fs[b] - fs[a]) / (ts[b] - ts[a]); };
    if (left) {
        double d1 = chord(i - 1, i);
        if (i >= 2) {
            double h1 = ts[i] - ts[i - 1], h2 = ts[i] - ts[i - 2];
            double d2 = chord(i - 2, i);
            return d1 + (d1 - d2) * h1 / (h2 - h1);
        }
        return d1;
    }
    double d1 = chord(i, i + 1);
    if (i + 2 < p.size()) {
        double h1 = ts[i + 1] - ts[i], h2 = ts[i + 2] - ts[i];
        double d2 = chord(i, i + 2);
        return d1 + (d1 - d2) * h1 / (h2 - h1);
    }
    return d1;
}

} // namespace

SubdifferentialInterval subdifferential_at(const ConvexProfile& p, double t) {
    if (t < p.t_min() - 1e-12 || t > p.t_max() + 1e-12)
        throw std::invalid_argument("subdifferential_at: t outside the sampled range");
    double snap = 1e-9 * (p.t_max() - p.t_min());
    std::size_t i = p.nearest_index(t);
    SubdifferentialInterval out;
    out.t = t;
    if (std::abs(p.t(i) - t) > snap) {
        // strictly between nodes: the sampled interpolant is affine there
        std::size_t j = (t > p.t(i)) ? i : i - 1;
        out.lo = out.hi = p.interval_slope(j);
        return out;
    }
    if (i == 0) {
        out.lo = out.hi = one_sided_slope(p, i, false);
        return out;
    }
    if (i + 1 == p.size()) {
        out.lo = out.hi = one_sided_slope(p, i, true);
        return out;
    }
    out.lo = one_sided_slope(p, i, true);
    out.hi = one_sided_slope(p, i, false);
    if (out.hi < out.lo) { // Richardson overshoot on smooth data
        double mid = 0.5 * (out.lo + out.hi);
        out.lo = out.hi = mid;
    }
    return out;
}

std::vector<FlatSegment> flat_segments(const ConvexProfile& p, double flat_tol) {
    if (!(flat_tol > 0.0)) throw std::invalid_argument("flat_segments: flat_tol must be positive");
    const std::size_t m = p.size() - 1; // interval count
    std::vector<FlatSegment> out;
    if (m < 2) return out;
    std::size_t i = 0;
    while (i < m) {
        // slopes are nondecreasing, so run spread = s_j - s_i
        std::size_t j = i;
        while (j + 1 < m && p.interval_slope(j + 1) - p.interval_slope(i) <= flat_tol) ++j;
        if (j > i) {
            // interior only: a run touching the boundary cannot be certified.
            // Runs shorter than 3 intervals are below detection resolution
            // (two near-equal shoulder slopes beside a genuine flat would
            // otherwise register as their own segment).
            if (i > 0 && j + 1 < m && j >= i + 2) {
                FlatSegment seg;
                seg.first = i;
                seg.last = j + 1;
                seg.t_begin = p.t(i);
                seg.t_end = p.t(j + 1);
                seg.slope = (p.f(j + 1) - p.f(i)) / (p.t(j + 1) - p.t(i));
                seg.constant = std::abs(seg.slope) <= flat_tol;
                out.push_back(seg);
            }
            i = j + 1;
        } else {
            ++i;
        }
    }
    return out;
}

PointClassification classify_point(const ConvexProfile& p, double t, double flat_tol) {
    std::size_t idx = p.nearest_index(t);
    if (idx < 2 || idx + 2 >= p.size())
        throw std::invalid_argument("classify_point: t too close to the scan boundary (need 2-sample margin)");
    PointClassification out;
    auto segs = flat_segments(p, flat_tol);
    for (const auto& seg : segs) {
        if (idx > seg.first && idx < seg.last) {
            out.cls = PointClass::FlatInterior;
            out.segment = seg;
            return out;
        }
        if (idx == seg.first || idx == seg.last) {
            out.cls = PointClass::ExtremeNotExposed;
            out.segment = seg;
            return out;
        }
    }
    out.cls = PointClass::Exposed;
    return out;
}

double default_slope_tol(const ConvexProfile& p) {
    double max_d3 = 0.0;
    const auto& fs = p.fs();
    for (std::size_t i = 0; i + 3 < fs.size(); ++i)
        max_d3 = std::max(max_d3, std::abs(fs[i + 3] - 3 * fs[i + 2] + 3 * fs[i + 1] - fs[i]));
    double tol = 5.0 * p.max_spacing() * max_d3;
    return std::max(tol, 1e-9);
}

DifferentiabilityReport differentiability_scan(const ConvexProfile& p, double slope_tol,
                                               double flat_tol) {
    DifferentiabilityReport rep;
    rep.slope_tol_used = slope_tol;
    rep.flat_tol_used = flat_tol;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        auto sd = subdifferential_at(p, p.t(i));
        NodeDifferentiability nd;
        nd.t = p.t(i);
        nd.width = sd.width();
        nd.differentiable = nd.width < slope_tol;
        if (!nd.differentiable) {
            rep.differentiable_everywhere = false;
            rep.kink_locations.push_back(nd.t);
        }
        rep.nodes.push_back(nd);
    }
    auto segs = flat_segments(p, flat_tol);
    rep.strictly_convex = segs.empty();

    // Cross-check against the conjugate: affine segments of the profile are
    // kinks of its conjugate of the same width. A finite sample conjugate is
    // polyhedral, so kinks below ~3 sample spacings are resolution noise.
    ConvexProfile star = discrete_conjugate(p);
    rep.dual_slope_tol_used = 3.0 * p.max_spacing();
    double widest_dual_kink = 0.0;
    double widest_dual_kink_at = 0.0;
    for (std::size_t i = 1; i + 1 < star.size(); ++i) {
        double w = star.interval_slope(i) - star.interval_slope(i - 1);
        if (w > widest_dual_kink) {
            widest_dual_kink = w;
            widest_dual_kink_at = star.t(i);
        }
    }
    bool conj_differentiable = widest_dual_kink <= rep.dual_slope_tol_used;
    rep.cross_check_passed = (rep.strictly_convex == conj_differentiable);
    std::ostringstream detail;
    detail << "strictly_convex=" << (rep.strictly_convex ? "yes" : "no")
           << " conjugate_differentiable=" << (conj_differentiable ? "yes" : "no")
           << " widest_conjugate_kink=" << widest_dual_kink << " at s=" << widest_dual_kink_at
           << " (dual tol " << rep.dual_slope_tol_used << ")";
    rep.cross_check_detail = detail.str();
    return rep;
}

GradientInverseReport gradient_inverse_check(const ConvexProfile& pa, const ConvexProfile& pb,
                                             double slope_tol) {
    GradientInverseReport rep;
    for (std::size_t i = 1; i + 1 < pa.size(); ++i) {
        auto sd = subdifferential_at(pa, pa.t(i));
        if (sd.width() >= slope_tol) {
            ++rep.skipped_kink;
            continue;
        }
        double h = 0.5 * (sd.lo + sd.hi);
        if (h <= pb.t_min() || h >= pb.t_max()) {
            ++rep.skipped_range;
            continue;
        }
        auto back = subdifferential_at(pb, h);
        double c_back = 0.5 * (back.lo + back.hi);
        rep.max_deviation = std::max(rep.max_deviation, std::abs(c_back - pa.t(i)));
        ++rep.tested;
    }
    return rep;
}

std::vector<std::size_t> kink_indices(const std::vector<double>& ts, const std::vector<double>& fs,
                                      double slope_tol) {
    if (ts.size() != fs.size() || ts.size() < 3)
        throw std::invalid_argument("kink_indices: need >= 3 matched samples");
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
        double sl = (fs[i] - fs[i - 1]) / (ts[i] - ts[i - 1]);
        double sr = (fs[i + 1] - fs[i]) / (ts[i + 1] - ts[i]);
        if (std::abs(sr - sl) > slope_tol) out.push_back(i);
    }
    return out;
}

C0Report c0_report(int dim, int b1, const std::vector<std::pair<double, double>>& aubry_fullness,
                   double fullness_threshold) {
    if (aubry_fullness.empty())
        throw std::invalid_argument("c0_report: need at least one scanned class");
    C0Report rep;
    rep.fullness_threshold = fullness_threshold;
    if (b1 != dim) {
        rep.verdict = C0Verdict::Blocked;
        std::ostringstream d;
        d << "dim H^1 = " << b1 << " differs from dim M = " << dim
          << "; no foliation of T*M by invariant graphs can exist";
        rep.detail = d.str();
        return rep;
    }
    for (const auto& [c, fullness] : aubry_fullness)
        if (fullness < fullness_threshold) rep.failing_classes.push_back(c);
    if (rep.failing_classes.empty()) {
        rep.verdict = C0Verdict::Consistent;
        rep.detail = "projected Aubry set covers the base at every scanned class";
    } else {
        rep.verdict = C0Verdict::FailsAt;
        std::ostringstream d;
        d << rep.failing_classes.size() << " scanned class(es) with deficient projected Aubry set";
        rep.detail = d.str();
    }
    return rep;
}

} // namespace wkam
