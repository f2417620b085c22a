#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace wkam {

/// Classification of a parameter point of a sampled convex function.
/// FlatInterior: interior of a maximal affine segment. ExtremeNotExposed:
/// endpoint of one. Exposed: on no affine segment at all.
enum class PointClass { FlatInterior, ExtremeNotExposed, Exposed };

const char* to_string(PointClass c);

struct SubdifferentialInterval {
    double t = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
};

/// Maximal run of sample intervals whose slopes agree within the detection
/// tolerance. Runs touching the scan boundary are never reported (a flat
/// cannot be certified there against affine growth continuing off-range).
struct FlatSegment {
    std::size_t first = 0; // first sample index of the segment
    std::size_t last = 0;  // last sample index (inclusive)
    double t_begin = 0.0;
    double t_end = 0.0;
    double slope = 0.0;
    bool constant = false; // |slope| below tolerance as well
};

struct PointClassification {
    PointClass cls = PointClass::Exposed;
    std::optional<FlatSegment> segment;
};

/// Sorted samples of a convex function along a 1-d scan line. Convexity is
/// asserted at construction (slopes nondecreasing within `conv_tol`), never
/// repaired.
class ConvexProfile {
  public:
    ConvexProfile(std::vector<double> ts, std::vector<double> fs, double conv_tol = 1e-6);

    std::size_t size() const { return ts_.size(); }
    double t(std::size_t i) const { return ts_[i]; }
    double f(std::size_t i) const { return fs_[i]; }
    const std::vector<double>& ts() const { return ts_; }
    const std::vector<double>& fs() const { return fs_; }

    double t_min() const { return ts_.front(); }
    double t_max() const { return ts_.back(); }
    double max_spacing() const;

    /// Chord slope on [t_i, t_{i+1}], i < size()-1. Nondecreasing in i.
    double interval_slope(std::size_t i) const;

    /// Index of the sample nearest to t.
    std::size_t nearest_index(double t) const;

  private:
    std::vector<double> ts_;
    std::vector<double> fs_;
};

/// Legendre-Fenchel transform f*(s) = max_i (s t_i - f_i) on a sorted dual
/// grid, computed with the monotone-argmax sweep (linear time). The output
/// samples are exactly convex.
ConvexProfile discrete_conjugate(const ConvexProfile& p, const std::vector<double>& dual_grid);

/// Conjugate on the canonical dual grid (the profile's own chord slopes),
/// for which conjugating twice reproduces convex samples exactly.
ConvexProfile discrete_conjugate(const ConvexProfile& p);

/// Biconjugate evaluated back on p's sample grid.
ConvexProfile biconjugate(const ConvexProfile& p);

/// Supporting-slope interval at t. At a sample node the one-sided chord
/// slopes are Richardson-refined where a second point is available on that
/// side; strictly between nodes the interpolant is affine and the interval
/// collapses to the chord slope.
SubdifferentialInterval subdifferential_at(const ConvexProfile& p, double t);

/// Maximal interior runs of >= 3 intervals whose slopes agree within
/// flat_tol. Disjoint and sorted.
std::vector<FlatSegment> flat_segments(const ConvexProfile& p, double flat_tol);

/// 1-d exposed/extreme/flat classification against the detected segments.
/// Requires t at least two samples away from the scan boundary.
PointClassification classify_point(const ConvexProfile& p, double t, double flat_tol);

struct NodeDifferentiability {
    double t = 0.0;
    double width = 0.0;
    bool differentiable = true;
};

struct DifferentiabilityReport {
    std::vector<NodeDifferentiability> nodes;
    std::vector<double> kink_locations; // t of nodes judged non-differentiable
    bool differentiable_everywhere = true;
    bool strictly_convex = true; // no affine segment detected
    // Conjugate-duality cross-check: strict convexity of the profile must
    // match differentiability of its conjugate (and kinks of the conjugate
    // must match detected flats). Thresholds recorded for audit.
    bool cross_check_passed = true;
    std::string cross_check_detail;
    double slope_tol_used = 0.0;
    double flat_tol_used = 0.0;
    double dual_slope_tol_used = 0.0;
};

DifferentiabilityReport differentiability_scan(const ConvexProfile& p, double slope_tol,
                                               double flat_tol);

/// Spec'd heuristic default: 5 * (sample spacing) * max |third difference|,
/// floored to resolve exact data.
double default_slope_tol(const ConvexProfile& p);

struct GradientInverseReport {
    double max_deviation = 0.0;
    int tested = 0;
    int skipped_kink = 0;     // source point not differentiable
    int skipped_range = 0;    // image slope outside the dual profile's range
};

/// Round-trip check of slope(pb) o slope(pa) = identity on pa's interior
/// differentiable samples; gradients of conjugate pairs must invert each
/// other wherever both are genuine gradients.
GradientInverseReport gradient_inverse_check(const ConvexProfile& pa, const ConvexProfile& pb,
                                             double slope_tol);

/// Sample indices where the chord slope jumps by more than slope_tol
/// (interior nodes only).
std::vector<std::size_t> kink_indices(const std::vector<double>& ts, const std::vector<double>& fs,
                                      double slope_tol);

enum class C0Verdict { Blocked, Consistent, FailsAt };

const char* to_string(C0Verdict v);

struct C0Report {
    C0Verdict verdict = C0Verdict::Consistent;
    double fullness_threshold = 0.0;
    std::vector<double> failing_classes; // c values with deficient Aubry sets
    std::string detail;
};

/// Integrability screen: a cotangent-bundle foliation by invariant graphs
/// needs dim H^1 = dim M, and every class must have a full projected Aubry
/// set. `aubry_fullness` maps scanned c to the covered fraction of M.
C0Report c0_report(int dim, int b1, const std::vector<std::pair<double, double>>& aubry_fullness,
                   double fullness_threshold);

} // namespace wkam
