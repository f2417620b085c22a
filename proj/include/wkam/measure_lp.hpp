#pragma once

#include "wkam/dynamics.hpp"
#include "wkam/simplex.hpp"

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace wkam {

/// Phase-space discretization for occupation measures: x_i = i/nx per torus
/// coordinate, velocities uniform on [-vmax, vmax] with an odd node count so
/// v = 0 is a node.
struct MeasureGrid {
    int dim = 1;
    int nx = 256;
    int nv = 129;
    double vmax = 4.0;

    int x_cells() const;
    int v_cells() const;
    int cells() const { return x_cells() * v_cells(); }

    double x_coord(int xi, int axis) const;
    double v_coord(int vj, int axis) const;
    double v_spacing() const { return 2.0 * vmax / double(nv - 1); }

    /// nx >= 16, odd nv >= 3, and a velocity box wide enough for every
    /// energy level the system reaches from rest.
    void validate(const SystemSpec& sys) const;

    /// Crude superlinearity default: enough headroom for classes up to
    /// |c| = cmax.
    static double default_vmax(const SystemSpec& sys, double cmax);
};

/// Nonnegative weights on the grid summing to one, with the holonomy
/// residuals of the closed-measure constraints it was solved under.
struct OccupationMeasure {
    MeasureGrid grid;
    std::vector<double> weights;            // size grid.cells()
    double value = 0.0;                     // attained LP objective
    std::array<double, 2> rotation{0, 0};   // sum of weights * v
    std::vector<double> holonomy_residuals; // per test-function row
    double mass() const;
    double max_holonomy_residual() const;
};

struct AlphaResult {
    std::array<double, 2> c{0, 0};
    double alpha = 0.0;
    OccupationMeasure measure;
    int lp_iterations = 0;
};

struct BetaResult {
    std::array<double, 2> h{0, 0};
    double beta = 0.0;
    OccupationMeasure measure;
    int lp_iterations = 0;
};

/// LP engine over closed (holonomic) occupation measures. Builds the
/// constraint system once; alpha solves for scanning c reuse both the
/// matrix and the previous optimal basis, since only the objective moves.
class AveragingSolver {
  public:
    AveragingSolver(const SystemSpec& sys, MeasureGrid grid, int k_test);

    const MeasureGrid& grid() const { return grid_; }
    int k_test() const { return k_test_; }
    int holonomy_rows() const { return int(test_rows_); }

    /// alpha(c) = -min of integral of (L - <c,v>) over closed grid measures.
    AlphaResult solve_alpha(const std::array<double, 2>& c);
    AlphaResult solve_alpha(double c); // dim == 1 convenience

    /// beta(h): same measures constrained to rotation vector h.
    BetaResult solve_beta(const std::array<double, 2>& h);
    BetaResult solve_beta(double h);

    /// Drop the cached warm basis (scans jumping far in c may prefer this).
    void reset_warm_start() { warm_basis_.clear(); }

  private:
    OccupationMeasure extract_measure(const SimplexResult& r, bool beta_rows) const;

    SystemSpec sys_;
    MeasureGrid grid_;
    int k_test_;
    std::size_t test_rows_ = 0;
    std::vector<double> lagrangian_;            // per cell
    std::vector<std::array<double, 2>> vel_;    // per cell
    std::unique_ptr<DenseSimplex> alpha_lp_;
    std::unique_ptr<DenseSimplex> beta_lp_;     // built lazily
    std::vector<int> warm_basis_;
};

/// One-shot wrappers.
AlphaResult solve_alpha(const SystemSpec& sys, const MeasureGrid& grid, double c, int k_test);
BetaResult solve_beta(const SystemSpec& sys, const MeasureGrid& grid, double h, int k_test);

/// Smallest cell set holding mass >= 1 - mass_threshold, greedily by
/// descending weight. Cell indices are returned in that greedy order.
std::vector<int> measure_support(const OccupationMeasure& m, double mass_threshold);

/// Mass of each measure within `radius` grid cells of the other's support,
/// symmetrized by max. 0 = numerically disjoint supports, ~1 = coincident.
double support_overlap(const OccupationMeasure& m1, const OccupationMeasure& m2, int radius,
                       double mass_threshold = 1e-3);

} // namespace wkam
