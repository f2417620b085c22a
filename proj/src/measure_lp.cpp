#include "wkam/measure_lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wkam {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

// k-lattice for the trigonometric test functions. One representative per
// {k, -k} pair; for dim 1 this is k = 1..K.
std::vector<std::array<int, 2>> test_wavevectors(int dim, int k_test) {
    std::vector<std::array<int, 2>> ks;
    if (dim == 1) {
        for (int k = 1; k <= k_test; ++k) ks.push_back({k, 0});
    } else {
        for (int k1 = 0; k1 <= k_test; ++k1)
            for (int k2 = -k_test; k2 <= k_test; ++k2) {
                if (k1 == 0 && k2 <= 0) continue;
                ks.push_back({k1, k2});
            }
    }
    return ks;
}

} // namespace

int MeasureGrid::x_cells() const { return dim == 1 ? nx : nx * nx; }
int MeasureGrid::v_cells() const { return dim == 1 ? nv : nv * nv; }

double MeasureGrid::x_coord(int xi, int axis) const {
    int i = (dim == 1) ? xi : (axis == 0 ? xi / nx : xi % nx);
    return double(i) / double(nx);
}

double MeasureGrid::v_coord(int vj, int axis) const {
    int j = (dim == 1) ? vj : (axis == 0 ? vj / nv : vj % nv);
    return -vmax + double(j) * v_spacing();
}

void MeasureGrid::validate(const SystemSpec& sys) const {
    if (dim != sys.dim()) throw std::invalid_argument("MeasureGrid: dimension mismatch with system");
    if (nx < 16) throw std::invalid_argument("MeasureGrid: nx must be >= 16");
    if (nv < 3 || nv % 2 == 0) throw std::invalid_argument("MeasureGrid: nv must be odd and >= 3");
    if (!(vmax > 0.0)) throw std::invalid_argument("MeasureGrid: vmax must be positive");
    double vreach = std::sqrt(2.0 * (sys.max_potential() - sys.min_potential()) / sys.mass());
    if (vmax < vreach)
        throw std::invalid_argument("MeasureGrid: vmax below the velocity reached from rest at max U");
}

double MeasureGrid::default_vmax(const SystemSpec& sys, double cmax) {
    double span = sys.max_potential() - sys.min_potential();
    return std::sqrt(2.0 * (span + cmax * cmax)) + 2.0;
}

double OccupationMeasure::mass() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

double OccupationMeasure::max_holonomy_residual() const {
    double m = 0.0;
    for (double r : holonomy_residuals) m = std::max(m, std::abs(r));
    return m;
}

AveragingSolver::AveragingSolver(const SystemSpec& sys, MeasureGrid grid, int k_test)
    : sys_(sys), grid_(grid), k_test_(k_test) {
    grid_.validate(sys);
    if (k_test_ < 1) throw std::invalid_argument("AveragingSolver: k_test must be >= 1");
    if (grid_.dim == 1 && 2 * k_test_ >= grid_.nx)
        throw std::invalid_argument("AveragingSolver: k_test must stay below nx/2 (aliasing)");

    const int nxc = grid_.x_cells(), nvc = grid_.v_cells();
    const int n = nxc * nvc;
    lagrangian_.resize(std::size_t(n));
    vel_.resize(std::size_t(n));
    for (int xi = 0; xi < nxc; ++xi) {
        double x[2] = {grid_.x_coord(xi, 0), grid_.x_coord(xi, 1)};
        double u = sys_.potential_at(x);
        for (int vj = 0; vj < nvc; ++vj) {
            double v[2] = {grid_.v_coord(vj, 0), grid_.v_coord(vj, 1)};
            std::size_t cell = std::size_t(xi) * std::size_t(nvc) + std::size_t(vj);
            double k = v[0] * v[0] + (grid_.dim > 1 ? v[1] * v[1] : 0.0);
            lagrangian_[cell] = 0.5 * sys_.mass() * k - u;
            vel_[cell] = {v[0], grid_.dim > 1 ? v[1] : 0.0};
        }
    }

    auto ks = test_wavevectors(grid_.dim, k_test_);
    test_rows_ = 2 * ks.size();
    const int m = 1 + int(test_rows_);
    Eigen::MatrixXd A(m, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    A.row(0).setOnes();
    b[0] = 1.0;

    // Holonomy rows: sum of mu_{ij} <v_j, grad phi(x_i)> = 0 for
    // phi = cos(2 pi <k,x>) and sin(2 pi <k,x>). Rows are scaled to unit
    // max-abs to keep the simplex well conditioned.
    int row = 1;
    for (const auto& k : ks) {
        double knorm = std::sqrt(double(k[0]) * k[0] + double(k[1]) * k[1]);
        double scale = 1.0 / (kTwoPi * knorm * grid_.vmax * (grid_.dim > 1 ? 2.0 : 1.0));
        for (int xi = 0; xi < nxc; ++xi) {
            double x[2] = {grid_.x_coord(xi, 0), grid_.x_coord(xi, 1)};
            double phase = kTwoPi * (k[0] * x[0] + k[1] * x[1]);
            double s = std::sin(phase), c = std::cos(phase);
            for (int vj = 0; vj < nvc; ++vj) {
                std::size_t cell = std::size_t(xi) * std::size_t(nvc) + std::size_t(vj);
                double kv = k[0] * vel_[cell][0] + k[1] * vel_[cell][1];
                A(row, Eigen::Index(cell)) = scale * (-kTwoPi * kv * s);
                A(row + 1, Eigen::Index(cell)) = scale * (kTwoPi * kv * c);
            }
        }
        row += 2;
    }
    alpha_lp_ = std::make_unique<DenseSimplex>(std::move(A), std::move(b));
}

OccupationMeasure AveragingSolver::extract_measure(const SimplexResult& r, bool beta_rows) const {
    OccupationMeasure m;
    m.grid = grid_;
    const int n = grid_.cells();
    m.weights.assign(std::size_t(n), 0.0);
    for (int i = 0; i < n; ++i) m.weights[std::size_t(i)] = r.x[i];
    m.value = r.objective;
    m.rotation = {0.0, 0.0};
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < grid_.dim; ++a) m.rotation[std::size_t(a)] += m.weights[std::size_t(i)] * vel_[std::size_t(i)][a];
    const auto& A = beta_rows ? beta_lp_->constraint_matrix() : alpha_lp_->constraint_matrix();
    m.holonomy_residuals.resize(test_rows_);
    for (std::size_t k = 0; k < test_rows_; ++k)
        m.holonomy_residuals[k] = A.row(Eigen::Index(1 + k)) * r.x;
    return m;
}

namespace {

void require_optimal(const SimplexResult& r, const char* what) {
    if (r.status == SimplexStatus::Optimal) return;
    std::ostringstream msg;
    msg << what << ": LP terminated " << to_string(r.status) << " after " << r.iterations
        << " iterations";
    if (r.status == SimplexStatus::Infeasible)
        msg << " (should be impossible: the uniform v-symmetric measure is feasible)";
    throw std::runtime_error(msg.str());
}

} // namespace

AlphaResult AveragingSolver::solve_alpha(const std::array<double, 2>& c) {
    const int n = grid_.cells();
    Eigen::VectorXd obj(n);
    for (int i = 0; i < n; ++i) {
        double cv = c[0] * vel_[std::size_t(i)][0] + c[1] * vel_[std::size_t(i)][1];
        obj[i] = lagrangian_[std::size_t(i)] - cv;
    }
    SimplexResult r = alpha_lp_->minimize(obj, warm_basis_);
    require_optimal(r, "solve_alpha");
    warm_basis_ = r.basis;

    AlphaResult out;
    out.c = c;
    out.alpha = -r.objective;
    out.measure = extract_measure(r, false);
    out.lp_iterations = r.iterations;

    // Support pressed against the velocity cutoff means the box clipped the
    // true minimizer; report a workable vmax.
    double edge_mass = 0.0;
    const int nvc = grid_.v_cells();
    for (int i = 0; i < n; ++i) {
        int vj = i % nvc;
        bool edge = false;
        for (int a = 0; a < grid_.dim; ++a) {
            int comp = (grid_.dim == 1) ? vj : (a == 0 ? vj / grid_.nv : vj % grid_.nv);
            if (comp == 0 || comp == grid_.nv - 1) edge = true;
        }
        if (edge) edge_mass += out.measure.weights[std::size_t(i)];
    }
    if (edge_mass > 1e-6) {
        double cmax = std::max(std::abs(c[0]), std::abs(c[1]));
        std::ostringstream msg;
        msg << "solve_alpha: minimizing measure carries mass " << edge_mass
            << " on the velocity cutoff; vmax=" << grid_.vmax << " is too small for |c|=" << cmax
            << " (superlinearity estimate: vmax >= " << MeasureGrid::default_vmax(sys_, cmax) << ")";
        throw std::runtime_error(msg.str());
    }
    return out;
}

AlphaResult AveragingSolver::solve_alpha(double c) { return solve_alpha({c, 0.0}); }

BetaResult AveragingSolver::solve_beta(const std::array<double, 2>& h) {
    for (int a = 0; a < grid_.dim; ++a)
        if (std::abs(h[std::size_t(a)]) >= grid_.vmax) {
            std::ostringstream msg;
            msg << "solve_beta: |h| = " << std::abs(h[std::size_t(a)])
                << " is not representable inside the velocity cutoff vmax = " << grid_.vmax;
            throw std::invalid_argument(msg.str());
        }
    const int n = grid_.cells();
    if (!beta_lp_) {
        const auto& A0 = alpha_lp_->constraint_matrix();
        Eigen::MatrixXd A(A0.rows() + grid_.dim, n);
        A.topRows(A0.rows()) = A0;
        for (int a = 0; a < grid_.dim; ++a)
            for (int i = 0; i < n; ++i)
                A(A0.rows() + a, i) = vel_[std::size_t(i)][a] / grid_.vmax;
        Eigen::VectorXd b = Eigen::VectorXd::Zero(A.rows());
        b[0] = 1.0;
        beta_lp_ = std::make_unique<DenseSimplex>(std::move(A), std::move(b));
    }
    // rhs changes with h, so rebuild b through a fresh solver call: the
    // DenseSimplex keeps A fixed; move h into the scaled rotation rows.
    Eigen::VectorXd obj(n);
    for (int i = 0; i < n; ++i) obj[i] = lagrangian_[std::size_t(i)];

    // Local solve against modified rhs.
    Eigen::VectorXd b = Eigen::VectorXd::Zero(beta_lp_->rows());
    b[0] = 1.0;
    for (int a = 0; a < grid_.dim; ++a)
        b[beta_lp_->rows() - grid_.dim + a] = h[std::size_t(a)] / grid_.vmax;
    DenseSimplex lp(beta_lp_->constraint_matrix(), b);
    SimplexResult r = lp.minimize(obj);
    require_optimal(r, "solve_beta");

    BetaResult out;
    out.h = h;
    out.beta = r.objective;
    out.measure = extract_measure(r, true);
    out.lp_iterations = r.iterations;
    return out;
}

BetaResult AveragingSolver::solve_beta(double h) { return solve_beta({h, 0.0}); }

AlphaResult solve_alpha(const SystemSpec& sys, const MeasureGrid& grid, double c, int k_test) {
    AveragingSolver solver(sys, grid, k_test);
    return solver.solve_alpha(c);
}

BetaResult solve_beta(const SystemSpec& sys, const MeasureGrid& grid, double h, int k_test) {
    AveragingSolver solver(sys, grid, k_test);
    return solver.solve_beta(h);
}

std::vector<int> measure_support(const OccupationMeasure& m, double mass_threshold) {
    if (!(mass_threshold > 0.0 && mass_threshold < 1.0))
        throw std::invalid_argument("measure_support: mass_threshold must be in (0,1)");
    std::vector<int> order(m.weights.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return m.weights[std::size_t(a)] > m.weights[std::size_t(b)]; });
    std::vector<int> cells;
    double acc = 0.0, target = (1.0 - mass_threshold) * m.mass();
    for (int idx : order) {
        if (acc >= target) break;
        if (m.weights[std::size_t(idx)] <= 0.0) break;
        cells.push_back(idx);
        acc += m.weights[std::size_t(idx)];
    }
    return cells;
}

namespace {

// Cell distance in index space: torus-wrapped along x, clamped along v.
bool cells_within(const MeasureGrid& g, int cell_a, int cell_b, int radius) {
    int nvc = g.v_cells();
    int xa = cell_a / nvc, va = cell_a % nvc;
    int xb = cell_b / nvc, vb = cell_b % nvc;
    auto xdist = [&](int i, int j) {
        int d = std::abs(i - j);
        return std::min(d, g.nx - d);
    };
    if (g.dim == 1)
        return xdist(xa, xb) <= radius && std::abs(va - vb) <= radius;
    int xa0 = xa / g.nx, xa1 = xa % g.nx, xb0 = xb / g.nx, xb1 = xb % g.nx;
    int va0 = va / g.nv, va1 = va % g.nv, vb0 = vb / g.nv, vb1 = vb % g.nv;
    return xdist(xa0, xb0) <= radius && xdist(xa1, xb1) <= radius &&
           std::abs(va0 - vb0) <= radius && std::abs(va1 - vb1) <= radius;
}

double mass_near_support(const OccupationMeasure& m, const std::vector<int>& support, int radius) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m.weights.size(); ++i) {
        if (m.weights[i] <= 0.0) continue;
        for (int s : support)
            if (cells_within(m.grid, int(i), s, radius)) {
                acc += m.weights[i];
                break;
            }
    }
    return acc;
}

} // namespace

double support_overlap(const OccupationMeasure& m1, const OccupationMeasure& m2, int radius,
                       double mass_threshold) {
    if (m1.grid.dim != m2.grid.dim || m1.grid.nx != m2.grid.nx || m1.grid.nv != m2.grid.nv ||
        m1.grid.vmax != m2.grid.vmax)
        throw std::invalid_argument("support_overlap: measures live on different grids");
    auto s1 = measure_support(m1, mass_threshold);
    auto s2 = measure_support(m2, mass_threshold);
    return std::max(mass_near_support(m1, s2, radius), mass_near_support(m2, s1, radius));
}

} // namespace wkam
