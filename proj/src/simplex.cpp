#include "wkam/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wkam {

const char* to_string(SimplexStatus s) {
    switch (s) {
        case SimplexStatus::Optimal: return "optimal";
        case SimplexStatus::Infeasible: return "infeasible";
        case SimplexStatus::Unbounded: return "unbounded";
        case SimplexStatus::IterationLimit: return "iteration-limit";
    }
    return "?";
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Working state of a simplex run over an extended column set. Columns with
// index >= n_struct are phase-1 artificials.
struct Tableau {
    const MatrixXd& A; // structural columns only
    const VectorXd& b;
    SimplexOptions opt;

    int m;
    int n_struct;
    std::vector<int> basis;        // column index per row
    std::vector<char> artificial_sign; // per-row sign of its artificial column
    MatrixXd binv;
    VectorXd xb;
    int iterations = 0;

    Tableau(const MatrixXd& A_, const VectorXd& b_, SimplexOptions o)
        : A(A_), b(b_), opt(o), m(int(A_.rows())), n_struct(int(A_.cols())) {}

    int artificial_of_row(int r) const { return n_struct + r; }
    bool is_artificial(int col) const { return col >= n_struct; }

    VectorXd column(int col) const {
        if (!is_artificial(col)) return A.col(col);
        VectorXd e = VectorXd::Zero(m);
        e[col - n_struct] = artificial_sign[std::size_t(col - n_struct)] ? 1.0 : -1.0;
        return e;
    }

    double cost_of(int col, const VectorXd& obj, bool phase1) const {
        if (phase1) return is_artificial(col) ? 1.0 : 0.0;
        return is_artificial(col) ? 0.0 : obj[col];
    }

    void refactor() {
        MatrixXd B(m, m);
        for (int r = 0; r < m; ++r) B.col(r) = column(basis[std::size_t(r)]);
        Eigen::PartialPivLU<MatrixXd> lu(B);
        binv = lu.inverse();
        xb = binv * b;
    }

    // Replace basis row `leave` by column `enter` with direction d = binv*col.
    void pivot(int leave, int enter, const VectorXd& d, double step) {
        xb -= step * d;
        xb[leave] = step;
        double dp = d[leave];
        binv.row(leave) /= dp;
        for (int r = 0; r < m; ++r) {
            if (r == leave) continue;
            double f = d[r];
            if (f != 0.0) binv.row(r) -= f * binv.row(leave);
        }
        basis[std::size_t(leave)] = enter;
        for (int r = 0; r < m; ++r)
            if (xb[r] < 0.0 && xb[r] > -opt.tol) xb[r] = 0.0;
    }

    // Core primal iteration loop; returns the terminal status for the phase.
    // Dantzig pricing with a Bland fallback after a degenerate stall.
    SimplexStatus iterate(const VectorXd& obj, bool phase1) {
        VectorXd cb(m);
        int degenerate_streak = 0;
        bool bland = false;
        int since_refactor = 0;
        while (true) {
            if (iterations >= opt.max_iterations) return SimplexStatus::IterationLimit;
            if (++since_refactor >= opt.refactor_every) {
                refactor();
                since_refactor = 0;
            }
            for (int r = 0; r < m; ++r) cb[r] = cost_of(basis[std::size_t(r)], obj, phase1);
            VectorXd y = binv.transpose() * cb;
            // price structural columns (artificials never re-enter)
            VectorXd reduced = -(A.transpose() * y);
            if (!phase1) reduced += obj;
            double scale = 1.0;
            if (!phase1) scale += obj.cwiseAbs().maxCoeff();

            int enter = -1;
            if (!bland) {
                double best = -opt.tol * scale;
                for (int j = 0; j < n_struct; ++j)
                    if (reduced[j] < best) {
                        best = reduced[j];
                        enter = j;
                    }
            } else {
                for (int j = 0; j < n_struct; ++j)
                    if (reduced[j] < -opt.tol * scale) {
                        enter = j;
                        break;
                    }
            }
            if (enter < 0) return SimplexStatus::Optimal;

            VectorXd d = binv * A.col(enter);
            int leave = -1;
            double step = std::numeric_limits<double>::infinity();
            for (int r = 0; r < m; ++r) {
                if (d[r] > opt.tol) {
                    double ratio = std::max(xb[r], 0.0) / d[r];
                    if (ratio < step - 1e-15 ||
                        (ratio < step + 1e-15 && leave >= 0 &&
                         basis[std::size_t(r)] < basis[std::size_t(leave)])) {
                        step = ratio;
                        leave = r;
                    }
                }
            }
            if (leave < 0) return SimplexStatus::Unbounded;

            ++iterations;
            if (step <= opt.tol) {
                if (++degenerate_streak > 64) bland = true;
            } else {
                degenerate_streak = 0;
                bland = false;
            }
            pivot(leave, enter, d, step);
        }
    }
};

} // namespace

DenseSimplex::DenseSimplex(MatrixXd A, VectorXd b, SimplexOptions options)
    : A_(std::move(A)), b_(std::move(b)), opt_(options) {
    if (A_.rows() != b_.size()) throw std::invalid_argument("DenseSimplex: A/b dimension mismatch");
    if (A_.rows() < 1 || A_.cols() < 1) throw std::invalid_argument("DenseSimplex: empty problem");
}

SimplexResult DenseSimplex::minimize(const VectorXd& obj) const {
    return minimize(obj, {});
}

SimplexResult DenseSimplex::minimize(const VectorXd& obj, const std::vector<int>& warm_basis) const {
    if (obj.size() != A_.cols())
        throw std::invalid_argument("DenseSimplex: objective dimension mismatch");
    const int m = rows();

    Tableau t(A_, b_, opt_);
    t.artificial_sign.resize(std::size_t(m));
    for (int r = 0; r < m; ++r) t.artificial_sign[std::size_t(r)] = char(b_[r] >= 0.0);

    SimplexResult res;
    bool warm_ok = false;
    if (int(warm_basis.size()) == m) {
        t.basis = warm_basis;
        bool sane = true;
        for (int c : warm_basis)
            if (c < 0 || c >= cols()) sane = false;
        if (sane) {
            t.refactor();
            if (t.binv.allFinite() && t.xb.minCoeff() > -1e-7) {
                for (int r = 0; r < m; ++r)
                    if (t.xb[r] < 0.0) t.xb[r] = 0.0;
                warm_ok = true;
            }
        }
    }

    if (!warm_ok) {
        // Phase 1: start on the (signed) artificial basis.
        t.basis.resize(std::size_t(m));
        for (int r = 0; r < m; ++r) t.basis[std::size_t(r)] = t.artificial_of_row(r);
        t.refactor();
        SimplexStatus s1 = t.iterate(obj, /*phase1=*/true);
        if (s1 == SimplexStatus::IterationLimit) {
            res.status = s1;
            res.iterations = t.iterations;
            return res;
        }
        double infeas = 0.0;
        for (int r = 0; r < m; ++r)
            if (t.is_artificial(t.basis[std::size_t(r)])) infeas += std::abs(t.xb[r]);
        if (infeas > 1e-7) {
            res.status = SimplexStatus::Infeasible;
            res.iterations = t.iterations;
            res.objective = infeas;
            return res;
        }
        // Drive lingering zero-level artificials out where a structural
        // column can take the row; redundant rows keep theirs at level 0.
        for (int r = 0; r < m; ++r) {
            if (!t.is_artificial(t.basis[std::size_t(r)])) continue;
            for (int j = 0; j < cols(); ++j) {
                double piv = t.binv.row(r) * A_.col(j);
                if (std::abs(piv) > 1e-7) {
                    bool already_basic = false;
                    for (int rr = 0; rr < m; ++rr)
                        if (t.basis[std::size_t(rr)] == j) already_basic = true;
                    if (already_basic) continue;
                    Eigen::VectorXd d = t.binv * A_.col(j);
                    t.pivot(r, j, d, std::max(t.xb[r], 0.0));
                    break;
                }
            }
        }
    }

    SimplexStatus s2 = t.iterate(obj, /*phase1=*/false);
    t.refactor(); // tighten the returned residuals

    res.status = s2;
    res.iterations = t.iterations;
    res.basis = t.basis;
    res.x = VectorXd::Zero(cols());
    for (int r = 0; r < m; ++r) {
        int c = t.basis[std::size_t(r)];
        if (!t.is_artificial(c)) res.x[c] = std::max(t.xb[r], 0.0);
    }
    VectorXd cb(m);
    for (int r = 0; r < m; ++r) cb[r] = t.cost_of(t.basis[std::size_t(r)], obj, false);
    res.dual = t.binv.transpose() * cb;
    res.objective = obj.dot(res.x);
    res.feasibility_residual = (A_ * res.x - b_).cwiseAbs().maxCoeff();
    return res;
}

} // namespace wkam
