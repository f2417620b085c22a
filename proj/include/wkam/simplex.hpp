#pragma once

#include <Eigen/Dense>

#include <vector>

namespace wkam {

/// Dense revised simplex for standard-form problems
///   minimize  obj' x   subject to  A x = b,  x >= 0,
/// sized for a few hundred rows and up to ~1e5 columns. The constraint
/// matrix is fixed at construction; objectives change per solve, so a scan
/// over objectives can warm-start from the previous optimal basis (the
/// feasible set does not move).
struct SimplexOptions {
    double tol = 1e-9;
    int max_iterations = 200000;
    int refactor_every = 100;
};

enum class SimplexStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(SimplexStatus s);

struct SimplexResult {
    SimplexStatus status = SimplexStatus::IterationLimit;
    Eigen::VectorXd x;
    Eigen::VectorXd dual; // row multipliers at optimality
    double objective = 0.0;
    int iterations = 0;
    double feasibility_residual = 0.0; // max |Ax - b|
    std::vector<int> basis;            // reusable warm start
};

class DenseSimplex {
  public:
    DenseSimplex(Eigen::MatrixXd A, Eigen::VectorXd b, SimplexOptions options = {});

    int rows() const { return int(A_.rows()); }
    int cols() const { return int(A_.cols()); }
    const Eigen::MatrixXd& constraint_matrix() const { return A_; }
    const Eigen::VectorXd& rhs() const { return b_; }

    /// Two-phase solve from scratch.
    SimplexResult minimize(const Eigen::VectorXd& obj) const;

    /// Resume from a known primal-feasible basis (e.g. the previous scan
    /// point's optimum). Falls back to a cold start if the basis is stale.
    SimplexResult minimize(const Eigen::VectorXd& obj, const std::vector<int>& warm_basis) const;

  private:
    Eigen::MatrixXd A_;
    Eigen::VectorXd b_;
    SimplexOptions opt_;
};

} // namespace wkam
