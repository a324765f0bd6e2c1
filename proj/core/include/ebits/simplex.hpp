#pragma once

#include <vector>

#include <Eigen/Dense>

namespace ebits {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// Dense two-phase simplex for   minimize c'x  subject to  A x = b, x >= 0.
/// Dantzig pricing, switching to Bland's rule after a run of degenerate
/// pivots. `tol` is the pivot and feasibility tolerance.
LpResult solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c, double tol = 1e-10);

}  // namespace ebits
