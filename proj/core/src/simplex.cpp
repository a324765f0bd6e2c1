#include "ebits/simplex.hpp"

#include <cmath>
#include <limits>

#include "ebits/errors.hpp"

namespace ebits {

namespace {

// Tableau with rows 0..m-1 for constraints and row m for reduced costs; the
// last column holds the right-hand side.
class Tableau {
 public:
  Tableau(Eigen::Index rows, Eigen::Index cols) : t_(Eigen::MatrixXd::Zero(rows + 1, cols + 1)), basis_(rows) {}

  Eigen::MatrixXd& data() { return t_; }
  std::vector<Eigen::Index>& basis() { return basis_; }
  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index cols() const { return t_.cols() - 1; }
  double& rhs(Eigen::Index i) { return t_(i, cols()); }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  // Minimizes the objective whose reduced costs sit in the last row, over
  // columns [0, active). Returns false if unbounded.
  bool optimize(Eigen::Index active, double tol) {
    int degenerate = 0;
    const long long max_iterations = 50LL * (rows() + cols()) + 1000;
    for (long long it = 0; it < max_iterations; ++it) {
      const bool bland = degenerate > 50;
      Eigen::Index enter = -1;
      double best = -tol;
      for (Eigen::Index j = 0; j < active; ++j) {
        const double d = t_(rows(), j);
        if (d < best) {
          enter = j;
          if (bland) break;
          best = d;
        }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows(); ++i) {
        const double a = t_(i, enter);
        if (a > tol) {
          const double q = rhs(i) / a;
          if (q < ratio - 1e-15 ||
              (bland && std::abs(q - ratio) <= 1e-15 && leave >= 0 &&
               basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
            ratio = q;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      degenerate = ratio <= tol ? degenerate + 1 : 0;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex iteration limit reached");
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c, double tol) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (b.size() != m || c.size() != n) throw InputError("solve_lp: dimension mismatch");

  // Phase 1: artificial variables n..n+m-1 with b >= 0.
  Tableau tab(m, n + m);
  auto& t = tab.data();
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    t.row(i).head(n) = sign * a.row(i);
    t(i, n + i) = 1.0;
    tab.rhs(i) = sign * b[i];
    tab.basis()[static_cast<std::size_t>(i)] = n + i;
  }
  for (Eigen::Index i = 0; i < m; ++i) t.row(m) -= t.row(i);
  for (Eigen::Index i = 0; i < m; ++i) t(m, n + i) = 0.0;
  tab.optimize(n + m, tol);

  LpResult result;
  const double scale = 1.0 + b.cwiseAbs().maxCoeff();
  if (-t(m, n + m) > tol * scale * 10.0) return result;

  // Drive remaining artificials out of the basis; rows where that is
  // impossible are redundant and stay inert.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis()[static_cast<std::size_t>(i)] < n) continue;
    Eigen::Index col = -1;
    double biggest = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(t(i, j)) > biggest) {
        biggest = std::abs(t(i, j));
        col = j;
      }
    }
    if (col >= 0) tab.pivot(i, col);
  }

  // Phase 2: original costs expressed in the current basis.
  t.row(m).setZero();
  t.row(m).head(n) = c.transpose();
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = tab.basis()[static_cast<std::size_t>(i)];
    if (j < n && c[j] != 0.0) t.row(m) -= c[j] * t.row(i);
  }
  // Artificial columns are excluded from pricing by optimizing over [0, n).
  if (!tab.optimize(n, tol)) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = tab.basis()[static_cast<std::size_t>(i)];
    if (j < n) result.x[j] = std::max(tab.rhs(i), 0.0);
  }
  result.objective = c.dot(result.x);
  result.status = LpStatus::Optimal;
  return result;
}

}  // namespace ebits
