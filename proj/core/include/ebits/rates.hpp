#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ebits/entropy.hpp"

namespace ebits {

enum class CurveKind { Direct, StrongConverse, StrongConverseFidelity };

/// Sampled rate curve r -> R. Immutable after construction.
class RateCurve {
 public:
  /// Throws InputError unless the grid is strictly increasing, nonnegative,
  /// and the same length as `values`.
  RateCurve(CurveKind kind, std::vector<double> grid, std::vector<double> values);

  /// Evaluates `fn` at every grid point.
  static RateCurve sample(CurveKind kind, std::vector<double> grid, const std::function<double(double)>& fn);

  CurveKind kind() const noexcept { return kind_; }
  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return grid_.size(); }

  /// Piecewise-linear interpolation; constant beyond the ends.
  double at(double r) const;

  /// True if values move in the direction expected for the kind
  /// (nonincreasing for direct curves), up to `tol`.
  bool monotone(double tol = 1e-9) const;
  /// Second differences on the (possibly nonuniform) grid are <= tol.
  bool concave(double tol = 1e-8) const;

 private:
  CurveKind kind_;
  std::vector<double> grid_;
  std::vector<double> values_;
};

/// {r_min, r_min + step, ...} up to r_max inclusive (within step/1e6).
std::vector<double> make_grid(double r_min, double r_max, double step);

/// sup over alpha > 1 of r/(1-alpha) + H_alpha(P). Throws InputError for r <= 0.
double bipartite_direct_rate(std::span<const double> p, double r);

/// inf over alpha in [0,1) of r alpha/(1-alpha) + H_alpha(P). Throws for r < 0.
double bipartite_sc_rate(std::span<const double> p, double r);

/// Point where the slope of r -> bipartite_sc_rate(P, r) falls to 1; 0 if it
/// starts below 1.
double sc_slope_one_point(std::span<const double> p);

/// Fidelity version of the strong-converse rate: follows bipartite_sc_rate up
/// to the slope-one point, then grows with unit slope. Throws for r < 0.
double bipartite_sc_fidelity_rate(std::span<const double> p, double r);

/// sup over x <= r of curve(x) + r - x, where x ranges over the grid points
/// at or below r together with r itself (by interpolation). Throws for a
/// curve of the wrong kind, r < 0, or r beyond the last grid point.
double sc_fidelity_from_probability(const RateCurve& curve, double r);

struct FidToProb {
  long long ebits;     ///< L = floor(d / 8)
  double probability;  ///< max(0, 1 - 30 eps)
  bool degenerate;     ///< L == 0: nothing is guaranteed
};

/// High-fidelity to probabilistic conversion for a target of Schmidt rank d.
FidToProb oneshot_fid_to_prob(long long d, double epsilon);

/// Infidelity 1 - p d / L reached by padding a success-probability-p protocol
/// for rank d into rank L >= d.
double oneshot_prob_to_fid(long long d, double p, long long target_rank);

struct LowFidelityBound {
  double value;  ///< (sqrt(d (1 - eps)) - 1) / ln d, a lower bound on sqrt(P L)
  bool vacuous;  ///< value <= 0
};

LowFidelityBound oneshot_lowfid_bound(long long d, double epsilon);

}  // namespace ebits
