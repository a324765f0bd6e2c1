#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ebits/rates.hpp"
#include "ebits/state.hpp"

namespace ebits {

/// f_t(marg): sqrt(t / x) on eigenvalues x > t, 1 elsewhere. Throws for t <= 0.
CMatrix truncation_operator(const CMatrix& marg, double t);

/// Success probabilities below this are reported as degenerate.
inline constexpr double kDegenerateProbability = 1e-12;

struct TruncationOutcome {
  double p_a = 0.0, p_b = 0.0, p_ab = 0.0;
  std::optional<PureTripartiteState> post_a, post_b, post_ab;  ///< empty when degenerate
  double h_a = 0.0;  ///< H_inf(A) of post_ab
  double h_b = 0.0;  ///< H_inf(B) of post_ab
  double h_a_single = 0.0;  ///< H_inf(A) of post_a
  double h_b_single = 0.0;  ///< H_inf(B) of post_b
  bool degenerate = false;  ///< p_ab below kDegenerateProbability

  /// p_ab - (p_a + p_b - 1); nonnegative when the union bound holds.
  double union_slack() const { return p_ab - (p_a + p_b - 1.0); }
  /// h_a - (h_a_single - log2(p_a / p_ab)), and the B analogue.
  double a_slack() const;
  double b_slack() const;
  /// All three inequalities hold within tol (vacuously for the entropy ones
  /// when degenerate).
  bool inequalities_hold(double tol = 1e-9) const;
};

/// Applies M_A = f_tA(rho_A) and M_B = f_tB(rho_B) separately and together.
TruncationOutcome simultaneous_truncate(const PureTripartiteState& state, double t_a, double t_b);

/// Checks Tr_A (M x I) rho (M x I)^* <= Tr_A rho in PSD order within 1e-10 for
/// a density matrix rho on C^{d_A} x C^{d_B}. Throws InputError if M is not a
/// contraction or the shapes disagree.
bool local_contraction_check(const CMatrix& m, const CMatrix& rho, int d_a, int d_b);

/// min{E_A(r), E_B(r)} with E_X the bipartite direct rate of marginal X.
RateCurve direct_exponent_curve(const PureTripartiteState& state, std::vector<double> r_grid);

/// Threshold t for n copies of a spectrum at target exponent r.
using ThresholdSchedule = std::function<double(std::span<const double> spectrum, int n, double r)>;

/// Smallest t with sum over eigenvalues x > t of the n-fold product spectrum
/// of (x - t) at most 2^{-r n}; that sum is the one-sided failure probability.
double quantile_threshold(std::span<const double> spectrum, int n, double r);

struct NCopyTruncation {
  int n = 0;
  double t_a = 0.0, t_b = 0.0;
  double p_a = 0.0, p_b = 0.0, p_ab = 0.0;
  double h_a_single = 0.0;  ///< H_inf(A^n) after the A truncation alone
  double h_b_single = 0.0;
};

/// Exact success probabilities of truncating psi^{(x) n} at thresholds
/// (t_a, t_b), summed over joint types of the local eigenbasis labels.
NCopyTruncation n_copy_truncation(const PureTripartiteState& state, int n, double t_a, double t_b);

/// n_copy_truncation with thresholds from `schedule` at exponent r.
NCopyTruncation truncation_protocol(const PureTripartiteState& state, int n, double r,
                                    const ThresholdSchedule& schedule = quantile_threshold);

}  // namespace ebits
