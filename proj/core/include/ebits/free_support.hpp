#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ebits/entropy.hpp"
#include "ebits/rates.hpp"
#include "ebits/state.hpp"

namespace ebits {

/// Local bases in which the state's support is free, together with the
/// distribution obtained by measuring in those bases.
struct FreeSupportCertificate {
  CMatrix basis_a, basis_b, basis_c;
  /// Nonzero-amplitude triples; any two differ in at least two positions.
  JointDistribution measured;
};

struct LocalBases {
  CMatrix a, b, c;
};

/// Amplitudes with modulus at or below this are outside the support.
inline constexpr double kSupportThreshold = 1e-12;

/// True if any two distinct triples differ in at least two positions.
bool is_free(std::span<const JointDistribution::Label> support);

/// Certificate for the computational bases, or for `bases` when supplied;
/// std::nullopt when the support is not free. Bases are not searched.
std::optional<FreeSupportCertificate> detect_free_support(const PureTripartiteState& state,
                                                          const std::optional<LocalBases>& bases = std::nullopt);

struct KlBallSolution {
  JointDistribution q;   ///< maximizer; same labels as the input
  double value = 0.0;    ///< min{H(Q_A), H(Q_B)}
  double x_weight = 0.0; ///< weight on H(Q_A) in the dual
  double multiplier = 0.0;
  double kl = 0.0;       ///< D(Q || P)
  double dual_value = 0.0;
};

struct SolverOptions {
  double gap_tolerance = 1e-15;  ///< Newton decrement at which the inner ascent stops
  int max_inner_iterations = 500;
  double balance_tolerance = 1e-7;  ///< |H(Q_A) - H(Q_B)| accepted as a tie
};

/// max over Q with D(Q || P) <= r of min{H(Q_A), H(Q_B)}. Throws InputError for
/// r < 0.
KlBallSolution kl_ball_minmax_entropy(const JointDistribution& p, double r, const SolverOptions& options = {});

struct ThetaSolution {
  JointDistribution q;
  double value = 0.0;
};

/// max over Q << P of sum_s theta_s H(Q_s) - alpha/(1-alpha) D(Q || P).
/// Throws InputError unless alpha is in [0, 1) and theta is a distribution.
ThetaSolution h_alpha_theta(const JointDistribution& p, double alpha, const std::array<double, 3>& theta,
                            const SolverOptions& options = {});

/// The kl_ball_minmax_entropy curve of the measured distribution, held at the
/// unconstrained maximum once that becomes feasible. std::nullopt when the
/// support is not free.
std::optional<RateCurve> sc_rate_curve_free(const PureTripartiteState& state, std::vector<double> r_grid,
                                            const std::optional<LocalBases>& bases = std::nullopt);

/// Same, for an already measured distribution.
RateCurve sc_rate_curve(const JointDistribution& p, std::vector<double> r_grid);

}  // namespace ebits
