#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "ebits/free_support.hpp"
#include "ebits/majorization.hpp"
#include "ebits/state.hpp"
#include "ebits/young.hpp"

namespace ebits {

/// Environment variable overriding the amplitude budget (a positive integer).
inline constexpr const char* kAmplitudeBudgetEnv = "EBITS_AMPLITUDE_BUDGET";
inline constexpr std::size_t kDefaultAmplitudeBudget = std::size_t{1} << 24;
inline constexpr int kMaxLocalDim = 4;

/// kDefaultAmplitudeBudget unless kAmplitudeBudgetEnv holds a positive integer.
std::size_t amplitude_budget_from_env();

struct SchurOptions {
  int n_max = 6;
  /// Upper limit on (d_A d_B d_C)^n, the length of psi^{(x) n}.
  std::size_t amplitude_budget = amplitude_budget_from_env();
};

/// P_lambda on (C^d)^{(x) n}. Every P_lambda commutes with the diagonal torus,
/// so it is stored as dense blocks over the weight spaces (strings with a
/// fixed letter count).
class YoungProjector {
 public:
  /// Throws InputError unless 1 <= d <= kMaxLocalDim.
  YoungProjector(const YoungData& lambda, int d);

  int n() const noexcept { return n_; }
  int local_dim() const noexcept { return d_; }
  const Partition& partition() const noexcept { return lambda_; }
  /// lambda has more rows than d.
  bool zero() const noexcept { return blocks_.empty(); }

  /// Applies P_lambda to the middle leg of a row-major outer x d^n x inner
  /// array; in and out must not alias.
  void apply(const cplx* in, cplx* out, std::size_t outer, std::size_t inner) const;
  /// Per weight space Gram matrices G G^* of the middle leg, where the columns
  /// of G run over (outer, inner); keyed by the first string of the weight
  /// space. Only the weight spaces this projector touches are included.
  using Grams = std::map<Eigen::Index, CMatrix>;
  Grams grams(const cplx* in, std::size_t outer, std::size_t inner) const;
  /// <v| P_lambda |v> from the Gram matrices of v; these must cover every
  /// weight space of this projector (those of the symmetric projector do).
  double expectation(const Grams& grams) const;

  /// Dense d^n x d^n matrix.
  Eigen::MatrixXd dense() const;
  double trace() const;

 private:
  struct Block {
    std::vector<Eigen::Index> strings;
    CMatrix matrix;
  };
  Partition lambda_;
  int n_ = 0;
  int d_ = 1;
  std::size_t size_ = 1;
  std::vector<Block> blocks_;
};

/// P_lambda on the n copies of factor `which` (A, B or C) of a vector in
/// (H_A (x) H_B (x) H_C)^{(x) n}, laid out as tensor_power does: all A copies,
/// then all B copies, then all C copies. Returns zero when lambda has more rows
/// than the local dimension.
CVector young_projector_apply(const CVector& vec, const Dims& local_dims, const YoungData& lambda,
                              Subsystem which);

struct SpectrumEntry {
  PartitionTriple lambda;
  double weight;  ///< ||P_lambda psi^{(x) n}||^2, clipped to [0, 1]
};

struct SpectrumTable {
  int n = 0;
  Dims dims{};
  /// Every triple whose rows fit the local dimensions, in reverse
  /// lexicographic order per party.
  std::vector<SpectrumEntry> entries;

  double weight(const PartitionTriple& lambda) const;
  double total() const;
};

/// Throws BudgetExceeded when n > options.n_max or the n-copy vector is longer
/// than options.amplitude_budget, and InputError for n < 1 or a local
/// dimension above kMaxLocalDim.
SpectrumTable spectrum_table(const PureTripartiteState& state, int n, const SchurOptions& options = {});

/// ||Q^n_U psi^{(x) n}||^2 for U the eps-ball around `center`: the total weight
/// of triples mu with mu / n majorized by a member of the ball.
double downset_weight(const SpectrumTable& table, const NormalizedTriple& center, double eps);
double downset_weight(const PureTripartiteState& state, int n, const NormalizedTriple& center, double eps,
                      const SchurOptions& options = {});

/// -(1/n) log2 downset_weight for each n in n_list; +inf on zero weight.
std::vector<double> i_rate_estimate(const PureTripartiteState& state, const NormalizedTriple& center, double eps,
                                    const std::vector<int>& n_list, const SchurOptions& options = {});

struct GeneralRateEstimate {
  double value = 0.0;  ///< 0 when no triple is feasible
  std::optional<PartitionTriple> lambda;  ///< the maximizing triple
  double exponent = 0.0;  ///< -(1/n) log2 ||Q_lambda psi^{(x) n}||^2 at the maximizer
};

/// Largest min{H(lambda_A / n), H(lambda_B / n)} over triples lambda with
/// -(1/n) log2 ||Q_lambda psi^{(x) n}||^2 <= r, where Q_lambda projects onto
/// all triples dominated by lambda. Each feasible triple certifies an
/// achievable strong converse rate, so the result is a lower bound. r may be
/// +inf.
GeneralRateEstimate general_sc_rate_estimate(const SpectrumTable& table, double r);
GeneralRateEstimate general_sc_rate_estimate(const PureTripartiteState& state, double r, int n,
                                             const SchurOptions& options = {});

/// How the n-copy weight enters M_n.
enum class WeightConvention {
  Norm,         ///< (1/n) log2 ||P_lambda psi^{(x) n}||, i.e. half of log2 w
  SquaredNorm,  ///< (1/n) log2 ||P_lambda psi^{(x) n}||^2
};

struct SandwichBounds {
  double lower = 0.0;  ///< M_n
  double upper = 0.0;  ///< M_n + slack
  double slack = 0.0;  ///< [sum_j theta_j d_j + alpha/(1-alpha) sum_j d_j] log2(n+1) / n
  PartitionTriple argmax;
};

/// M_n = max over weight-positive triples of
/// sum_j theta_j H(lambda_j / n) + alpha/(1-alpha) (1/n) log2 of the weight
/// (per `convention`). Throws InputError unless alpha is in (0, 1) and theta
/// is a distribution.
SandwichBounds e_alpha_theta_bounds(const SpectrumTable& table, double alpha, const std::array<double, 3>& theta,
                                    WeightConvention convention = WeightConvention::Norm);
SandwichBounds e_alpha_theta_bounds(const PureTripartiteState& state, double alpha,
                                    const std::array<double, 3>& theta, int n,
                                    WeightConvention convention = WeightConvention::Norm,
                                    const SchurOptions& options = {});

/// E^{alpha,theta} of a free-support state: h_alpha_theta of its measured
/// distribution.
double e_alpha_theta_variational(const FreeSupportCertificate& certificate, double alpha,
                                 const std::array<double, 3>& theta);

}  // namespace ebits
