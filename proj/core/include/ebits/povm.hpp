#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ebits/state.hpp"

namespace ebits {

/// The bipartite A:B amplitude matrices Z_k = <k|_C psi, one per vector of a
/// basis diagonalizing the C marginal. Stored sparsely.
class SliceSet {
 public:
  struct Entry {
    int a, b, k;
    cplx amp;
  };

  /// Uses the computational basis when the C marginal is diagonal within
  /// 1e-12, otherwise an eigenbasis from the Hermitian solver.
  explicit SliceSet(const PureTripartiteState& state);
  /// Throws InputError unless `c_basis` is unitary and diagonalizes the C
  /// marginal within 1e-10.
  SliceSet(const PureTripartiteState& state, const CMatrix& c_basis);

  const Dims& dims() const noexcept { return dims_; }
  int count() const noexcept { return dims_[2]; }
  const CMatrix& c_basis() const noexcept { return c_basis_; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  bool real() const noexcept { return real_; }

  /// Dense Z_k.
  CMatrix slice(int k) const;
  /// sum_k signs[k] Z_k. Throws InputError unless signs has d_C entries in {-1, +1}.
  CMatrix project(std::span<const int> signs) const;

 private:
  void load(const PureTripartiteState& state, const CMatrix& c_basis, bool identity);

  Dims dims_;
  CMatrix c_basis_;
  std::vector<Entry> entries_;
  bool real_ = true;
};

/// sum_k signs[k] Z_k in the basis `c_basis` (see SliceSet).
CMatrix rademacher_project(const PureTripartiteState& state, std::span<const int> signs, const CMatrix& c_basis);

/// Largest eigenvalue of Z Z^*, via the smaller Gram matrix and a real
/// solver when Z is real.
double largest_schmidt_weight(const CMatrix& z);

struct TailBound {
  double value;
  bool vacuous;  ///< value >= 1
};

/// (d_A + d_B) exp(-2^{min{H_inf(A), H_inf(B)} - h} / 2): bound on the
/// probability that a Rademacher slice has E_inf <= h.
TailBound tail_bound(const PureTripartiteState& state, double h);

/// min{H_inf(A), H_inf(B)}.
double deterministic_rate(const PureTripartiteState& state);

/// min{H_inf(A), H_inf(B)} - log2(4 ln(2 d_C^4 (d_A + d_B))).
double povm_entropy_threshold(const PureTripartiteState& state);
/// max(0, ceil(povm_entropy_threshold)).
int guaranteed_ebits(const PureTripartiteState& state);

/// Convex weights lambda with sum_i lambda_i ops_i = I, or std::nullopt when
/// the identity is outside the convex hull (or the solution misses the
/// identity by more than `tol` in operator norm).
std::optional<std::vector<double>> hull_membership(std::span<const CMatrix> ops, double tol = 1e-8);

enum class SamplingScheme {
  Auto,  ///< Iid up to d_C = 8, HadamardOrbit beyond
  Iid,   ///< independent uniform sign vectors, weights from the hull LP
  /// v * h for the rows h of a Sylvester Hadamard matrix and one random v;
  /// uniform weights are exactly complete, so no LP is needed.
  HadamardOrbit,
};

struct PovmOptions {
  std::optional<long long> samples;  ///< Iid default d_C^4; orbit default max(4 N, 4096)
  int max_retries = 64;
  SamplingScheme scheme = SamplingScheme::Auto;
  /// Drop low-entropy vectors as long as the identity stays in the hull,
  /// raising the certified floor.
  bool maximize_floor = true;
};

struct PovmCertificate {
  std::vector<std::vector<int>> vectors;  ///< sign vectors with positive weight
  std::vector<double> weights;            ///< POVM element i is weights[i] |v_i><v_i|
  int guaranteed_ebits = 0;
  double min_entropy_floor = 0.0;  ///< min E_inf over the post-measurement states
  double completeness_residual = 0.0;
  std::uint64_t seed = 0;
  int attempts = 0;
  SamplingScheme scheme = SamplingScheme::Iid;
  CMatrix c_basis;
};

/// Samples sign vectors, certifies every post-measurement E_inf, and finds
/// convex weights completing the POVM. Resamples (continuing the seeded
/// stream) when the hull is infeasible or a sample falls below
/// guaranteed_ebits. Throws RetryExhausted after options.max_retries attempts.
PovmCertificate build_povm(const PureTripartiteState& state, std::uint64_t seed, const PovmOptions& options = {});

/// ||sum_i w_i v_i v_i^T - I|| in operator norm.
double completeness_residual(std::span<const std::vector<int>> vectors, std::span<const double> weights);

/// E_inf of the slices for `count` independent uniform sign vectors.
std::vector<double> sample_slice_entropies(const PureTripartiteState& state, long long count, std::uint64_t seed);

}  // namespace ebits
