#pragma once

#include <array>
#include <limits>
#include <span>
#include <vector>

#include "ebits/state.hpp"

namespace ebits {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Entries below this are treated as exact zeros when computing supports.
inline constexpr double kZeroProbability = 1e-14;

/// Probability vector over the index set {0, ..., size-1}.
class Distribution {
 public:
  static constexpr double kSumTolerance = 1e-12;

  Distribution() = default;
  /// Throws InputError on negative or non-finite entries or when the sum
  /// deviates from 1 by more than kSumTolerance.
  explicit Distribution(std::vector<double> probs);
  /// Divides nonnegative weights by their sum.
  static Distribution normalize(std::vector<double> weights);
  static Distribution uniform(std::size_t n);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

/// Distribution over index triples (a, b, c) of a product alphabet.
class JointDistribution {
 public:
  using Label = std::array<int, 3>;

  JointDistribution() = default;
  /// Throws InputError on duplicate or negative labels, or a length mismatch.
  JointDistribution(std::vector<Label> labels, Distribution probs);

  std::span<const Label> labels() const noexcept { return labels_; }
  const Distribution& probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return labels_.size(); }

  /// Marginal on party 0, 1 or 2, indexed by label value (0 .. max label).
  std::vector<double> party_marginal(int party) const;
  /// Same labels, new probabilities.
  JointDistribution with_probs(Distribution probs) const { return JointDistribution(labels_, std::move(probs)); }

 private:
  std::vector<Label> labels_;
  Distribution probs_;
};

/// Nonincreasing eigenvalues of a density matrix (Schmidt coefficients
/// squared), summing to 1.
class MarginalSpectrum {
 public:
  static constexpr double kSumTolerance = 1e-10;

  MarginalSpectrum() = default;
  /// Sorts nonincreasingly; sets entries in (-1e-10, kZeroProbability] to zero;
  /// throws InputError on larger negatives or a bad total.
  explicit MarginalSpectrum(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double largest() const { return values_.empty() ? 0.0 : values_.front(); }

 private:
  std::vector<double> values_;
};

/// Eigenvalues of a Hermitian PSD trace-one matrix.
MarginalSpectrum spectrum_of(const CMatrix& density);
/// Spectrum of marginal(state, subsystem).
MarginalSpectrum marginal_spectrum(const PureTripartiteState& state, Subsystem subsystem);

/// Renyi entropy in bits for alpha in [0, inf]; alpha = 0, 1 and inf take the
/// continuous extensions. Throws InputError for negative or NaN alpha.
double renyi_entropy(std::span<const double> p, double alpha);
inline double renyi_entropy(const Distribution& p, double alpha) { return renyi_entropy(p.probs(), alpha); }
inline double renyi_entropy(const MarginalSpectrum& p, double alpha) { return renyi_entropy(p.values(), alpha); }

double shannon_entropy(std::span<const double> p);
double min_entropy(std::span<const double> p);
/// log2 of the number of entries above kZeroProbability.
double max_entropy(std::span<const double> p);

/// D(q || p) in bits; +inf when supp q is not contained in supp p.
/// Throws InputError on length mismatch.
double relative_entropy(std::span<const double> q, std::span<const double> p);
inline double relative_entropy(const Distribution& q, const Distribution& p) {
  return relative_entropy(q.probs(), p.probs());
}

/// E_inf of the bipartite pure state with coefficient matrix Z:
/// -2 log2 of the largest singular value. Throws InputError unless
/// ||Z||_F = 1 within 1e-10.
double min_entropy_entanglement(const CMatrix& z);

/// Binary entropy h(x) in bits.
double binary_entropy(double x);

}  // namespace ebits
