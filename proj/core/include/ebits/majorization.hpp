#pragma once

#include <span>
#include <vector>

#include "ebits/entropy.hpp"

namespace ebits {

/// Integer partition: nonincreasing positive parts.
using Partition = std::vector<int>;

/// Normalizes a partition: drops trailing zeros, throws InputError if the
/// parts are negative or not nonincreasing.
Partition canonical_partition(std::vector<int> parts);
int weight(const Partition& lam);

/// Young-diagram triple of a common weight n.
struct PartitionTriple {
  Partition a, b, c;

  PartitionTriple() = default;
  /// Canonicalizes each partition and throws InputError on unequal weights.
  PartitionTriple(Partition a, Partition b, Partition c);

  int n() const { return weight(a); }
  const Partition& operator[](int party) const { return party == 0 ? a : party == 1 ? b : c; }
  friend bool operator==(const PartitionTriple&, const PartitionTriple&) = default;
  friend auto operator<=>(const PartitionTriple&, const PartitionTriple&) = default;
};

/// Triple of probability vectors, each sorted nonincreasingly.
struct NormalizedTriple {
  std::vector<double> a, b, c;

  NormalizedTriple() = default;
  /// Sorts each vector and throws InputError unless each sums to 1 within 1e-10.
  NormalizedTriple(std::vector<double> a, std::vector<double> b, std::vector<double> c);
  /// lambda / n.
  static NormalizedTriple from_partitions(const PartitionTriple& lam);

  const std::vector<double>& operator[](int party) const { return party == 0 ? a : party == 1 ? b : c; }
};

inline constexpr double kMajorizationTolerance = 1e-10;

/// x majorizes y: after sorting and zero padding, every partial sum of x is at
/// least the matching partial sum of y, and the totals agree.
bool majorizes(std::span<const double> x, std::span<const double> y);
bool majorizes(const Partition& x, const Partition& y);

/// Nielsen: source -> target by deterministic LOCC iff target majorizes source.
bool nielsen_transformable(const MarginalSpectrum& source, const MarginalSpectrum& target);

/// floor(H_inf(spec)).
int max_epr_extractable(const MarginalSpectrum& spec);

/// Smallest total mass t such that shifting t from the tail of `center` to its
/// head yields a vector majorizing `mu`: max_k (S_k(mu) - S_k(center)), floored
/// at 0.
double majorization_deficit(std::span<const double> mu, std::span<const double> center);

/// True iff some triple within max-l1 distance < eps of `center` majorizes
/// `mu` componentwise. eps = 0 means the single point `center`.
bool triple_majorized_by_ball(const NormalizedTriple& mu, const NormalizedTriple& center, double eps);

}  // namespace ebits
