#include "ebits/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "ebits/errors.hpp"

namespace ebits {

Partition canonical_partition(std::vector<int> parts) {
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) throw InputError("partition parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1]) throw InputError("partition parts must be nonincreasing");
  }
  return parts;
}

int weight(const Partition& lam) { return std::accumulate(lam.begin(), lam.end(), 0); }

PartitionTriple::PartitionTriple(Partition pa, Partition pb, Partition pc)
    : a(canonical_partition(std::move(pa))), b(canonical_partition(std::move(pb))), c(canonical_partition(std::move(pc))) {
  if (weight(a) != weight(b) || weight(b) != weight(c)) throw InputError("partition triple has unequal weights");
}

namespace {

std::vector<double> sorted_probabilities(std::vector<double> v) {
  for (double x : v) {
    if (!std::isfinite(x) || x < -kMajorizationTolerance) throw InputError("normalized triple entries must be >= 0");
  }
  std::sort(v.begin(), v.end(), std::greater<>());
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-10) throw InputError("normalized triple entries must sum to 1");
  return v;
}

std::vector<double> scaled(const Partition& lam, double n) {
  std::vector<double> out;
  out.reserve(lam.size());
  for (int x : lam) out.push_back(x / n);
  return out;
}

// Partial sums of x sorted nonincreasingly and padded to length len.
std::vector<double> partial_sums(std::span<const double> x, std::size_t len) {
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end(), std::greater<>());
  s.resize(std::max(len, s.size()), 0.0);
  std::partial_sum(s.begin(), s.end(), s.begin());
  return s;
}

}  // namespace

NormalizedTriple::NormalizedTriple(std::vector<double> va, std::vector<double> vb, std::vector<double> vc)
    : a(sorted_probabilities(std::move(va))), b(sorted_probabilities(std::move(vb))), c(sorted_probabilities(std::move(vc))) {}

NormalizedTriple NormalizedTriple::from_partitions(const PartitionTriple& lam) {
  const double n = lam.n();
  if (n <= 0) throw InputError("cannot normalize the empty partition triple");
  return NormalizedTriple(scaled(lam.a, n), scaled(lam.b, n), scaled(lam.c, n));
}

bool majorizes(std::span<const double> x, std::span<const double> y) {
  const std::size_t len = std::max(x.size(), y.size());
  const auto sx = partial_sums(x, len);
  const auto sy = partial_sums(y, len);
  if (len == 0) return true;
  if (std::abs(sx.back() - sy.back()) > kMajorizationTolerance) return false;
  for (std::size_t k = 0; k < len; ++k) {
    if (sx[k] < sy[k] - kMajorizationTolerance) return false;
  }
  return true;
}

bool majorizes(const Partition& x, const Partition& y) {
  const std::vector<double> dx(x.begin(), x.end());
  const std::vector<double> dy(y.begin(), y.end());
  return majorizes(dx, dy);
}

bool nielsen_transformable(const MarginalSpectrum& source, const MarginalSpectrum& target) {
  return majorizes(target.values(), source.values());
}

int max_epr_extractable(const MarginalSpectrum& spec) {
  return static_cast<int>(std::floor(min_entropy(spec.values()) + 1e-12));
}

double majorization_deficit(std::span<const double> mu, std::span<const double> center) {
  const std::size_t len = std::max(mu.size(), center.size());
  const auto sm = partial_sums(mu, len);
  const auto sc = partial_sums(center, len);
  double deficit = 0.0;
  for (std::size_t k = 0; k < len; ++k) deficit = std::max(deficit, sm[k] - sc[k]);
  return deficit;
}

bool triple_majorized_by_ball(const NormalizedTriple& mu, const NormalizedTriple& center, double eps) {
  if (!(eps >= 0.0)) throw InputError("ball radius must be >= 0");
  // Moving mass t from the smallest entries of the center onto its largest
  // raises every partial sum by min(t, 1 - S_k) at l1 cost 2t, and no vector
  // at that distance does better. So each party needs deficit < eps / 2.
  for (int party = 0; party < 3; ++party) {
    const double deficit = majorization_deficit(mu[party], center[party]);
    if (deficit > kMajorizationTolerance && !(deficit < 0.5 * eps)) return false;
  }
  return true;
}

}  // namespace ebits
