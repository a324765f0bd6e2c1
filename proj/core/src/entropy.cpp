#include "ebits/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ebits/errors.hpp"

namespace ebits {

namespace {

void check_probabilities(std::span<const double> p) {
  for (double x : p) {
    if (!std::isfinite(x) || x < 0.0) throw InputError("probabilities must be finite and nonnegative");
  }
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  check_probabilities(probs_);
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw InputError("distribution does not sum to 1 (sum " + std::to_string(total) + ")");
  }
}

Distribution Distribution::normalize(std::vector<double> weights) {
  check_probabilities(weights);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw InputError("cannot normalize all-zero weights");
  for (double& w : weights) w /= total;
  return Distribution(std::move(weights));
}

Distribution Distribution::uniform(std::size_t n) {
  if (n == 0) throw InputError("uniform distribution needs a nonempty support");
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

JointDistribution::JointDistribution(std::vector<Label> labels, Distribution probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
  if (labels_.size() != probs_.size()) throw InputError("joint distribution: label and probability counts differ");
  std::vector<Label> sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("joint distribution: duplicate labels");
  }
  for (const auto& l : labels_) {
    if (l[0] < 0 || l[1] < 0 || l[2] < 0) throw InputError("joint distribution: negative label");
  }
}

std::vector<double> JointDistribution::party_marginal(int party) const {
  const auto s = static_cast<std::size_t>(party);
  int top = -1;
  for (const auto& l : labels_) top = std::max(top, l.at(s));
  std::vector<double> m(static_cast<std::size_t>(top + 1), 0.0);
  for (std::size_t i = 0; i < labels_.size(); ++i) m[static_cast<std::size_t>(labels_[i][s])] += probs_[i];
  return m;
}

MarginalSpectrum::MarginalSpectrum(std::vector<double> values) : values_(std::move(values)) {
  for (double& x : values_) {
    if (!std::isfinite(x) || x < -1e-10) throw InputError("spectrum entries must be nonnegative");
    if (x <= kZeroProbability) x = 0.0;
  }
  std::sort(values_.begin(), values_.end(), std::greater<>());
  const double total = std::accumulate(values_.begin(), values_.end(), 0.0);
  if (std::abs(total - 1.0) > kSumTolerance) {
    throw InputError("spectrum does not sum to 1 (sum " + std::to_string(total) + ")");
  }
}

MarginalSpectrum spectrum_of(const CMatrix& density) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(density, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return MarginalSpectrum(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

MarginalSpectrum marginal_spectrum(const PureTripartiteState& state, Subsystem subsystem) {
  return spectrum_of(marginal(state, subsystem));
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double min_entropy(std::span<const double> p) {
  double m = 0.0;
  for (double x : p) m = std::max(m, x);
  return m > 0.0 ? -std::log2(m) : kInf;
}

double max_entropy(std::span<const double> p) {
  const auto support = std::count_if(p.begin(), p.end(), [](double x) { return x > kZeroProbability; });
  return support > 0 ? std::log2(static_cast<double>(support)) : 0.0;
}

double renyi_entropy(std::span<const double> p, double alpha) {
  if (std::isnan(alpha) || alpha < 0.0) throw InputError("Renyi order must be >= 0");
  if (alpha == 0.0) return max_entropy(p);
  if (alpha == 1.0) return shannon_entropy(p);
  if (std::isinf(alpha)) return min_entropy(p);
  const double am1 = alpha - 1.0;
  if (std::abs(am1) < 0.25) {
    // log sum p^a = log1p(sum p (p^{a-1} - 1)) stays accurate for a near 1.
    double excess = 0.0;
    for (double x : p) {
      if (x > 0.0) excess += x * std::expm1(am1 * std::log(x));
    }
    return std::log1p(excess) / std::log(2.0) / (1.0 - alpha);
  }
  double top = -kInf;
  for (double x : p) {
    if (x > 0.0) top = std::max(top, alpha * std::log(x));
  }
  if (!std::isfinite(top)) return 0.0;
  double sum = 0.0;
  for (double x : p) {
    if (x > 0.0) sum += std::exp(alpha * std::log(x) - top);
  }
  return (top + std::log(sum)) / std::log(2.0) / (1.0 - alpha);
}

double relative_entropy(std::span<const double> q, std::span<const double> p) {
  if (q.size() != p.size()) throw InputError("relative_entropy: distributions over different label sets");
  double d = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] <= 0.0) continue;
    if (p[i] <= 0.0) return kInf;
    d += q[i] * std::log2(q[i] / p[i]);
  }
  return std::max(d, 0.0);
}

double min_entropy_entanglement(const CMatrix& z) {
  const double fro2 = z.squaredNorm();
  if (std::abs(fro2 - 1.0) > 1e-10) throw InputError("coefficient matrix must have unit Frobenius norm");
  Eigen::JacobiSVD<CMatrix> svd(z);
  const double s = svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
  return -2.0 * std::log2(s);
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

}  // namespace ebits
