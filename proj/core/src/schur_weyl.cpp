#include "ebits/schur_weyl.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <map>
#include <numeric>
#include <string>

#include "ebits/entropy.hpp"
#include "ebits/errors.hpp"

namespace ebits {

std::size_t amplitude_budget_from_env() {
  const char* raw = std::getenv(kAmplitudeBudgetEnv);
  if (raw == nullptr) return kDefaultAmplitudeBudget;
  std::size_t value = 0;
  const char* end = raw + std::strlen(raw);
  const auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc() || ptr != end || value == 0) return kDefaultAmplitudeBudget;
  return value;
}

YoungProjector::YoungProjector(const YoungData& lambda, int d) : lambda_(lambda.partition), n_(lambda.n()), d_(d) {
  if (d < 1 || d > kMaxLocalDim) throw InputError("Young projectors need local dimension in [1, 4]");
  if (n_ < 1) throw InputError("Young projectors need n >= 1");
  for (int i = 0; i < n_; ++i) size_ *= static_cast<std::size_t>(d);
  if (static_cast<int>(lambda_.size()) > d) return;

  // Letters of each string, copy 1 most significant, and place values.
  std::vector<int> digits(size_ * static_cast<std::size_t>(n_));
  std::vector<std::size_t> place(static_cast<std::size_t>(n_));
  for (int i = n_ - 1, p = 1; i >= 0; --i, p *= d) place[static_cast<std::size_t>(i)] = static_cast<std::size_t>(p);
  std::map<std::vector<int>, std::size_t> block_of_content;
  std::vector<std::size_t> block_of(size_);
  std::vector<Eigen::Index> position(size_);
  for (std::size_t s = 0; s < size_; ++s) {
    std::vector<int> content(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < n_; ++i) {
      const int letter = static_cast<int>(s / place[static_cast<std::size_t>(i)] % static_cast<std::size_t>(d));
      digits[s * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i)] = letter;
      ++content[static_cast<std::size_t>(letter)];
    }
    const auto [it, fresh] = block_of_content.try_emplace(content, blocks_.size());
    if (fresh) blocks_.emplace_back();
    Block& block = blocks_[it->second];
    block_of[s] = it->second;
    position[s] = static_cast<Eigen::Index>(block.strings.size());
    block.strings.push_back(static_cast<Eigen::Index>(s));
  }

  std::vector<Eigen::MatrixXd> sums;
  sums.reserve(blocks_.size());
  for (const Block& block : blocks_) {
    const auto m = static_cast<Eigen::Index>(block.strings.size());
    sums.emplace_back(Eigen::MatrixXd::Zero(m, m));
  }
  std::vector<int> perm(static_cast<std::size_t>(n_));
  std::iota(perm.begin(), perm.end(), 0);
  double factorial = 1.0;
  do {
    const std::int64_t chi = lambda.character_table_row.at(cycle_type(perm));
    if (chi == 0) continue;
    for (std::size_t t = 0; t < size_; ++t) {
      std::size_t s = 0;
      for (int i = 0; i < n_; ++i) {
        s += static_cast<std::size_t>(digits[t * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i)]) *
             place[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
      }
      sums[block_of[t]](position[s], position[t]) += static_cast<double>(chi);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (int i = 2; i <= n_; ++i) factorial *= i;
  const double scale = static_cast<double>(lambda.dim_symmetric) / factorial;

  std::vector<Block> kept;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (sums[b].cwiseAbs().maxCoeff() == 0.0) continue;
    blocks_[b].matrix = (sums[b] * scale).cast<cplx>();
    kept.push_back(std::move(blocks_[b]));
  }
  blocks_ = std::move(kept);
}

void YoungProjector::apply(const cplx* in, cplx* out, std::size_t outer, std::size_t inner) const {
  std::fill(out, out + outer * size_ * inner, cplx{});
  const auto cols = static_cast<Eigen::Index>(outer * inner);
  for (const Block& block : blocks_) {
    const auto m = static_cast<Eigen::Index>(block.strings.size());
    // Column o * inner + k of `gathered` holds the block's strings at (o, k).
    CMatrix gathered(m, cols);
    for (std::size_t o = 0; o < outer; ++o) {
      for (Eigen::Index j = 0; j < m; ++j) {
        const cplx* src = in + (o * size_ + static_cast<std::size_t>(block.strings[static_cast<std::size_t>(j)])) * inner;
        for (std::size_t k = 0; k < inner; ++k) gathered(j, static_cast<Eigen::Index>(o * inner + k)) = src[k];
      }
    }
    const CMatrix result = block.matrix * gathered;
    for (std::size_t o = 0; o < outer; ++o) {
      for (Eigen::Index j = 0; j < m; ++j) {
        cplx* dst = out + (o * size_ + static_cast<std::size_t>(block.strings[static_cast<std::size_t>(j)])) * inner;
        for (std::size_t k = 0; k < inner; ++k) dst[k] = result(j, static_cast<Eigen::Index>(o * inner + k));
      }
    }
  }
}

YoungProjector::Grams YoungProjector::grams(const cplx* in, std::size_t outer, std::size_t inner) const {
  Grams out;
  const auto cols = static_cast<Eigen::Index>(outer * inner);
  for (const Block& block : blocks_) {
    const auto m = static_cast<Eigen::Index>(block.strings.size());
    CMatrix gathered(m, cols);
    for (std::size_t o = 0; o < outer; ++o) {
      for (Eigen::Index j = 0; j < m; ++j) {
        const cplx* src = in + (o * size_ + static_cast<std::size_t>(block.strings[static_cast<std::size_t>(j)])) * inner;
        for (std::size_t k = 0; k < inner; ++k) gathered(j, static_cast<Eigen::Index>(o * inner + k)) = src[k];
      }
    }
    out.emplace(block.strings.front(), gathered * gathered.adjoint());
  }
  return out;
}

double YoungProjector::expectation(const Grams& grams) const {
  double total = 0.0;
  for (const Block& block : blocks_) {
    const auto it = grams.find(block.strings.front());
    if (it == grams.end()) throw InputError("Gram matrices miss a weight space");
    total += block.matrix.cwiseProduct(it->second.transpose()).sum().real();
  }
  return total;
}

Eigen::MatrixXd YoungProjector::dense() const {
  const auto size = static_cast<Eigen::Index>(size_);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(size, size);
  for (const Block& block : blocks_) {
    const auto m = static_cast<Eigen::Index>(block.strings.size());
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) {
        out(block.strings[static_cast<std::size_t>(i)], block.strings[static_cast<std::size_t>(j)]) =
            block.matrix(i, j).real();
      }
  }
  return out;
}

double YoungProjector::trace() const {
  double total = 0.0;
  for (const Block& block : blocks_) total += block.matrix.trace().real();
  return total;
}

namespace {

std::size_t power(int base, int n) {
  std::size_t out = 1;
  for (int i = 0; i < n; ++i) out *= static_cast<std::size_t>(base);
  return out;
}

// Outer and inner extents around factor `which` of the n-copy layout.
std::pair<std::size_t, std::size_t> leg_extents(const Dims& local_dims, int n, Subsystem which) {
  const std::size_t da = power(local_dims[0], n);
  const std::size_t db = power(local_dims[1], n);
  const std::size_t dc = power(local_dims[2], n);
  switch (which) {
    case Subsystem::A:
      return {1, db * dc};
    case Subsystem::B:
      return {da, dc};
    case Subsystem::C:
      return {da * db, 1};
    default:
      throw InputError("Young projectors act on A, B or C");
  }
}

int party_index(Subsystem which) { return which == Subsystem::A ? 0 : which == Subsystem::B ? 1 : 2; }

CVector apply_leg(const YoungProjector& proj, const CVector& vec, const Dims& local_dims, Subsystem which) {
  const auto [outer, inner] = leg_extents(local_dims, proj.n(), which);
  CVector out(vec.size());
  proj.apply(vec.data(), out.data(), outer, inner);
  return out;
}

void check_alpha_theta(double alpha, const std::array<double, 3>& theta) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  double total = 0.0;
  for (double w : theta) {
    if (!(w >= 0.0)) throw InputError("theta weights must be >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InputError("theta weights must sum to 1");
}

double partition_entropy(const Partition& lam) {
  const double n = weight(lam);
  std::vector<double> p(lam.begin(), lam.end());
  for (double& x : p) x /= n;
  return shannon_entropy(p);
}

}  // namespace

CVector young_projector_apply(const CVector& vec, const Dims& local_dims, const YoungData& lambda, Subsystem which) {
  const int n = lambda.n();
  if (static_cast<std::size_t>(vec.size()) != power(local_dims[0] * local_dims[1] * local_dims[2], n)) {
    throw InputError("vector length does not match (d_A d_B d_C)^n");
  }
  const YoungProjector proj(lambda, local_dims[static_cast<std::size_t>(party_index(which))]);
  return apply_leg(proj, vec, local_dims, which);
}

double SpectrumTable::weight(const PartitionTriple& lambda) const {
  for (const SpectrumEntry& e : entries) {
    if (e.lambda == lambda) return e.weight;
  }
  return 0.0;
}

double SpectrumTable::total() const {
  double sum = 0.0;
  for (const SpectrumEntry& e : entries) sum += e.weight;
  return sum;
}

SpectrumTable spectrum_table(const PureTripartiteState& state, int n, const SchurOptions& options) {
  if (n < 1) throw InputError("spectrum_table needs n >= 1");
  const Dims dims = state.dims();
  for (int d : dims) {
    if (d > kMaxLocalDim) throw InputError("Schur-Weyl computations support local dimension <= 4");
  }
  if (n > options.n_max) {
    throw BudgetExceeded("n = " + std::to_string(n) + " exceeds n_max = " + std::to_string(options.n_max));
  }
  const std::size_t base = static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  std::size_t length = 1;
  for (int i = 0; i < n; ++i) {
    length *= base;
    if (length > options.amplitude_budget) {
      throw BudgetExceeded("(d_A d_B d_C)^n exceeds the amplitude budget of " +
                           std::to_string(options.amplitude_budget));
    }
  }

  const CVector psi = n == 1 ? state.amplitudes() : tensor_power(state, n).amplitudes();
  std::array<std::vector<YoungProjector>, 3> projectors;
  for (int party = 0; party < 3; ++party) {
    for (Partition& lam : partitions(n, dims[static_cast<std::size_t>(party)])) {
      projectors[static_cast<std::size_t>(party)].emplace_back(YoungData::make(std::move(lam)),
                                                               dims[static_cast<std::size_t>(party)]);
    }
  }

  SpectrumTable table;
  table.n = n;
  table.dims = dims;
  for (const YoungProjector& pa : projectors[0]) {
    const CVector xa = apply_leg(pa, psi, dims, Subsystem::A);
    const bool empty_a = xa.squaredNorm() < 1e-30;
    for (const YoungProjector& pb : projectors[1]) {
      const CVector xab = empty_a ? CVector() : apply_leg(pb, xa, dims, Subsystem::B);
      const bool empty_ab = empty_a || xab.squaredNorm() < 1e-30;
      YoungProjector::Grams grams;
      if (!empty_ab) {
        const auto [outer, inner] = leg_extents(dims, n, Subsystem::C);
        grams = projectors[2].front().grams(xab.data(), outer, inner);
      }
      for (const YoungProjector& pc : projectors[2]) {
        const double w = empty_ab ? 0.0 : pc.expectation(grams);
        table.entries.push_back({PartitionTriple(pa.partition(), pb.partition(), pc.partition()),
                                 std::clamp(w, 0.0, 1.0)});
      }
    }
  }
  return table;
}

double downset_weight(const SpectrumTable& table, const NormalizedTriple& center, double eps) {
  if (!(eps >= 0.0)) throw InputError("eps must be >= 0");
  double sum = 0.0;
  for (const SpectrumEntry& e : table.entries) {
    if (e.weight > 0.0 && triple_majorized_by_ball(NormalizedTriple::from_partitions(e.lambda), center, eps)) {
      sum += e.weight;
    }
  }
  return std::min(sum, 1.0);
}

double downset_weight(const PureTripartiteState& state, int n, const NormalizedTriple& center, double eps,
                      const SchurOptions& options) {
  return downset_weight(spectrum_table(state, n, options), center, eps);
}

std::vector<double> i_rate_estimate(const PureTripartiteState& state, const NormalizedTriple& center, double eps,
                                    const std::vector<int>& n_list, const SchurOptions& options) {
  std::vector<double> out;
  out.reserve(n_list.size());
  for (int n : n_list) {
    const double w = downset_weight(state, n, center, eps, options);
    out.push_back(w > 0.0 ? std::max(0.0, -std::log2(w) / n) : kInf);
  }
  return out;
}

GeneralRateEstimate general_sc_rate_estimate(const SpectrumTable& table, double r) {
  if (!(r >= 0.0)) throw InputError("r must be >= 0");
  const std::size_t count = table.entries.size();
  std::vector<NormalizedTriple> normalized;
  normalized.reserve(count);
  for (const SpectrumEntry& e : table.entries) normalized.push_back(NormalizedTriple::from_partitions(e.lambda));

  GeneralRateEstimate best;
  for (std::size_t i = 0; i < count; ++i) {
    double q = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
      if (table.entries[j].weight > 0.0 && triple_majorized_by_ball(normalized[j], normalized[i], 0.0)) {
        q += table.entries[j].weight;
      }
    }
    if (q <= 0.0) continue;
    const double exponent = std::max(0.0, -std::log2(std::min(q, 1.0)) / table.n);
    if (exponent > r + 1e-12) continue;
    const PartitionTriple& lam = table.entries[i].lambda;
    const double value = std::min(partition_entropy(lam.a), partition_entropy(lam.b));
    if (!best.lambda || value > best.value || (value == best.value && exponent < best.exponent)) {
      best = {value, lam, exponent};
    }
  }
  return best;
}

GeneralRateEstimate general_sc_rate_estimate(const PureTripartiteState& state, double r, int n,
                                             const SchurOptions& options) {
  return general_sc_rate_estimate(spectrum_table(state, n, options), r);
}

SandwichBounds e_alpha_theta_bounds(const SpectrumTable& table, double alpha, const std::array<double, 3>& theta,
                                    WeightConvention convention) {
  check_alpha_theta(alpha, theta);
  const double t = alpha / (1.0 - alpha);
  const double factor = convention == WeightConvention::Norm ? 0.5 : 1.0;
  const int n = table.n;
  SandwichBounds out;
  out.lower = -kInf;
  for (const SpectrumEntry& e : table.entries) {
    if (e.weight <= 0.0) continue;
    double value = factor * t * std::log2(e.weight) / n;
    for (int j = 0; j < 3; ++j) value += theta[static_cast<std::size_t>(j)] * partition_entropy(e.lambda[j]);
    if (value > out.lower) {
      out.lower = value;
      out.argmax = e.lambda;
    }
  }
  double theta_dims = 0.0;
  double dims = 0.0;
  for (int j = 0; j < 3; ++j) {
    theta_dims += theta[static_cast<std::size_t>(j)] * table.dims[static_cast<std::size_t>(j)];
    dims += table.dims[static_cast<std::size_t>(j)];
  }
  out.slack = (theta_dims + t * dims) * std::log2(n + 1.0) / n;
  out.upper = out.lower + out.slack;
  return out;
}

SandwichBounds e_alpha_theta_bounds(const PureTripartiteState& state, double alpha,
                                    const std::array<double, 3>& theta, int n, WeightConvention convention,
                                    const SchurOptions& options) {
  check_alpha_theta(alpha, theta);
  return e_alpha_theta_bounds(spectrum_table(state, n, options), alpha, theta, convention);
}

double e_alpha_theta_variational(const FreeSupportCertificate& certificate, double alpha,
                                 const std::array<double, 3>& theta) {
  return h_alpha_theta(certificate.measured, alpha, theta).value;
}

}  // namespace ebits
