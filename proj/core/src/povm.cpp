#include "ebits/povm.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "ebits/entropy.hpp"
#include "ebits/errors.hpp"
#include "ebits/simplex.hpp"

namespace ebits {

SliceSet::SliceSet(const PureTripartiteState& state) : dims_(state.dims()) {
  const CMatrix rho = marginal(state, Subsystem::C);
  const CMatrix off = rho - CMatrix(rho.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() <= 1e-12) {
    load(state, CMatrix::Identity(dims_[2], dims_[2]), true);
  } else {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho);
    load(state, solver.eigenvectors(), false);
  }
}

SliceSet::SliceSet(const PureTripartiteState& state, const CMatrix& c_basis) : dims_(state.dims()) {
  const int dc = dims_[2];
  if (c_basis.rows() != dc || c_basis.cols() != dc) throw InputError("C basis must be d_C x d_C");
  if ((c_basis.adjoint() * c_basis - CMatrix::Identity(dc, dc)).cwiseAbs().maxCoeff() > 1e-10) {
    throw InputError("C basis is not unitary");
  }
  const CMatrix d = c_basis.adjoint() * marginal(state, Subsystem::C) * c_basis;
  if ((d - CMatrix(d.diagonal().asDiagonal())).cwiseAbs().maxCoeff() > 1e-10) {
    throw InputError("C basis does not diagonalize the C marginal");
  }
  load(state, c_basis, c_basis.isIdentity(0.0));
}

void SliceSet::load(const PureTripartiteState& state, const CMatrix& c_basis, bool identity) {
  c_basis_ = c_basis;
  const auto [da, db, dc] = dims_;
  const auto push = [&](int a, int b, int k, cplx amp) {
    if (amp == cplx{}) return;
    entries_.push_back({a, b, k, amp});
    if (amp.imag() != 0.0) real_ = false;
  };
  if (identity) {
    const CVector& amps = state.amplitudes();
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
      const int c = static_cast<int>(i % dc);
      const int b = static_cast<int>((i / dc) % db);
      const int a = static_cast<int>(i / (static_cast<Eigen::Index>(dc) * db));
      push(a, b, c, amps[i]);
    }
    return;
  }
  const RowMajorCMatrix rotated = state.ab_by_c() * c_basis.conjugate();
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int k = 0; k < dc; ++k) push(a, b, k, rotated(static_cast<Eigen::Index>(a) * db + b, k));
}

CMatrix SliceSet::slice(int k) const {
  if (k < 0 || k >= dims_[2]) throw InputError("slice index out of range");
  CMatrix z = CMatrix::Zero(dims_[0], dims_[1]);
  for (const auto& e : entries_) {
    if (e.k == k) z(e.a, e.b) += e.amp;
  }
  return z;
}

CMatrix SliceSet::project(std::span<const int> signs) const {
  if (static_cast<int>(signs.size()) != dims_[2]) throw InputError("sign vector length must equal d_C");
  for (int s : signs) {
    if (s != 1 && s != -1) throw InputError("sign vector entries must be +1 or -1");
  }
  CMatrix z = CMatrix::Zero(dims_[0], dims_[1]);
  for (const auto& e : entries_) z(e.a, e.b) += static_cast<double>(signs[static_cast<std::size_t>(e.k)]) * e.amp;
  return z;
}

CMatrix rademacher_project(const PureTripartiteState& state, std::span<const int> signs, const CMatrix& c_basis) {
  return SliceSet(state, c_basis).project(signs);
}

double largest_schmidt_weight(const CMatrix& z) {
  const bool wide = z.rows() <= z.cols();
  if (z.imag().cwiseAbs().maxCoeff() == 0.0) {
    const Eigen::MatrixXd zr = z.real();
    const Eigen::MatrixXd gram = wide ? Eigen::MatrixXd(zr * zr.transpose()) : Eigen::MatrixXd(zr.transpose() * zr);
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
  }
  const CMatrix gram = wide ? CMatrix(z * z.adjoint()) : CMatrix(z.adjoint() * z);
  return Eigen::SelfAdjointEigenSolver<CMatrix>(gram, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
}

namespace {

// E_inf of the normalized post-measurement state with coefficients z.
double slice_entropy(const CMatrix& z) {
  return std::max(0.0, -std::log2(largest_schmidt_weight(z) / z.squaredNorm()));
}

constexpr long long kDefaultOrbitSamples = 4096;

double min_marginal_min_entropy(const PureTripartiteState& state) {
  return std::min(min_entropy(marginal_spectrum(state, Subsystem::A).values()),
                  min_entropy(marginal_spectrum(state, Subsystem::B).values()));
}

class SignSource {
 public:
  explicit SignSource(std::uint64_t seed) : rng_(seed) {}

  std::vector<int> draw(int length) {
    std::vector<int> v(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i) {
      if (bits_left_ == 0) {
        bits_ = rng_();
        bits_left_ = 64;
      }
      v[static_cast<std::size_t>(i)] = (bits_ & 1U) ? -1 : 1;
      bits_ >>= 1;
      --bits_left_;
    }
    return v;
  }

 private:
  std::mt19937_64 rng_;
  std::uint64_t bits_ = 0;
  int bits_left_ = 0;
};

Eigen::MatrixXd outer_sum(std::span<const std::vector<int>> vectors, std::span<const double> weights) {
  const auto d = static_cast<Eigen::Index>(vectors.empty() ? 0 : vectors.front().size());
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const Eigen::Map<const Eigen::VectorXi> v(vectors[i].data(), d);
    const Eigen::VectorXd vd = v.cast<double>();
    sum.noalias() += weights[i] * vd * vd.transpose();
  }
  return sum;
}

struct Sample {
  std::vector<int> signs;
  double entropy;
};

// Weights for the real operators v v^T, or nullopt if I is not in their hull.
std::optional<std::vector<double>> sign_hull(std::span<const Sample* const> samples, int dc) {
  std::vector<CMatrix> ops;
  ops.reserve(samples.size());
  for (const Sample* s : samples) {
    const Eigen::Map<const Eigen::VectorXi> v(s->signs.data(), dc);
    const Eigen::VectorXd vd = v.cast<double>();
    ops.emplace_back((vd * vd.transpose()).cast<cplx>());
  }
  return hull_membership(ops);
}

}  // namespace

TailBound tail_bound(const PureTripartiteState& state, double h) {
  const double m = min_marginal_min_entropy(state);
  const double value = (state.dim(0) + state.dim(1)) * std::exp(-0.5 * std::exp2(m - h));
  return {value, value >= 1.0};
}

double deterministic_rate(const PureTripartiteState& state) { return min_marginal_min_entropy(state); }

double povm_entropy_threshold(const PureTripartiteState& state) {
  const double dc = state.dim(2);
  const double log_arg = std::log(2.0) + 4.0 * std::log(dc) + std::log(static_cast<double>(state.dim(0) + state.dim(1)));
  return min_marginal_min_entropy(state) - std::log2(4.0 * log_arg);
}

int guaranteed_ebits(const PureTripartiteState& state) {
  return std::max(0, static_cast<int>(std::ceil(povm_entropy_threshold(state) - 1e-12)));
}

std::optional<std::vector<double>> hull_membership(std::span<const CMatrix> ops, double tol) {
  if (ops.empty()) throw InputError("hull_membership needs at least one operator");
  const Eigen::Index d = ops.front().rows();
  for (const auto& op : ops) {
    if (op.rows() != d || op.cols() != d) throw InputError("hull_membership: operators must share one square shape");
  }
  const auto n = static_cast<Eigen::Index>(ops.size());
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  const auto add_row = [&](Eigen::VectorXd row, double target) {
    if (row.cwiseAbs().maxCoeff() <= 1e-14) {
      if (std::abs(target) > 1e-14) rhs.push_back(kInf);  // 0 = 1: infeasible
      return;
    }
    rows.push_back(std::move(row));
    rhs.push_back(target);
  };
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = j; k < d; ++k) {
      Eigen::VectorXd re(n), im(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        re[i] = ops[static_cast<std::size_t>(i)](j, k).real();
        im[i] = ops[static_cast<std::size_t>(i)](j, k).imag();
      }
      add_row(std::move(re), j == k ? 1.0 : 0.0);
      if (j != k) add_row(std::move(im), 0.0);
    }
  }
  add_row(Eigen::VectorXd::Ones(n), 1.0);
  if (std::any_of(rhs.begin(), rhs.end(), [](double x) { return std::isinf(x); })) return std::nullopt;

  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), n);
  for (std::size_t r = 0; r < rows.size(); ++r) a.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  const LpResult lp = solve_lp(a, b, Eigen::VectorXd::Zero(n));
  if (lp.status != LpStatus::Optimal) return std::nullopt;

  CMatrix sum = -CMatrix::Identity(d, d);
  for (Eigen::Index i = 0; i < n; ++i) sum += lp.x[i] * ops[static_cast<std::size_t>(i)];
  const double residual =
      Eigen::SelfAdjointEigenSolver<CMatrix>(sum, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
  if (residual > tol) return std::nullopt;
  return std::vector<double>(lp.x.data(), lp.x.data() + n);
}

double completeness_residual(std::span<const std::vector<int>> vectors, std::span<const double> weights) {
  if (vectors.size() != weights.size()) throw InputError("vector and weight counts differ");
  if (vectors.empty()) return kInf;
  Eigen::MatrixXd sum = outer_sum(vectors, weights);
  sum -= Eigen::MatrixXd::Identity(sum.rows(), sum.cols());
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sum, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<double> sample_slice_entropies(const PureTripartiteState& state, long long count, std::uint64_t seed) {
  const SliceSet slices(state);
  SignSource source(seed);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0LL)));
  for (long long i = 0; i < count; ++i) out.push_back(slice_entropy(slices.project(source.draw(slices.count()))));
  return out;
}

PovmCertificate build_povm(const PureTripartiteState& state, std::uint64_t seed, const PovmOptions& options) {
  if (options.max_retries < 1) throw InputError("max_retries must be >= 1");
  const SliceSet slices(state);
  const int dc = slices.count();
  SamplingScheme scheme = options.scheme;
  if (scheme == SamplingScheme::Auto) scheme = dc <= 8 ? SamplingScheme::Iid : SamplingScheme::HadamardOrbit;

  PovmCertificate cert;
  cert.guaranteed_ebits = guaranteed_ebits(state);
  cert.seed = seed;
  cert.scheme = scheme;
  cert.c_basis = slices.c_basis();
  const double need = cert.guaranteed_ebits - 1e-9;
  SignSource source(seed);

  const auto finish = [&](std::vector<std::vector<int>> vectors, std::vector<double> weights,
                          const std::vector<double>& entropies, int attempt) {
    cert.vectors.clear();
    cert.weights.clear();
    cert.min_entropy_floor = kInf;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (!(weights[i] > 0.0)) continue;
      cert.vectors.push_back(std::move(vectors[i]));
      cert.weights.push_back(weights[i]);
      cert.min_entropy_floor = std::min(cert.min_entropy_floor, entropies[i]);
    }
    cert.completeness_residual = completeness_residual(cert.vectors, cert.weights);
    cert.attempts = attempt;
    return cert.completeness_residual <= 1e-8;
  };

  for (int attempt = 1; attempt <= options.max_retries; ++attempt) {
    if (scheme == SamplingScheme::Iid) {
      const long long count = options.samples.value_or(static_cast<long long>(dc) * dc * dc * dc);
      if (count < 1) throw InputError("sample count must be >= 1");
      std::vector<Sample> samples;
      samples.reserve(static_cast<std::size_t>(count));
      for (long long i = 0; i < count; ++i) {
        auto v = source.draw(dc);
        const double e = slice_entropy(slices.project(v));
        samples.push_back({std::move(v), e});
      }
      if (std::any_of(samples.begin(), samples.end(), [&](const Sample& s) { return s.entropy < need; })) continue;

      // Highest entropies first; find the shortest prefix whose hull holds I.
      std::vector<const Sample*> order;
      for (const auto& s : samples) order.push_back(&s);
      std::stable_sort(order.begin(), order.end(),
                       [](const Sample* x, const Sample* y) { return x->entropy > y->entropy; });
      auto weights = sign_hull(order, dc);
      if (!weights) continue;
      std::size_t hi = order.size();
      if (options.maximize_floor) {
        std::size_t lo = 0;  // prefix lengths <= lo are infeasible
        while (hi - lo > 1) {
          const std::size_t mid = lo + (hi - lo) / 2;
          auto w = sign_hull(std::span(order).first(mid), dc);
          if (w) {
            hi = mid;
            weights = std::move(w);
          } else {
            lo = mid;
          }
        }
      }
      std::vector<std::vector<int>> vectors;
      std::vector<double> entropies;
      for (std::size_t i = 0; i < hi; ++i) {
        vectors.push_back(order[i]->signs);
        entropies.push_back(order[i]->entropy);
      }
      if (finish(std::move(vectors), std::move(*weights), entropies, attempt)) return cert;
      continue;
    }

    // Hadamard orbits: sum_h (v*h)(v*h)^T = N I for the N rows of H_N.
    const int order_n = static_cast<int>(std::bit_ceil(static_cast<unsigned>(dc)));
    const long long budget = options.samples.value_or(std::max(4LL * order_n, kDefaultOrbitSamples));
    const long long orbits = std::max(1LL, (budget + order_n - 1) / order_n);
    std::vector<std::vector<int>> best_vectors;
    std::vector<double> best_entropies;
    double best_floor = -kInf;
    for (long long o = 0; o < orbits; ++o) {
      const auto v = source.draw(dc);
      std::vector<std::vector<int>> vectors;
      std::vector<double> entropies;
      double floor = kInf;
      for (int row = 0; row < order_n; ++row) {
        std::vector<int> w(static_cast<std::size_t>(dc));
        for (int j = 0; j < dc; ++j) {
          const int h = (std::popcount(static_cast<unsigned>(row & j)) & 1) ? -1 : 1;
          w[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j)] * h;
        }
        const double e = slice_entropy(slices.project(w));
        floor = std::min(floor, e);
        vectors.push_back(std::move(w));
        entropies.push_back(e);
      }
      if (floor > best_floor) {
        best_floor = floor;
        best_vectors = std::move(vectors);
        best_entropies = std::move(entropies);
      }
      if (!options.maximize_floor) break;
    }
    if (best_floor < need) continue;
    std::vector<double> weights(best_vectors.size(), 1.0 / order_n);
    if (finish(std::move(best_vectors), std::move(weights), best_entropies, attempt)) return cert;
  }
  throw RetryExhausted("POVM construction failed after " + std::to_string(options.max_retries) + " attempts",
                       options.max_retries);
}

}  // namespace ebits
