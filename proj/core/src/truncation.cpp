#include "ebits/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ebits/entropy.hpp"
#include "ebits/errors.hpp"

namespace ebits {

CMatrix truncation_operator(const CMatrix& marg, double t) {
  if (!(t > 0.0)) throw InputError("truncation threshold must be > 0");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(marg);
  Eigen::VectorXd f = solver.eigenvalues();
  for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = t < f[i] ? std::sqrt(t / f[i]) : 1.0;
  const CMatrix& u = solver.eigenvectors();
  return u * f.cast<cplx>().asDiagonal() * u.adjoint();
}

double TruncationOutcome::a_slack() const { return h_a - (h_a_single - std::log2(p_a / p_ab)); }
double TruncationOutcome::b_slack() const { return h_b - (h_b_single - std::log2(p_b / p_ab)); }

bool TruncationOutcome::inequalities_hold(double tol) const {
  if (union_slack() < -tol) return false;
  if (degenerate) return true;
  return a_slack() >= -tol && b_slack() >= -tol;
}

namespace {

CVector apply_a(const Dims& dims, const CVector& v, const CMatrix& m) {
  const auto [da, db, dc] = dims;
  Eigen::Map<const RowMajorCMatrix> in(v.data(), da, static_cast<Eigen::Index>(db) * dc);
  CVector out(v.size());
  Eigen::Map<RowMajorCMatrix>(out.data(), da, static_cast<Eigen::Index>(db) * dc) = m * in;
  return out;
}

CVector apply_b(const Dims& dims, const CVector& v, const CMatrix& m) {
  const auto [da, db, dc] = dims;
  CVector out(v.size());
  for (int a = 0; a < da; ++a) {
    const Eigen::Index offset = static_cast<Eigen::Index>(a) * db * dc;
    Eigen::Map<const RowMajorCMatrix> block(v.data() + offset, db, dc);
    Eigen::Map<RowMajorCMatrix>(out.data() + offset, db, dc) = m * block;
  }
  return out;
}

double min_entropy_of(const PureTripartiteState& s, Subsystem x) { return min_entropy(marginal_spectrum(s, x).values()); }

}  // namespace

TruncationOutcome simultaneous_truncate(const PureTripartiteState& state, double t_a, double t_b) {
  const CMatrix ma = truncation_operator(marginal(state, Subsystem::A), t_a);
  const CMatrix mb = truncation_operator(marginal(state, Subsystem::B), t_b);
  const CVector va = apply_a(state.dims(), state.amplitudes(), ma);
  const CVector vb = apply_b(state.dims(), state.amplitudes(), mb);
  const CVector vab = apply_b(state.dims(), va, mb);

  TruncationOutcome out;
  out.p_a = va.squaredNorm();
  out.p_b = vb.squaredNorm();
  out.p_ab = vab.squaredNorm();
  if (out.p_a >= kDegenerateProbability) {
    out.post_a = PureTripartiteState::normalized(state.dims(), va);
    out.h_a_single = min_entropy_of(*out.post_a, Subsystem::A);
  }
  if (out.p_b >= kDegenerateProbability) {
    out.post_b = PureTripartiteState::normalized(state.dims(), vb);
    out.h_b_single = min_entropy_of(*out.post_b, Subsystem::B);
  }
  out.degenerate = out.p_ab < kDegenerateProbability;
  if (!out.degenerate) {
    out.post_ab = PureTripartiteState::normalized(state.dims(), vab);
    out.h_a = min_entropy_of(*out.post_ab, Subsystem::A);
    out.h_b = min_entropy_of(*out.post_ab, Subsystem::B);
  }
  return out;
}

bool local_contraction_check(const CMatrix& m, const CMatrix& rho, int d_a, int d_b) {
  if (m.rows() != d_a || m.cols() != d_a) throw InputError("contraction must be d_A x d_A");
  if (rho.rows() != static_cast<Eigen::Index>(d_a) * d_b || rho.cols() != rho.rows()) {
    throw InputError("density matrix must be (d_A d_B) x (d_A d_B)");
  }
  Eigen::JacobiSVD<CMatrix> svd(m);
  if (svd.singularValues()[0] > 1.0 + 1e-12) throw InputError("operator is not a contraction");
  // Tr_A (M x I) rho (M x I)^* = sum_{a,a'} (M^* M)_{a'a} rho_{(a,.),(a',.)}.
  const CMatrix mm = m.adjoint() * m;
  CMatrix diff = CMatrix::Zero(d_b, d_b);
  for (int a = 0; a < d_a; ++a) {
    for (int a2 = 0; a2 < d_a; ++a2) {
      const double delta = a == a2 ? 1.0 : 0.0;
      diff += (delta - mm(a2, a)) * rho.block(static_cast<Eigen::Index>(a) * d_b, static_cast<Eigen::Index>(a2) * d_b, d_b, d_b);
    }
  }
  const double lowest = Eigen::SelfAdjointEigenSolver<CMatrix>(diff, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  return lowest >= -1e-10;
}

RateCurve direct_exponent_curve(const PureTripartiteState& state, std::vector<double> r_grid) {
  const MarginalSpectrum spec_a = marginal_spectrum(state, Subsystem::A);
  const MarginalSpectrum spec_b = marginal_spectrum(state, Subsystem::B);
  return RateCurve::sample(CurveKind::Direct, std::move(r_grid), [&](double r) {
    return std::min(bipartite_direct_rate(spec_a.values(), r), bipartite_direct_rate(spec_b.values(), r));
  });
}

namespace {

// Calls visit(counts, log multinomial) for every composition of n into
// counts.size() nonnegative parts.
void for_each_type(std::vector<int>& counts, std::size_t pos, int left, double log_mult,
                   const std::function<void(const std::vector<int>&, double)>& visit) {
  if (pos + 1 == counts.size()) {
    counts[pos] = left;
    visit(counts, log_mult - std::lgamma(left + 1.0));
    return;
  }
  for (int c = 0; c <= left; ++c) {
    counts[pos] = c;
    for_each_type(counts, pos + 1, left - c, log_mult - std::lgamma(c + 1.0), visit);
  }
}

void enumerate_types(std::size_t symbols, int n, const std::function<void(const std::vector<int>&, double)>& visit) {
  if (symbols == 0) return;
  std::vector<int> counts(symbols, 0);
  for_each_type(counts, 0, n, std::lgamma(n + 1.0), visit);
}

std::vector<double> positive(std::span<const double> v) {
  std::vector<double> out;
  for (double x : v) {
    if (x > 0.0) out.push_back(x);
  }
  return out;
}

}  // namespace

double quantile_threshold(std::span<const double> spectrum, int n, double r) {
  if (n < 1) throw InputError("copy count must be >= 1");
  if (!(r > 0.0)) throw InputError("threshold schedule needs r > 0");
  const std::vector<double> lam = positive(spectrum);
  // Distinct n-copy eigenvalues with their multiplicities, largest first.
  std::map<double, double, std::greater<>> levels;
  enumerate_types(lam.size(), n, [&](const std::vector<int>& counts, double log_mult) {
    double log_value = 0.0;
    for (std::size_t i = 0; i < lam.size(); ++i) log_value += counts[i] * std::log(lam[i]);
    levels[std::exp(log_value)] += std::exp(log_mult);
  });
  const double target = std::exp2(-r * n);
  double mass = 0.0;  // sum of multiplicity * eigenvalue above t
  double mult = 0.0;  // total multiplicity above t
  for (auto it = levels.begin(); it != levels.end(); ++it) {
    mass += it->second * it->first;
    mult += it->second;
    const auto next = std::next(it);
    const double floor = next == levels.end() ? 0.0 : next->first;
    // The tail sum(x - t) is linear in t on [floor, level]; stop once it reaches the target.
    if (mass - mult * floor >= target) return std::max((mass - target) / mult, floor);
  }
  return std::numeric_limits<double>::min();
}

NCopyTruncation n_copy_truncation(const PureTripartiteState& state, int n, double t_a, double t_b) {
  if (n < 1) throw InputError("copy count must be >= 1");
  if (!(t_a > 0.0) || !(t_b > 0.0)) throw InputError("truncation thresholds must be > 0");
  const auto [da, db, dc] = state.dims();
  Eigen::SelfAdjointEigenSolver<CMatrix> ea(marginal(state, Subsystem::A));
  Eigen::SelfAdjointEigenSolver<CMatrix> eb(marginal(state, Subsystem::B));
  const PureTripartiteState local =
      change_local_bases(state, ea.eigenvectors(), eb.eigenvectors(), CMatrix::Identity(dc, dc));

  // Joint diagonal distribution of the A and B eigenbasis labels.
  struct Symbol {
    int a, b;
    double log_p;
  };
  std::vector<Symbol> symbols;
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b) {
      double p = 0.0;
      for (int c = 0; c < dc; ++c) p += std::norm(local(a, b, c));
      if (p > 1e-300) symbols.push_back({a, b, std::log(p)});
    }
  const auto log_eig = [](const Eigen::VectorXd& ev, int i) {
    return ev[i] > 0.0 ? std::log(ev[i]) : -std::numeric_limits<double>::infinity();
  };
  const double log_ta = std::log(t_a);
  const double log_tb = std::log(t_b);

  NCopyTruncation out;
  out.n = n;
  out.t_a = t_a;
  out.t_b = t_b;
  enumerate_types(symbols.size(), n, [&](const std::vector<int>& counts, double log_mult) {
    double log_prob = log_mult;
    double log_la = 0.0;
    double log_lb = 0.0;
    for (std::size_t s = 0; s < symbols.size(); ++s) {
      if (counts[s] == 0) continue;
      log_prob += counts[s] * symbols[s].log_p;
      log_la += counts[s] * log_eig(ea.eigenvalues(), symbols[s].a);
      log_lb += counts[s] * log_eig(eb.eigenvalues(), symbols[s].b);
    }
    const double prob = std::exp(log_prob);
    const double ga = log_la > log_ta ? std::exp(log_ta - log_la) : 1.0;
    const double gb = log_lb > log_tb ? std::exp(log_tb - log_lb) : 1.0;
    out.p_a += prob * ga;
    out.p_b += prob * gb;
    out.p_ab += prob * ga * gb;
  });
  const double top_a = std::pow(ea.eigenvalues().maxCoeff(), n);
  const double top_b = std::pow(eb.eigenvalues().maxCoeff(), n);
  out.h_a_single = -std::log2(std::min(top_a, t_a) / out.p_a);
  out.h_b_single = -std::log2(std::min(top_b, t_b) / out.p_b);
  return out;
}

NCopyTruncation truncation_protocol(const PureTripartiteState& state, int n, double r,
                                    const ThresholdSchedule& schedule) {
  const MarginalSpectrum spec_a = marginal_spectrum(state, Subsystem::A);
  const MarginalSpectrum spec_b = marginal_spectrum(state, Subsystem::B);
  return n_copy_truncation(state, n, schedule(spec_a.values(), n, r), schedule(spec_b.values(), n, r));
}

}  // namespace ebits
