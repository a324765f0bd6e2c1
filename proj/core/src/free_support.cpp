#include "ebits/free_support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>

#include <Eigen/LU>

#include <boost/math/tools/minima.hpp>

#include "ebits/errors.hpp"

namespace ebits {

bool is_free(std::span<const JointDistribution::Label> support) {
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = i + 1; j < support.size(); ++j) {
      int differ = 0;
      for (int s = 0; s < 3; ++s) differ += support[i][s] != support[j][s];
      if (differ < 2) return false;
    }
  }
  return true;
}

std::optional<FreeSupportCertificate> detect_free_support(const PureTripartiteState& state,
                                                          const std::optional<LocalBases>& bases) {
  const auto [da, db, dc] = state.dims();
  FreeSupportCertificate cert;
  if (bases) {
    cert.basis_a = bases->a;
    cert.basis_b = bases->b;
    cert.basis_c = bases->c;
  } else {
    cert.basis_a = CMatrix::Identity(da, da);
    cert.basis_b = CMatrix::Identity(db, db);
    cert.basis_c = CMatrix::Identity(dc, dc);
  }
  const PureTripartiteState rotated =
      bases ? change_local_bases(state, cert.basis_a, cert.basis_b, cert.basis_c) : state;

  std::vector<JointDistribution::Label> support;
  std::vector<double> weights;
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int c = 0; c < dc; ++c) {
        const double m = std::abs(rotated(a, b, c));
        if (m > kSupportThreshold) {
          support.push_back({a, b, c});
          weights.push_back(m * m);
        }
      }
  if (!is_free(support)) return std::nullopt;
  cert.measured = JointDistribution(std::move(support), Distribution::normalize(std::move(weights)));
  return cert;
}

namespace {

constexpr double kMinMultiplier = 1e-10;

// Concave program over the simplex on supp P:
//   F(Q) = sum_s theta_s H(Q_s) - t D(Q || P)   (bits)
class Program {
 public:
  explicit Program(const JointDistribution& p) : labels_(p.labels().begin(), p.labels().end()) {
    for (std::size_t z = 0; z < p.size(); ++z) {
      if (p.probs()[z] > 0.0) {
        keep_.push_back(z);
        logp_.push_back(std::log2(p.probs()[z]));
      }
    }
    for (int s = 0; s < 3; ++s) {
      // Compact the label values that occur on the support.
      std::vector<int> values;
      for (std::size_t z : keep_) values.push_back(labels_[z][s]);
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      width_[s] = values.size();
      for (std::size_t z : keep_) {
        slot_[s].push_back(static_cast<std::size_t>(
            std::lower_bound(values.begin(), values.end(), labels_[z][s]) - values.begin()));
      }
    }
  }

  std::size_t size() const { return keep_.size(); }

  std::vector<double> start() const {
    std::vector<double> q(size());
    for (std::size_t i = 0; i < size(); ++i) q[i] = std::exp2(logp_[i]);
    const double total = std::accumulate(q.begin(), q.end(), 0.0);
    for (double& x : q) x /= total;
    return q;
  }

  double entropy(const std::vector<double>& q, int s) const {
    std::vector<double> m(width_[s], 0.0);
    for (std::size_t i = 0; i < size(); ++i) m[slot_[s][i]] += q[i];
    return shannon_entropy(m);
  }

  double kl(const std::vector<double>& q) const {
    double d = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      if (q[i] > 0.0) d += q[i] * (std::log2(q[i]) - logp_[i]);
    }
    return std::max(d, 0.0);
  }

  double objective(const std::vector<double>& q, const std::array<double, 3>& theta, double t) const {
    double f = 0.0;
    for (int s = 0; s < 3; ++s) {
      if (theta[s] != 0.0) f += theta[s] * entropy(q, s);
    }
    if (t != 0.0) f -= t * kl(q);
    return f;
  }

  // Damped Newton ascent on the simplex from `q`. A floor on t keeps the
  // Hessian definite; among ties it selects the maximizer closest to P.
  std::vector<double> maximize(std::vector<double> q, const std::array<double, 3>& theta, double t,
                               const SolverOptions& options) const {
    const std::size_t n = size();
    if (n <= 1) return q;
    const double te = std::max(t, kMinMultiplier);
    const auto value = [&](const std::vector<double>& v) { return objective(v, theta, te) * std::numbers::ln2; };
    Eigen::MatrixXd kkt(n + 1, n + 1);
    Eigen::VectorXd rhs(n + 1);
    Eigen::VectorXd grad(n);
    std::vector<double> trial(n);
    double f = value(q);
    for (int it = 0; it < options.max_inner_iterations; ++it) {
      // Gradient and Hessian in nats.
      kkt.setZero();
      grad.setZero();
      for (int s = 0; s < 3; ++s) {
        if (theta[s] == 0.0) continue;
        std::vector<double> m(width_[s], 0.0);
        for (std::size_t i = 0; i < n; ++i) m[slot_[s][i]] += q[i];
        for (std::size_t i = 0; i < n; ++i) {
          const double mi = std::max(m[slot_[s][i]], 1e-300);
          grad[i] -= theta[s] * std::log(mi);
          for (std::size_t j = 0; j < n; ++j) {
            if (slot_[s][j] == slot_[s][i]) kkt(i, j) -= theta[s] / mi;
          }
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        const double qi = std::max(q[i], 1e-300);
        grad[i] -= te * (std::log(qi) - logp_[i] * std::numbers::ln2);
        kkt(i, i) -= te / qi;
        kkt(i, n) = 1.0;
        kkt(n, i) = 1.0;
      }
      rhs.head(n) = -grad;
      rhs[n] = 0.0;
      const Eigen::VectorXd sol = kkt.partialPivLu().solve(rhs);
      const Eigen::VectorXd dir = sol.head(n);
      const double slope = grad.dot(dir);
      if (!(slope > options.gap_tolerance * (1.0 + te))) break;

      double step = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (dir[i] < 0.0) step = std::min(step, 0.99 * q[i] / -dir[i]);
      }
      bool moved = false;
      for (int k = 0; k < 60; ++k, step *= 0.5) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          trial[i] = std::max(q[i] + step * dir[i], 0.0);
          total += trial[i];
        }
        for (double& x : trial) x /= total;
        const double ft = value(trial);
        if (ft >= f + 0.25 * step * slope) {
          q.swap(trial);
          f = ft;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    return q;
  }

  JointDistribution expand(const JointDistribution& p, const std::vector<double>& q) const {
    std::vector<double> full(labels_.size(), 0.0);
    for (std::size_t i = 0; i < size(); ++i) full[keep_[i]] = q[i];
    return p.with_probs(Distribution::normalize(std::move(full)));
  }

 private:
  std::vector<JointDistribution::Label> labels_;
  std::vector<std::size_t> keep_;
  std::vector<double> logp_;
  std::array<std::size_t, 3> width_{};
  std::array<std::vector<std::size_t>, 3> slot_;
};

struct Inner {
  std::vector<double> q;
  double t = 0.0;
  double ha = 0.0;
  double hb = 0.0;
  double kl = 0.0;
  double lagrangian = 0.0;
};

constexpr double kKlSlack = 1e-9;

// max over the KL ball of x H(Q_A) + (1-x) H(Q_B), solved through the
// multiplier t on the KL constraint. Always returns a feasible Q.
Inner solve_weighted(const Program& prog, double x, double r, const std::vector<double>& warm,
                     const SolverOptions& options) {
  const std::array<double, 3> theta{x, 1.0 - x, 0.0};
  auto finish = [&](std::vector<double> q, double t) {
    Inner in;
    in.ha = prog.entropy(q, 0);
    in.hb = prog.entropy(q, 1);
    in.kl = prog.kl(q);
    in.t = t;
    in.lagrangian = x * in.ha + (1.0 - x) * in.hb - (t == 0.0 ? 0.0 : t * (in.kl - r));
    in.q = std::move(q);
    return in;
  };
  if (r == 0.0) return finish(prog.start(), 0.0);

  std::vector<double> q0 = prog.maximize(warm, theta, 0.0, options);
  if (prog.kl(q0) <= r) return finish(std::move(q0), 0.0);

  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> q_hi = prog.maximize(q0, theta, hi, options);
  while (prog.kl(q_hi) > r) {
    lo = hi;
    hi *= 4.0;
    q_hi = prog.maximize(q_hi, theta, hi, options);
    if (hi > 1e12) return finish(prog.start(), hi);
  }
  for (int it = 0; it < 100 && prog.kl(q_hi) < r - kKlSlack && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    std::vector<double> q = prog.maximize(q_hi, theta, mid, options);
    if (prog.kl(q) > r) {
      lo = mid;
    } else {
      hi = mid;
      q_hi = std::move(q);
    }
  }
  return finish(std::move(q_hi), hi);
}

double balanced(const Inner& in) { return std::min(in.ha, in.hb); }

}  // namespace

KlBallSolution kl_ball_minmax_entropy(const JointDistribution& p, double r, const SolverOptions& options) {
  if (!(r >= 0.0)) throw InputError("KL radius must be >= 0");
  const Program prog(p);
  KlBallSolution sol;

  const Inner at0 = solve_weighted(prog, 0.0, r, prog.start(), options);
  const Inner at1 = solve_weighted(prog, 1.0, r, at0.q, options);
  Inner best = balanced(at0) >= balanced(at1) ? at0 : at1;
  double x_best = balanced(at0) >= balanced(at1) ? 0.0 : 1.0;
  double dual = std::min(at0.lagrangian, at1.lagrangian);

  auto consider = [&](const Inner& in, double x) {
    if (balanced(in) > balanced(best)) {
      best = in;
      x_best = x;
    }
  };

  // The dual g(x) is convex with g'(x) = H(Q_A) - H(Q_B); an endpoint is
  // optimal when the derivative there already points outward.
  const bool endpoint = at0.ha >= at0.hb - options.balance_tolerance || at1.hb >= at1.ha - options.balance_tolerance;
  if (!endpoint) {
    double lo = 0.0;
    double hi = 1.0;
    Inner in_lo = at0;
    Inner in_hi = at1;
    bool tied = false;
    for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
      const double mid = 0.5 * (lo + hi);
      Inner in = solve_weighted(prog, mid, r, (in_lo.q.size() ? in_lo.q : prog.start()), options);
      dual = std::min(dual, in.lagrangian);
      consider(in, mid);
      if (std::abs(in.ha - in.hb) < options.balance_tolerance) {
        tied = true;
        break;
      }
      if (in.ha < in.hb) {
        lo = mid;
        in_lo = std::move(in);
      } else {
        hi = mid;
        in_hi = std::move(in);
      }
    }
    if (!tied) {
      // Kink of g: mixtures of the two one-sided maximizers stay feasible by
      // convexity of D, and min{H_A, H_B} is concave along the segment.
      const auto mix = [&](double lam) {
        std::vector<double> q(prog.size());
        for (std::size_t i = 0; i < q.size(); ++i) q[i] = lam * in_lo.q[i] + (1.0 - lam) * in_hi.q[i];
        return q;
      };
      const auto neg = [&](double lam) {
        const auto q = mix(lam);
        return -std::min(prog.entropy(q, 0), prog.entropy(q, 1));
      };
      const auto [lam, v] = boost::math::tools::brent_find_minima(neg, 0.0, 1.0, 40);
      (void)v;
      Inner in;
      in.q = mix(lam);
      in.ha = prog.entropy(in.q, 0);
      in.hb = prog.entropy(in.q, 1);
      in.kl = prog.kl(in.q);
      in.t = 0.5 * (in_lo.t + in_hi.t);
      consider(in, 0.5 * (lo + hi));
    }
  }

  sol.q = prog.expand(p, best.q);
  sol.value = balanced(best);
  sol.x_weight = x_best;
  sol.multiplier = best.t;
  sol.kl = best.kl;
  sol.dual_value = dual;
  return sol;
}

ThetaSolution h_alpha_theta(const JointDistribution& p, double alpha, const std::array<double, 3>& theta,
                            const SolverOptions& options) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InputError("alpha must lie in [0, 1)");
  double total = 0.0;
  for (double w : theta) {
    if (!(w >= 0.0)) throw InputError("theta weights must be >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InputError("theta weights must sum to 1");
  const Program prog(p);
  const double t = alpha / (1.0 - alpha);
  const auto q = prog.maximize(prog.start(), theta, t, options);
  return {prog.expand(p, q), prog.objective(q, theta, t)};
}

RateCurve sc_rate_curve(const JointDistribution& p, std::vector<double> r_grid) {
  const KlBallSolution top = kl_ball_minmax_entropy(p, kInf);
  std::vector<double> values;
  values.reserve(r_grid.size());
  for (double r : r_grid) {
    values.push_back(r >= top.kl ? top.value : std::min(top.value, kl_ball_minmax_entropy(p, r).value));
  }
  return RateCurve(CurveKind::StrongConverse, std::move(r_grid), std::move(values));
}

std::optional<RateCurve> sc_rate_curve_free(const PureTripartiteState& state, std::vector<double> r_grid,
                                            const std::optional<LocalBases>& bases) {
  const auto cert = detect_free_support(state, bases);
  if (!cert) return std::nullopt;
  return sc_rate_curve(cert->measured, std::move(r_grid));
}

}  // namespace ebits
