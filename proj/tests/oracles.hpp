// Brute-force reference implementations used only by tests. They share no
// code with the library beyond the state container and result structs.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "ebits/povm.hpp"
#include "ebits/state.hpp"

namespace oracle {

using cplx = std::complex<double>;

inline double shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

inline double renyi(const std::vector<double>& p, double alpha) {
  if (alpha == 1.0) return shannon(p);
  // Factor out the largest entry so that huge alpha does not underflow.
  const double top = *std::max_element(p.begin(), p.end());
  double s = 0.0;
  for (double x : p) {
    if (x > 0.0) s += std::pow(x / top, alpha);
  }
  return (alpha * std::log2(top) + std::log2(s)) / (1.0 - alpha);
}

inline double min_entropy(const std::vector<double>& p) { return -std::log2(*std::max_element(p.begin(), p.end())); }

inline double kl(const std::vector<double>& q, const std::vector<double>& p) {
  double d = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] <= 0.0) continue;
    if (p[i] <= 0.0) return std::numeric_limits<double>::infinity();
    d += q[i] * std::log2(q[i] / p[i]);
  }
  return d;
}

// sup over alpha > 1 of r/(1-alpha) + H_alpha(p) on a dense grid in
// u = 1/alpha, plus the alpha -> infinity limit.
inline double direct_rate(const std::vector<double>& p, double r, int points = 200000) {
  double best = min_entropy(p);
  for (int i = 1; i < points; ++i) {
    const double u = static_cast<double>(i) / points;
    const double alpha = 1.0 / u;
    best = std::max(best, r / (1.0 - alpha) + renyi(p, alpha));
  }
  return best;
}

// inf over alpha in [0, 1) of r alpha/(1-alpha) + H_alpha(p) on a dense grid.
inline double sc_rate(const std::vector<double>& p, double r, int points = 200000) {
  double support = 0.0;
  for (double x : p) support += x > 0.0 ? 1.0 : 0.0;
  double best = std::log2(support);
  for (int i = 1; i < points; ++i) {
    const double alpha = static_cast<double>(i) / points;
    best = std::min(best, r * alpha / (1.0 - alpha) + renyi(p, alpha));
  }
  return best;
}

// Density matrix on one party by explicit index sums.
inline Eigen::MatrixXcd marginal(const ebits::PureTripartiteState& s, int party) {
  const auto d = s.dims();
  const int dp = d[static_cast<std::size_t>(party)];
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dp, dp);
  for (int a = 0; a < d[0]; ++a)
    for (int b = 0; b < d[1]; ++b)
      for (int c = 0; c < d[2]; ++c)
        for (int x = 0; x < dp; ++x) {
          std::array<int, 3> idx{a, b, c};
          idx[static_cast<std::size_t>(party)] = x;
          const int row = std::array<int, 3>{a, b, c}[static_cast<std::size_t>(party)];
          rho(row, x) += s(a, b, c) * std::conj(s(idx[0], idx[1], idx[2]));
        }
  return rho;
}

inline std::vector<double> eigenvalues_desc(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// Permutation operator on (C^d)^{(x) n}: copy i moves to position perm[i].
inline Eigen::MatrixXd permutation_matrix(int d, const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  int size = 1;
  for (int i = 0; i < n; ++i) size *= d;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
  for (int t = 0; t < size; ++t) {
    std::vector<int> digits(static_cast<std::size_t>(n));
    for (int i = n - 1, x = t; i >= 0; --i, x /= d) digits[static_cast<std::size_t>(i)] = x % d;
    std::vector<int> moved(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) moved[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = digits[static_cast<std::size_t>(i)];
    int s = 0;
    for (int i = 0; i < n; ++i) s = s * d + moved[static_cast<std::size_t>(i)];
    m(s, t) = 1.0;
  }
  return m;
}

// Symmetrizer and antisymmetrizer on two copies of C^d.
inline Eigen::MatrixXd sym2(int d) {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d * d, d * d);
  return 0.5 * (id + permutation_matrix(d, {1, 0}));
}
inline Eigen::MatrixXd antisym2(int d) {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d * d, d * d);
  return 0.5 * (id - permutation_matrix(d, {1, 0}));
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Maximum of min{H(Q_A), H(Q_B)} over a three-point distribution with the
// given labels, subject to D(Q || P) <= r: a step grid on the simplex for the
// interior plus bisection along 20000 rays from P for the boundary of the ball.
inline double kl_ball_grid(const std::vector<std::array<int, 3>>& labels, const std::vector<double>& p, double r,
                           double step) {
  const auto objective = [&](const std::vector<double>& q) {
    std::vector<double> qa(3, 0.0), qb(3, 0.0);
    for (std::size_t k = 0; k < 3; ++k) {
      qa[static_cast<std::size_t>(labels[k][0])] += q[k];
      qb[static_cast<std::size_t>(labels[k][1])] += q[k];
    }
    return std::min(shannon(qa), shannon(qb));
  };
  double best = objective(p);
  const int steps = static_cast<int>(std::lround(1.0 / step));
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; i + j <= steps; ++j) {
      const std::vector<double> q{i * step, j * step, std::max(0.0, 1.0 - (i + j) * step)};
      if (kl(q, p) <= r) best = std::max(best, objective(q));
    }
  const double pi = std::acos(-1.0);
  for (int k = 0; k < 20000; ++k) {
    const double phi = 2.0 * pi * k / 20000;
    const double u = std::cos(phi), v = std::sin(phi);
    const auto at = [&](double t) { return std::vector<double>{p[0] + t * u, p[1] + t * v, p[2] - t * (u + v)}; };
    double t_max = 1e9;
    const std::array<double, 3> dir{u, v, -(u + v)};
    for (std::size_t c = 0; c < 3; ++c) {
      if (dir[c] < 0.0) t_max = std::min(t_max, p[c] / -dir[c]);
    }
    auto edge = at(t_max);
    for (double& x : edge) x = std::max(x, 0.0);
    if (kl(edge, p) <= r) {
      best = std::max(best, objective(edge));
      continue;
    }
    double lo = 0.0, hi = t_max;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (kl(at(mid), p) <= r ? lo : hi) = mid;
    }
    best = std::max(best, objective(at(lo)));
  }
  return best;
}

// f(rho) with f(x) = min(1, sqrt(t / x)), by eigendecomposition.
inline Eigen::MatrixXcd truncation_operator(const Eigen::MatrixXcd& rho, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  Eigen::VectorXd f(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double x = es.eigenvalues()(i);
    f(i) = x > t ? std::sqrt(t / x) : 1.0;
  }
  return es.eigenvectors() * f.asDiagonal() * es.eigenvectors().adjoint();
}

struct Contracted {
  double p = 0.0;
  double h_a = 0.0, h_b = 0.0;
};

// Applies m_a (x) m_b (x) I by explicit index sums.
inline Contracted contract(const ebits::PureTripartiteState& s, const Eigen::MatrixXcd& m_a, const Eigen::MatrixXcd& m_b) {
  const ebits::Dims d = s.dims();
  ebits::CVector out = ebits::CVector::Zero(d[0] * d[1] * d[2]);
  for (int a = 0; a < d[0]; ++a)
    for (int b = 0; b < d[1]; ++b)
      for (int c = 0; c < d[2]; ++c)
        for (int a2 = 0; a2 < d[0]; ++a2)
          for (int b2 = 0; b2 < d[1]; ++b2) out[(a * d[1] + b) * d[2] + c] += m_a(a, a2) * m_b(b, b2) * s(a2, b2, c);
  Contracted r;
  r.p = out.squaredNorm();
  if (r.p < 1e-12) return r;
  const ebits::PureTripartiteState post(d, out / std::sqrt(r.p));
  r.h_a = -std::log2(eigenvalues_desc(marginal(post, 0)).front());
  r.h_b = -std::log2(eigenvalues_desc(marginal(post, 1)).front());
  return r;
}

// E_inf of sum_k v_k <u_k|_C psi / norm, straight from the amplitudes.
inline double slice_entropy(const ebits::PureTripartiteState& s, const ebits::CMatrix& u, const std::vector<int>& v) {
  const ebits::Dims d = s.dims();
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(d[0], d[1]);
  for (int a = 0; a < d[0]; ++a)
    for (int b = 0; b < d[1]; ++b)
      for (int k = 0; k < d[2]; ++k)
        for (int c = 0; c < d[2]; ++c) z(a, b) += static_cast<double>(v[static_cast<std::size_t>(k)]) * std::conj(u(c, k)) * s(a, b, c);
  z /= z.norm();
  return -std::log2(eigenvalues_desc(z * z.adjoint()).front());
}

inline Eigen::MatrixXd completeness(const ebits::PovmCertificate& cert) {
  const int dc = static_cast<int>(cert.vectors.front().size());
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(dc, dc);
  for (std::size_t i = 0; i < cert.vectors.size(); ++i) {
    Eigen::VectorXd v(dc);
    for (int k = 0; k < dc; ++k) v(k) = cert.vectors[i][static_cast<std::size_t>(k)];
    sum += cert.weights[i] * v * v.transpose();
  }
  return sum;
}

}  // namespace oracle
