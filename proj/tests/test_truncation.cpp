#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ebits/entropy.hpp"
#include "ebits/errors.hpp"
#include "ebits/rates.hpp"
#include "ebits/truncation.hpp"
#include "oracles.hpp"

using namespace ebits;

namespace {

const double kH13 = 0.918295834054;
const double kLog32 = std::log2(1.5);

}  // namespace

TEST(TruncationOperator, HandExamples) {
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
  diag(0, 0) = 0.8;
  diag(1, 1) = 0.2;
  const CMatrix m = truncation_operator(diag.cast<cplx>(), 0.2);
  EXPECT_NEAR(m(0, 0).real(), 0.5, 1e-12);
  EXPECT_NEAR(m(1, 1).real(), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(m(0, 1)), 0.0, 1e-12);
  EXPECT_LT((truncation_operator(diag.cast<cplx>(), 0.9) - CMatrix::Identity(2, 2)).norm(), 1e-12);
  const CMatrix flat = CMatrix::Identity(3, 3) / 3.0;
  EXPECT_LT((truncation_operator(flat, 1.0 / 3.0) - CMatrix::Identity(3, 3)).norm(), 1e-12);
  EXPECT_THROW(truncation_operator(flat, 0.0), InputError);
}

TEST(TruncationOperator, ContractionCommutingWithMarginal) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const PureTripartiteState s = states::random({3, 2, 2}, seed);
    const CMatrix rho = marginal(s, Subsystem::A);
    for (double t : {0.05, 0.2, 0.4}) {
      const CMatrix m = truncation_operator(rho, t);
      EXPECT_LT((m - oracle::truncation_operator(rho, t)).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LT((m * rho - rho * m).cwiseAbs().maxCoeff(), 1e-12);
      const auto ev = oracle::eigenvalues_desc(m);
      EXPECT_LE(ev.front(), 1.0 + 1e-12);
      EXPECT_GE(ev.back(), -1e-12);
    }
  }
}

TEST(SimultaneousTruncate, IdentityThresholds) {
  const PureTripartiteState s = states::random({2, 3, 2}, 4);
  const TruncationOutcome o = simultaneous_truncate(s, 1.0, 1.0);
  EXPECT_NEAR(o.p_a, 1.0, 1e-12);
  EXPECT_NEAR(o.p_ab, 1.0, 1e-12);
  ASSERT_TRUE(o.post_ab.has_value());
  EXPECT_LT((o.post_ab->amplitudes() - s.amplitudes()).norm(), 1e-12);
  const TruncationOutcome g = simultaneous_truncate(states::ghz(), 0.5, 0.5);
  EXPECT_NEAR(g.p_ab, 1.0, 1e-12);
}

TEST(SimultaneousTruncate, WHalfThresholds) {
  const TruncationOutcome o = simultaneous_truncate(states::w(), 0.5, 0.5);
  EXPECT_NEAR(o.p_a, 5.0 / 6.0, 1e-12);
  EXPECT_NEAR(o.p_b, 5.0 / 6.0, 1e-12);
  const PureTripartiteState w = states::w();
  const CMatrix ma = oracle::truncation_operator(oracle::marginal(w, 0), 0.5);
  const CMatrix mb = oracle::truncation_operator(oracle::marginal(w, 1), 0.5);
  const oracle::Contracted both = oracle::contract(w, ma, mb);
  EXPECT_NEAR(o.p_ab, both.p, 1e-12);
  EXPECT_NEAR(o.h_a, both.h_a, 1e-10);
  EXPECT_NEAR(o.h_b, both.h_b, 1e-10);
  EXPECT_TRUE(o.inequalities_hold(1e-9));
}

TEST(SimultaneousTruncate, MatchesTensorContractionOnRandomDraws) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 3);
  std::uniform_real_distribution<double> unif(0.02, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const PureTripartiteState s = states::random({dim(rng), dim(rng), dim(rng)}, rng());
    const double ta = unif(rng), tb = unif(rng);
    const TruncationOutcome o = simultaneous_truncate(s, ta, tb);
    const CMatrix ma = oracle::truncation_operator(oracle::marginal(s, 0), ta);
    const CMatrix mb = oracle::truncation_operator(oracle::marginal(s, 1), tb);
    const oracle::Contracted a = oracle::contract(s, ma, CMatrix::Identity(s.dims()[1], s.dims()[1]));
    const oracle::Contracted b = oracle::contract(s, CMatrix::Identity(s.dims()[0], s.dims()[0]), mb);
    const oracle::Contracted ab = oracle::contract(s, ma, mb);
    EXPECT_NEAR(o.p_a, a.p, 1e-10);
    EXPECT_NEAR(o.p_b, b.p, 1e-10);
    EXPECT_NEAR(o.p_ab, ab.p, 1e-10);
    if (!o.degenerate) {
      EXPECT_NEAR(o.h_a_single, a.h_a, 1e-8);
      EXPECT_NEAR(o.h_b_single, b.h_b, 1e-8);
      EXPECT_NEAR(o.h_a, ab.h_a, 1e-8);
      EXPECT_NEAR(o.h_b, ab.h_b, 1e-8);
    }
    EXPECT_TRUE(o.inequalities_hold(1e-9)) << "trial " << trial;
  }
}

TEST(SimultaneousTruncate, RaisingThresholdNeverLowersProbability) {
  const PureTripartiteState s = states::random({3, 3, 2}, 12);
  double previous = 0.0;
  for (double t = 0.01; t <= 1.0; t += 0.01) {
    const double p = simultaneous_truncate(s, t, 1.0).p_a;
    EXPECT_GE(p, previous - 1e-12);
    previous = p;
  }
}

TEST(LocalContraction, HandAndRandom) {
  const PureTripartiteState s = states::random({3, 3, 1}, 5);
  CMatrix rho = s.amplitudes() * s.amplitudes().adjoint();
  EXPECT_TRUE(local_contraction_check(CMatrix::Identity(3, 3), rho, 3, 3));
  EXPECT_TRUE(local_contraction_check(CMatrix::Zero(3, 3), rho, 3, 3));
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    CMatrix m(3, 3);
    for (Eigen::Index i = 0; i < 9; ++i) m(i / 3, i % 3) = cplx(g(rng), g(rng));
    m /= Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
    EXPECT_TRUE(local_contraction_check(m, rho, 3, 3));
  }
  EXPECT_THROW(local_contraction_check(2.0 * CMatrix::Identity(3, 3), rho, 3, 3), InputError);
  EXPECT_THROW(local_contraction_check(CMatrix::Identity(2, 2), rho, 3, 3), InputError);
}

TEST(DirectExponentCurve, WAndGhz) {
  const RateCurve w = direct_exponent_curve(states::w(), {1e-6, 0.1, 0.3, kLog32, 1.0});
  EXPECT_NEAR(w.values()[0], kH13, 1e-3);
  EXPECT_NEAR(w.values()[3], kLog32, 1e-12);
  EXPECT_NEAR(w.values()[4], kLog32, 1e-12);
  EXPECT_TRUE(w.monotone());
  const RateCurve ghz = direct_exponent_curve(states::ghz(), {0.01, 0.5, 2.0});
  for (double v : ghz.values()) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(DirectExponentCurve, MinimumOfCuts) {
  const PureTripartiteState s = states::random({2, 3, 3}, 21);
  const auto a = oracle::eigenvalues_desc(oracle::marginal(s, 0));
  const auto b = oracle::eigenvalues_desc(oracle::marginal(s, 1));
  const RateCurve c = direct_exponent_curve(s, make_grid(0.05, 1.0, 0.05));
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double r = c.grid()[i];
    EXPECT_NEAR(c.values()[i], std::min(oracle::direct_rate(a, r), oracle::direct_rate(b, r)), 1e-4);
  }
}

TEST(QuantileThreshold, TailMassIsTheTarget) {
  const std::vector<double> spec{2.0 / 3.0, 1.0 / 3.0};
  for (int n : {2, 3, 5}) {
    for (double r : {0.1, 0.3}) {
      const double t = quantile_threshold(spec, n, r);
      double tail = 0.0;
      for (int mask = 0; mask < (1 << n); ++mask) {
        double x = 1.0;
        for (int i = 0; i < n; ++i) x *= spec[static_cast<std::size_t>((mask >> i) & 1)];
        tail += std::max(0.0, x - t);
      }
      EXPECT_NEAR(tail, std::exp2(-r * n), 1e-12) << "n=" << n << " r=" << r;
    }
  }
  EXPECT_THROW(quantile_threshold(spec, 3, 0.0), InputError);
}

TEST(NCopyTruncation, MatchesDenseTensorPower) {
  const PureTripartiteState s = states::random({2, 2, 2}, 33);
  for (int n : {2, 3}) {
    const PureTripartiteState power = tensor_power(s, n);
    for (double t : {0.05, 0.15}) {
      const NCopyTruncation fast = n_copy_truncation(s, n, t, 1.5 * t);
      const TruncationOutcome dense = simultaneous_truncate(power, t, 1.5 * t);
      EXPECT_NEAR(fast.p_a, dense.p_a, 1e-10);
      EXPECT_NEAR(fast.p_b, dense.p_b, 1e-10);
      EXPECT_NEAR(fast.p_ab, dense.p_ab, 1e-10);
      EXPECT_NEAR(fast.h_a_single, dense.h_a_single, 1e-8);
      EXPECT_NEAR(fast.h_b_single, dense.h_b_single, 1e-8);
    }
  }
}

TEST(TruncationProtocol, WSuccessExponentAtTenCopies) {
  for (double r : {0.1, 0.2, 0.3}) {
    const NCopyTruncation out = truncation_protocol(states::w(), 10, r);
    const double exponent = -std::log2(1.0 - out.p_ab) / 10.0;
    EXPECT_GE(exponent, r - 0.15) << "r=" << r;
    EXPECT_GE(out.h_a_single / 10.0, bipartite_direct_rate(std::vector<double>{2.0 / 3, 1.0 / 3}, r) - 0.5);
  }
}
