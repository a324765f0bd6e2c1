#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ebits/entropy.hpp"
#include "ebits/errors.hpp"
#include "ebits/rates.hpp"
#include "oracles.hpp"

using namespace ebits;

namespace {

const std::vector<double> kSkewed{0.75, 0.25};

}  // namespace

TEST(RateCurve, ValidatesGrid) {
  EXPECT_THROW(RateCurve(CurveKind::Direct, {0.2, 0.1}, {1.0, 1.0}), InputError);
  EXPECT_THROW(RateCurve(CurveKind::Direct, {-0.1, 0.1}, {1.0, 1.0}), InputError);
  EXPECT_THROW(RateCurve(CurveKind::Direct, {0.1}, {1.0, 1.0}), InputError);
  const RateCurve c(CurveKind::StrongConverse, {0.0, 1.0}, {1.0, 3.0});
  EXPECT_DOUBLE_EQ(c.at(0.25), 1.5);
  EXPECT_DOUBLE_EQ(c.at(5.0), 3.0);
}

TEST(RateCurve, MakeGridIncludesEndpoint) {
  const auto g = make_grid(0.0, 0.7, 0.005);
  EXPECT_EQ(g.size(), 141u);
  EXPECT_NEAR(g.back(), 0.7, 1e-12);
  EXPECT_THROW(make_grid(0.5, 0.1, 0.1), InputError);
  EXPECT_THROW(make_grid(0.0, 1.0, 0.0), InputError);
}

TEST(DirectRate, UniformIsFlat) { EXPECT_NEAR(bipartite_direct_rate(std::vector<double>(4, 0.25), 0.3), 2.0, 1e-12); }

TEST(DirectRate, PlateauAtMinEntropy) {
  const double hmin = -std::log2(0.75);
  for (double r : {hmin, hmin + 0.1, 1.0, 5.0}) EXPECT_DOUBLE_EQ(bipartite_direct_rate(kSkewed, r), hmin);
}

TEST(DirectRate, MatchesAlphaGridOracle) {
  for (double r : {0.01, 0.05, 0.1, 0.2, 0.4}) {
    EXPECT_NEAR(bipartite_direct_rate(kSkewed, r), oracle::direct_rate(kSkewed, r), 1e-4) << "r=" << r;
  }
  EXPECT_THROW(bipartite_direct_rate(kSkewed, 0.0), InputError);
}

TEST(DirectRate, BetweenMinEntropyAndShannon) {
  const std::vector<double> p{0.5, 0.3, 0.2};
  double previous = kInf;
  for (double r = 0.01; r < 1.5; r += 0.01) {
    const double v = bipartite_direct_rate(p, r);
    EXPECT_GE(v, min_entropy(p) - 1e-12);
    EXPECT_LE(v, shannon_entropy(p) + 1e-12);
    EXPECT_LE(v, previous + 1e-9);
    previous = v;
  }
  EXPECT_NEAR(bipartite_direct_rate(p, 1e-7), shannon_entropy(p), 1e-3);
}

TEST(ScRate, HandValues) {
  EXPECT_NEAR(bipartite_sc_rate(std::vector<double>{0.5, 0.5}, 0.37), 1.0, 1e-12);
  EXPECT_NEAR(bipartite_sc_rate(kSkewed, 0.0), binary_entropy(0.25), 1e-12);
  EXPECT_NEAR(binary_entropy(0.25), 0.811278124459, 1e-11);
  EXPECT_NEAR(bipartite_sc_rate(kSkewed, 5.0), 1.0, 1e-9);
  EXPECT_THROW(bipartite_sc_rate(kSkewed, -0.1), InputError);
}

TEST(ScRate, MatchesAlphaGridOracle) {
  const std::vector<double> p{0.6, 0.3, 0.1};
  for (double r : {0.02, 0.1, 0.3, 0.8}) EXPECT_NEAR(bipartite_sc_rate(p, r), oracle::sc_rate(p, r), 1e-4) << "r=" << r;
}

TEST(ScRate, OrderedAndConcave) {
  const std::vector<double> p{0.5, 0.3, 0.2};
  const auto grid = make_grid(0.0, 2.0, 0.02);
  const RateCurve sc = RateCurve::sample(CurveKind::StrongConverse, grid, [&](double r) { return bipartite_sc_rate(p, r); });
  EXPECT_TRUE(sc.monotone());
  EXPECT_TRUE(sc.concave(1e-8));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_GE(sc.values()[i], shannon_entropy(p) - 1e-12);
    EXPECT_LE(sc.values()[i], max_entropy(p) + 1e-12);
  }
}

TEST(ScFidelityRate, HandValues) {
  EXPECT_NEAR(bipartite_sc_fidelity_rate(std::vector<double>{0.5, 0.5}, 0.2), 1.2, 1e-9);
  EXPECT_NEAR(bipartite_sc_fidelity_rate(kSkewed, 1e-9), bipartite_sc_rate(kSkewed, 1e-9), 1e-12);
  // sup over x in [0, r] of R*(x) + r - x on a fine x-grid.
  const double r = 2.0;
  double best = 0.0;
  for (double x = 0.0; x <= r + 1e-12; x += 0.001) best = std::max(best, oracle::sc_rate(kSkewed, x, 20000) + r - x);
  EXPECT_NEAR(bipartite_sc_fidelity_rate(kSkewed, r), best, 1e-3);
}

TEST(ScFidelityRate, SlopeOnePointSeparatesBranches) {
  const double r0 = sc_slope_one_point(kSkewed);
  EXPECT_GT(r0, 0.0);
  EXPECT_NEAR(bipartite_sc_fidelity_rate(kSkewed, r0 / 2), bipartite_sc_rate(kSkewed, r0 / 2), 1e-9);
  const double above = bipartite_sc_fidelity_rate(kSkewed, r0 + 0.5);
  EXPECT_NEAR(above - bipartite_sc_fidelity_rate(kSkewed, r0 + 0.25), 0.25, 1e-6);
  EXPECT_EQ(sc_slope_one_point(std::vector<double>{0.5, 0.5}), 0.0);
}

TEST(ScFidelityFromProbability, ConstantCurveAddsR) {
  const RateCurve c(CurveKind::StrongConverse, make_grid(0.0, 1.0, 0.1), std::vector<double>(11, 0.7));
  EXPECT_NEAR(sc_fidelity_from_probability(c, 0.45), 1.15, 1e-12);
}

TEST(ScFidelityFromProbability, UnitSlopeCurveIsFixed) {
  const auto grid = make_grid(0.0, 1.0, 0.1);
  std::vector<double> values;
  for (double r : grid) values.push_back(0.3 + r);
  const RateCurve c(CurveKind::StrongConverse, grid, values);
  EXPECT_NEAR(sc_fidelity_from_probability(c, 0.6), c.at(0.6), 1e-12);
}

TEST(ScFidelityFromProbability, MatchesClosedFormOnSkewedSpectrum) {
  const auto grid = make_grid(0.0, 3.0, 0.01);
  const RateCurve sc = RateCurve::sample(CurveKind::StrongConverse, grid, [](double r) { return bipartite_sc_rate(kSkewed, r); });
  double previous = -kInf;
  for (double r : make_grid(0.01, 3.0, 0.01)) {
    const double v = sc_fidelity_from_probability(sc, r);
    EXPECT_NEAR(v, bipartite_sc_fidelity_rate(kSkewed, r), 1e-3) << "r=" << r;
    EXPECT_GE(v, sc.at(r) - 1e-12);
    EXPECT_GE(v, r);
    EXPECT_GE(v - r, previous - 1e-9);
    previous = v - r;
  }
}

TEST(ScFidelityFromProbability, RejectsBadArguments) {
  const RateCurve sc(CurveKind::StrongConverse, {0.0, 1.0}, {1.0, 1.0});
  const RateCurve direct(CurveKind::Direct, {0.1, 1.0}, {1.0, 1.0});
  EXPECT_THROW(sc_fidelity_from_probability(sc, -0.1), InputError);
  EXPECT_THROW(sc_fidelity_from_probability(sc, 2.0), InputError);
  EXPECT_THROW(sc_fidelity_from_probability(direct, 0.5), InputError);
}

TEST(OneShot, FidelityToProbability) {
  const FidToProb a = oneshot_fid_to_prob(80, 0.01);
  EXPECT_EQ(a.ebits, 10);
  EXPECT_NEAR(a.probability, 0.7, 1e-12);
  EXPECT_FALSE(a.degenerate);
  const FidToProb b = oneshot_fid_to_prob(8, 0.0);
  EXPECT_EQ(b.ebits, 1);
  EXPECT_EQ(b.probability, 1.0);
  EXPECT_TRUE(oneshot_fid_to_prob(7, 0.05).degenerate);
  EXPECT_EQ(oneshot_fid_to_prob(80, 0.5).probability, 0.0);
  EXPECT_GE(oneshot_fid_to_prob(80, 0.01).probability, oneshot_fid_to_prob(80, 0.02).probability);
}

TEST(OneShot, ProbabilityToFidelity) {
  EXPECT_NEAR(oneshot_prob_to_fid(4, 1.0, 4), 0.0, 1e-15);
  EXPECT_NEAR(oneshot_prob_to_fid(2, 0.5, 4), 0.75, 1e-15);
  EXPECT_NEAR(oneshot_prob_to_fid(3, 0.9, 3), 0.1, 1e-15);
  EXPECT_THROW(oneshot_prob_to_fid(4, 0.5, 3), InputError);
  EXPECT_GE(oneshot_prob_to_fid(3, 0.5, 6), oneshot_prob_to_fid(3, 0.6, 6));
}

TEST(OneShot, LowFidelityBound) {
  EXPECT_TRUE(oneshot_lowfid_bound(2, 1.0).vacuous);
  EXPECT_NEAR(oneshot_lowfid_bound(1024, 0.0).value, 31.0 / std::log(1024.0), 1e-12);
  EXPECT_NEAR(oneshot_lowfid_bound(16, 0.75).value, 1.0 / std::log(16.0), 1e-12);
  EXPECT_FALSE(oneshot_lowfid_bound(16, 0.75).vacuous);
  EXPECT_THROW(oneshot_lowfid_bound(1, 0.0), InputError);
  EXPECT_GE(oneshot_lowfid_bound(64, 0.1).value, oneshot_lowfid_bound(64, 0.2).value);
}
