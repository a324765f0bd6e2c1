#include "ebits/rates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "ebits/errors.hpp"

namespace ebits {

RateCurve::RateCurve(CurveKind kind, std::vector<double> grid, std::vector<double> values)
    : kind_(kind), grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() != values_.size()) throw InputError("rate curve: grid and values differ in length");
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!(grid_[i] >= 0.0) || !std::isfinite(grid_[i])) throw InputError("rate curve: grid points must be >= 0");
    if (i > 0 && !(grid_[i] > grid_[i - 1])) throw InputError("rate curve: grid must be strictly increasing");
  }
}

RateCurve RateCurve::sample(CurveKind kind, std::vector<double> grid, const std::function<double(double)>& fn) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (double r : grid) values.push_back(fn(r));
  return RateCurve(kind, std::move(grid), std::move(values));
}

double RateCurve::at(double r) const {
  if (grid_.empty()) throw InputError("rate curve is empty");
  if (r <= grid_.front()) return values_.front();
  if (r >= grid_.back()) return values_.back();
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), r);
  const std::size_t j = static_cast<std::size_t>(it - grid_.begin());
  const double w = (r - grid_[j - 1]) / (grid_[j] - grid_[j - 1]);
  return (1.0 - w) * values_[j - 1] + w * values_[j];
}

bool RateCurve::monotone(double tol) const {
  const double sign = kind_ == CurveKind::Direct ? -1.0 : 1.0;
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (sign * (values_[i] - values_[i - 1]) < -tol) return false;
  }
  return true;
}

bool RateCurve::concave(double tol) const {
  for (std::size_t i = 1; i + 1 < values_.size(); ++i) {
    const double left = (values_[i] - values_[i - 1]) / (grid_[i] - grid_[i - 1]);
    const double right = (values_[i + 1] - values_[i]) / (grid_[i + 1] - grid_[i]);
    if (right - left > tol) return false;
  }
  return true;
}

std::vector<double> make_grid(double r_min, double r_max, double step) {
  if (!(step > 0.0) || !(r_min <= r_max) || !(r_min >= 0.0)) {
    throw InputError("grid needs 0 <= r_min <= r_max and step > 0");
  }
  std::vector<double> grid;
  const auto count = static_cast<long long>(std::floor((r_max - r_min) / step + 1e-6));
  for (long long i = 0; i <= count; ++i) grid.push_back(r_min + static_cast<double>(i) * step);
  return grid;
}

namespace {

constexpr int kScanPoints = 200;
constexpr int kBrentBits = 40;

// Minimizes f over [lo, hi] by a uniform scan followed by Brent's method on
// the bracket around the best scan point. Returns the smallest value seen.
template <class F>
double scan_minimize(F f, double lo, double hi) {
  double best_x = lo;
  double best = f(lo);
  const double step = (hi - lo) / kScanPoints;
  for (int i = 1; i <= kScanPoints; ++i) {
    const double x = lo + i * step;
    const double v = f(x);
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  const double a = std::max(lo, best_x - step);
  const double b = std::min(hi, best_x + step);
  if (b > a) {
    const auto [x, v] = boost::math::tools::brent_find_minima(f, a, b, kBrentBits);
    (void)x;
    best = std::min(best, v);
  }
  return best;
}

}  // namespace

double bipartite_direct_rate(std::span<const double> p, double r) {
  if (!(r > 0.0)) throw InputError("direct rate needs r > 0");
  const double h = shannon_entropy(p);
  const double h_inf = min_entropy(p);
  const double gap = h - h_inf;
  if (gap < 1e-14) return h_inf;
  // u = 1/alpha; orders with u > u_max cannot beat H_inf since H_alpha <= H.
  const double u_max = 1.0 / (1.0 + r / gap);
  const auto neg = [&](double u) {
    const double alpha = 1.0 / u;
    return -(r / (1.0 - alpha) + renyi_entropy(p, alpha));
  };
  const double best = -scan_minimize(neg, u_max / kScanPoints, u_max);
  return std::max(h_inf, best);
}

double bipartite_sc_rate(std::span<const double> p, double r) {
  if (!(r >= 0.0)) throw InputError("strong-converse rate needs r >= 0");
  const double h = shannon_entropy(p);
  const double h0 = max_entropy(p);
  if (r == 0.0 || h0 - h < 1e-14) return h;
  // u = alpha/(1-alpha); beyond (H0 - H)/r the linear term alone exceeds H0 - H.
  const double u_max = (h0 - h) / r;
  const auto obj = [&](double u) { return r * u + renyi_entropy(p, u / (1.0 + u)); };
  const double best = scan_minimize(obj, 0.0, u_max);
  return std::clamp(best, h, h0);
}

namespace {

constexpr double kSlopeStep = 1e-4;

double sc_slope(std::span<const double> p, double x) {
  return (bipartite_sc_rate(p, x + kSlopeStep) - bipartite_sc_rate(p, x)) / kSlopeStep;
}

}  // namespace

double sc_slope_one_point(std::span<const double> p) {
  if (sc_slope(p, 0.0) <= 1.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (sc_slope(p, hi) > 1.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw InputError("strong-converse slope never falls below 1");
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (sc_slope(p, mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double bipartite_sc_fidelity_rate(std::span<const double> p, double r) {
  if (!(r >= 0.0)) throw InputError("fidelity strong-converse rate needs r >= 0");
  const double x = std::min(r, sc_slope_one_point(p));
  return bipartite_sc_rate(p, x) + r - x;
}

double sc_fidelity_from_probability(const RateCurve& curve, double r) {
  if (curve.kind() != CurveKind::StrongConverse) throw InputError("transform needs a strong-converse curve");
  if (!(r >= 0.0)) throw InputError("transform needs r >= 0");
  if (curve.size() == 0) throw InputError("rate curve is empty");
  if (r > curve.grid().back() + 1e-12) throw InputError("r lies beyond the curve's grid");
  double best = curve.at(r);
  for (std::size_t i = 0; i < curve.size() && curve.grid()[i] <= r; ++i) {
    best = std::max(best, curve.values()[i] + r - curve.grid()[i]);
  }
  return best;
}

FidToProb oneshot_fid_to_prob(long long d, double epsilon) {
  if (d < 1) throw InputError("Schmidt rank must be >= 1");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in [0, 1)");
  const long long ebits = d / 8;
  return {ebits, std::max(0.0, 1.0 - 30.0 * epsilon), ebits == 0};
}

double oneshot_prob_to_fid(long long d, double p, long long target_rank) {
  if (d < 1) throw InputError("Schmidt rank must be >= 1");
  if (target_rank < d) throw InputError("target rank must be >= d");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("probability must lie in [0, 1]");
  return 1.0 - p * static_cast<double>(d) / static_cast<double>(target_rank);
}

LowFidelityBound oneshot_lowfid_bound(long long d, double epsilon) {
  if (d < 2) throw InputError("low-fidelity bound needs d >= 2");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw InputError("epsilon must lie in [0, 1]");
  const double dd = static_cast<double>(d);
  const double value = (std::sqrt(dd * (1.0 - epsilon)) - 1.0) / std::log(dd);
  return {value, value <= 0.0};
}

}  // namespace ebits
