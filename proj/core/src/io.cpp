#include "ebits/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ebits/errors.hpp"

namespace ebits {

using nlohmann::json;

namespace {

// Numbers go through the 12-digit text form so JSON carries the same
// precision as CSV. Non-finite values become null.
json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_number(x));
}

json partition_json(const Partition& p) { return json(p); }

std::string dump(const json& j) { return j.dump() + "\n"; }

const char* scheme_name(SamplingScheme s) {
  switch (s) {
    case SamplingScheme::Auto:
      return "auto";
    case SamplingScheme::Iid:
      return "iid";
    case SamplingScheme::HadamardOrbit:
      return "hadamard-orbit";
  }
  return "unknown";
}

}  // namespace

PureTripartiteState parse_state(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("state JSON: ") + e.what());
  }
  try {
    const auto dims_raw = doc.at("dims").get<std::vector<long long>>();
    if (dims_raw.size() != 3) throw InputError("state JSON: dims must have three entries");
    Dims dims{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (dims_raw[i] < 1 || dims_raw[i] > (1LL << 20)) throw InputError("state JSON: dims out of range");
      dims[i] = static_cast<int>(dims_raw[i]);
    }
    const std::size_t total = static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    if (total > (std::size_t{1} << 28)) throw InputError("state JSON: state too large");
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(total));
    std::set<std::array<int, 3>> seen;
    for (const json& entry : doc.at("amps")) {
      const auto idx = entry.at("idx").get<std::vector<long long>>();
      if (idx.size() != 3) throw InputError("state JSON: idx must have three entries");
      std::array<int, 3> label{};
      for (std::size_t i = 0; i < 3; ++i) {
        if (idx[i] < 0 || idx[i] >= dims[i]) throw InputError("state JSON: idx out of range");
        label[i] = static_cast<int>(idx[i]);
      }
      if (!seen.insert(label).second) throw InputError("state JSON: repeated idx");
      const double re = entry.value("re", 0.0);
      const double im = entry.value("im", 0.0);
      if (!std::isfinite(re) || !std::isfinite(im)) throw InputError("state JSON: non-finite amplitude");
      amps[static_cast<Eigen::Index>((static_cast<std::size_t>(label[0]) * dims[1] + label[1]) * dims[2] + label[2])] =
          cplx(re, im);
    }
    const double norm2 = amps.squaredNorm();
    if (std::abs(norm2 - 1.0) > kLoadNormTolerance) {
      throw InputError("state JSON: squared norm " + format_number(norm2) + " is not 1");
    }
    return PureTripartiteState::normalized(dims, std::move(amps));
  } catch (const json::exception& e) {
    throw InputError(std::string("state JSON: ") + e.what());
  }
}

PureTripartiteState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read state file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str());
}

std::string state_json(const PureTripartiteState& state) {
  const auto [da, db, dc] = state.dims();
  json amps = json::array();
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int c = 0; c < dc; ++c) {
        const cplx x = state(a, b, c);
        if (x == cplx{}) continue;
        amps.push_back({{"idx", {a, b, c}}, {"re", x.real()}, {"im", x.imag()}});
      }
  return dump({{"dims", {da, db, dc}}, {"amps", amps}});
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string curve_csv(const RateCurve& curve) {
  std::string out = "r,R\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out += format_number(curve.grid()[i]) + "," + format_number(curve.values()[i]) + "\n";
  }
  return out;
}

std::string certificate_json(const PovmCertificate& c) {
  json weights = json::array();
  for (double w : c.weights) weights.push_back(number(w));
  return dump({{"vectors", c.vectors},
               {"weights", weights},
               {"guaranteed_ebits", c.guaranteed_ebits},
               {"min_entropy_floor", number(c.min_entropy_floor)},
               {"completeness_residual", number(c.completeness_residual)},
               {"seed", c.seed},
               {"attempts", c.attempts},
               {"scheme", scheme_name(c.scheme)}});
}

std::string kl_ball_solution_json(const KlBallSolution& s, double r) {
  json q = json::array();
  for (std::size_t i = 0; i < s.q.size(); ++i) {
    q.push_back({{"idx", s.q.labels()[i]}, {"p", number(s.q.probs()[i])}});
  }
  return dump({{"r", number(r)},
               {"value", number(s.value)},
               {"x_weight", number(s.x_weight)},
               {"multiplier", number(s.multiplier)},
               {"kl", number(s.kl)},
               {"dual_value", number(s.dual_value)},
               {"q", q}});
}

std::string truncation_outcome_json(const TruncationOutcome& o) {
  return dump({{"p_a", number(o.p_a)},
               {"p_b", number(o.p_b)},
               {"p_ab", number(o.p_ab)},
               {"h_a", number(o.h_a)},
               {"h_b", number(o.h_b)},
               {"h_a_single", number(o.h_a_single)},
               {"h_b_single", number(o.h_b_single)},
               {"degenerate", o.degenerate},
               {"union_slack", number(o.union_slack())},
               {"inequalities_hold", o.inequalities_hold()}});
}

std::string spectrum_table_json(const SpectrumTable& table, const std::optional<BoundsRecord>& bounds) {
  json entries = json::array();
  for (const SpectrumEntry& e : table.entries) {
    entries.push_back({{"lamA", partition_json(e.lambda.a)},
                       {"lamB", partition_json(e.lambda.b)},
                       {"lamC", partition_json(e.lambda.c)},
                       {"w", number(e.weight)}});
  }
  json doc = {{"n", table.n}, {"dims", table.dims}, {"entries", entries}};
  if (bounds) {
    const SandwichBounds& b = bounds->bounds;
    doc["bounds"] = {{"alpha", number(bounds->alpha)},
                     {"theta", {number(bounds->theta[0]), number(bounds->theta[1]), number(bounds->theta[2])}},
                     {"convention", bounds->convention == WeightConvention::Norm ? "norm" : "squared-norm"},
                     {"lower", number(b.lower)},
                     {"upper", number(b.upper)},
                     {"slack", number(b.slack)},
                     {"argmax", {{"lamA", b.argmax.a}, {"lamB", b.argmax.b}, {"lamC", b.argmax.c}}}};
  }
  return dump(doc);
}

void write_output(const std::filesystem::path& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("failed writing " + path.string());
}

}  // namespace ebits
