// ebits: rates and exponents for distilling EPR pairs between A and B from
// a tripartite pure state.
//
// Exit codes: 0 ok, 1 internal error, 2 bad input, 3 support not free,
// 4 POVM retries exhausted, 5 Schur-Weyl budget exceeded.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ebits/errors.hpp"
#include "ebits/free_support.hpp"
#include "ebits/io.hpp"
#include "ebits/povm.hpp"
#include "ebits/rates.hpp"
#include "ebits/schur_weyl.hpp"
#include "ebits/truncation.hpp"

namespace {

using namespace ebits;
namespace fs = std::filesystem;

enum Exit : int { kOk = 0, kInternal = 1, kInput = 2, kNotFree = 3, kRetry = 4, kBudget = 5 };

struct GridFlags {
  double r_min = 0.0;
  double r_max = 1.0;
  double r_step = 0.01;
};

struct Common {
  std::string state_path;
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, Common& c, const std::string& default_format) {
  c.format = default_format;
  cmd->add_option("--state", c.state_path, "State JSON file")->required();
  cmd->add_option("--out", c.out, "Output file (stdout when omitted)");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

void add_grid(CLI::App* cmd, GridFlags& g) {
  cmd->add_option("--r-min", g.r_min, "First exponent on the grid");
  cmd->add_option("--r-max", g.r_max, "Last exponent on the grid");
  cmd->add_option("--r-step", g.r_step, "Grid spacing");
}

std::array<double, 3> parse_theta(const std::string& text) {
  std::array<double, 3> theta{};
  std::stringstream in(text);
  std::string item;
  std::size_t count = 0;
  while (std::getline(in, item, ',')) {
    if (count == 3) throw InputError("--theta takes three comma-separated weights");
    try {
      std::size_t used = 0;
      theta[count] = std::stod(item, &used);
      if (used != item.size()) throw InputError("bad --theta entry '" + item + "'");
    } catch (const std::logic_error&) {
      throw InputError("bad --theta entry '" + item + "'");
    }
    ++count;
  }
  if (count != 3) throw InputError("--theta takes three comma-separated weights");
  return theta;
}

double min_over_cuts(const MarginalSpectrum& a, const MarginalSpectrum& b, double (*rate)(std::span<const double>, double),
                     double r) {
  return std::min(rate(a.values(), r), rate(b.values(), r));
}

// --- rates -----------------------------------------------------------------

struct RatesConfig {
  Common common;
  GridFlags grid;
  std::string curve = "all";
};

int run_rates(const RatesConfig& cfg) {
  const PureTripartiteState state = load_state(cfg.common.state_path);
  if (cfg.common.format != "csv") throw InputError("rates writes CSV only");
  const std::vector<double> grid = make_grid(cfg.grid.r_min, cfg.grid.r_max, cfg.grid.r_step);
  const MarginalSpectrum a = marginal_spectrum(state, Subsystem::A);
  const MarginalSpectrum b = marginal_spectrum(state, Subsystem::B);

  const auto direct = [&] {
    std::vector<double> positive;
    for (double r : grid) {
      if (r > 0.0) positive.push_back(r);
    }
    if (positive.empty()) throw InputError("the direct curve needs some r > 0 on the grid");
    return direct_exponent_curve(state, std::move(positive));
  };
  const auto sc = [&] {
    return RateCurve::sample(CurveKind::StrongConverse, grid,
                             [&](double r) { return min_over_cuts(a, b, &bipartite_sc_rate, r); });
  };
  const auto fidelity = [&] {
    return RateCurve::sample(CurveKind::StrongConverseFidelity, grid,
                             [&](double r) { return min_over_cuts(a, b, &bipartite_sc_fidelity_rate, r); });
  };

  if (cfg.curve == "direct") {
    write_output(cfg.common.out, curve_csv(direct()));
  } else if (cfg.curve == "sc") {
    write_output(cfg.common.out, curve_csv(sc()));
  } else if (cfg.curve == "fidelity") {
    write_output(cfg.common.out, curve_csv(fidelity()));
  } else {
    if (cfg.common.out.empty()) throw InputError("--curve all needs --out DIR");
    const fs::path dir(cfg.common.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create " + dir.string());
    write_output(dir / "direct.csv", curve_csv(direct()));
    write_output(dir / "strong_converse.csv", curve_csv(sc()));
    write_output(dir / "strong_converse_fidelity.csv", curve_csv(fidelity()));
  }
  return kOk;
}

// --- trirate ---------------------------------------------------------------

struct TrirateConfig {
  Common common;
  GridFlags grid{0.0, 0.7, 0.005};
};

int run_trirate(const TrirateConfig& cfg) {
  const PureTripartiteState state = load_state(cfg.common.state_path);
  const std::vector<double> grid = make_grid(cfg.grid.r_min, cfg.grid.r_max, cfg.grid.r_step);
  const auto cert = detect_free_support(state);
  if (!cert) {
    std::cerr << "ebits: the support is not free in the computational bases; "
                 "`ebits schur` gives finite-n lower bounds for general states\n";
    return kNotFree;
  }
  if (cfg.common.format == "csv") {
    write_output(cfg.common.out, curve_csv(sc_rate_curve(cert->measured, grid)));
    return kOk;
  }
  std::string text = "[\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    text += kl_ball_solution_json(kl_ball_minmax_entropy(cert->measured, grid[i]), grid[i]);
    if (i + 1 < grid.size()) text.insert(text.size() - 1, ",");
  }
  text += "]\n";
  write_output(cfg.common.out, text);
  return kOk;
}

// --- protocol --------------------------------------------------------------

struct ProtocolConfig {
  Common common;
  std::uint64_t seed = 0;
  std::optional<long long> samples;
  int max_retries = 64;
  std::string scheme = "auto";
};

int run_protocol(const ProtocolConfig& cfg) {
  const PureTripartiteState state = load_state(cfg.common.state_path);
  if (cfg.common.format != "json") throw InputError("protocol writes JSON only");
  PovmOptions opts;
  opts.samples = cfg.samples;
  opts.max_retries = cfg.max_retries;
  opts.scheme = cfg.scheme == "iid"     ? SamplingScheme::Iid
                : cfg.scheme == "orbit" ? SamplingScheme::HadamardOrbit
                                        : SamplingScheme::Auto;
  write_output(cfg.common.out, certificate_json(build_povm(state, cfg.seed, opts)));
  return kOk;
}

// --- schur -----------------------------------------------------------------

struct SchurConfig {
  Common common;
  GridFlags grid{0.0, 1.0, 0.05};
  int n = 0;
  int n_max = 6;
  std::optional<double> alpha;
  std::string theta = "0.5,0.5,0";
  std::string convention = "norm";
};

int run_schur(const SchurConfig& cfg) {
  const PureTripartiteState state = load_state(cfg.common.state_path);
  SchurOptions opts;
  opts.n_max = cfg.n_max;
  const SpectrumTable table = spectrum_table(state, cfg.n, opts);
  if (cfg.common.format == "csv") {
    const std::vector<double> grid = make_grid(cfg.grid.r_min, cfg.grid.r_max, cfg.grid.r_step);
    write_output(cfg.common.out,
                 curve_csv(RateCurve::sample(CurveKind::StrongConverse, grid,
                                             [&](double r) { return general_sc_rate_estimate(table, r).value; })));
    return kOk;
  }
  std::optional<BoundsRecord> bounds;
  if (cfg.alpha) {
    const auto theta = parse_theta(cfg.theta);
    const WeightConvention conv = cfg.convention == "norm" ? WeightConvention::Norm : WeightConvention::SquaredNorm;
    bounds = BoundsRecord{*cfg.alpha, theta, conv, e_alpha_theta_bounds(table, *cfg.alpha, theta, conv)};
  }
  write_output(cfg.common.out, spectrum_table_json(table, bounds));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rates and exponents for tripartite-to-EPR_AB distillation"};
  app.require_subcommand(1);

  RatesConfig rates;
  auto* rates_cmd = app.add_subcommand("rates", "Direct and strong converse curves of the A and B cuts");
  add_common(rates_cmd, rates.common, "csv");
  add_grid(rates_cmd, rates.grid);
  rates_cmd->add_option("--curve", rates.curve, "direct, sc, fidelity or all (all writes three files into --out)")
      ->check(CLI::IsMember({"direct", "sc", "fidelity", "all"}));

  TrirateConfig trirate;
  auto* trirate_cmd = app.add_subcommand("trirate", "Exact strong converse rate curve for free-support states");
  add_common(trirate_cmd, trirate.common, "csv");
  add_grid(trirate_cmd, trirate.grid);

  ProtocolConfig protocol;
  auto* protocol_cmd = app.add_subcommand("protocol", "One-shot deterministic POVM certificate");
  add_common(protocol_cmd, protocol.common, "json");
  protocol_cmd->add_option("--seed", protocol.seed, "RNG seed")->required();
  protocol_cmd->add_option("--samples", protocol.samples, "Number of sign vectors per attempt");
  protocol_cmd->add_option("--max-retries", protocol.max_retries, "Resampling attempts before giving up")
      ->check(CLI::PositiveNumber);
  protocol_cmd->add_option("--scheme", protocol.scheme, "auto, iid or orbit")
      ->check(CLI::IsMember({"auto", "iid", "orbit"}));

  SchurConfig schur;
  auto* schur_cmd = app.add_subcommand("schur", "Schur-Weyl spectrum table, M_n bounds and rate estimates");
  add_common(schur_cmd, schur.common, "json");
  add_grid(schur_cmd, schur.grid);
  schur_cmd->add_option("--n", schur.n, "Number of copies")->required();
  schur_cmd->add_option("--n-max", schur.n_max, "Largest n accepted");
  schur_cmd->add_option("--alpha", schur.alpha, "Order in (0, 1); adds M_n bounds to the JSON");
  schur_cmd->add_option("--theta", schur.theta, "Weights a,b,c for the bounds");
  schur_cmd->add_option("--convention", schur.convention, "norm or squared")
      ->check(CLI::IsMember({"norm", "squared"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*rates_cmd) return run_rates(rates);
    if (*trirate_cmd) return run_trirate(trirate);
    if (*protocol_cmd) return run_protocol(protocol);
    if (*schur_cmd) return run_schur(schur);
  } catch (const InputError& e) {
    std::cerr << "ebits: " << e.what() << "\n";
    return kInput;
  } catch (const RetryExhausted& e) {
    std::cerr << "ebits: " << e.what() << " (" << e.attempts() << " attempts)\n";
    return kRetry;
  } catch (const BudgetExceeded& e) {
    std::cerr << "ebits: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "ebits: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
