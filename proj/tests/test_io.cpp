#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "ebits/errors.hpp"
#include "ebits/io.hpp"

using namespace ebits;
using nlohmann::json;

namespace {

const std::filesystem::path kStates = EBITS_STATE_DIR;

double max_difference(const PureTripartiteState& x, const PureTripartiteState& y) {
  return (x.amplitudes() - y.amplitudes()).cwiseAbs().maxCoeff();
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST(ParseState, BundledStatesMatchFactories) {
  EXPECT_LT(max_difference(load_state(kStates / "w.json"), states::w()), 1e-15);
  EXPECT_LT(max_difference(load_state(kStates / "ghz.json"), states::ghz()), 1e-15);
  EXPECT_LT(max_difference(load_state(kStates / "product.json"), states::product()), 1e-15);
  EXPECT_LT(max_difference(load_state(kStates / "epr_ab.json"), states::epr_ab()), 1e-15);
  const PureTripartiteState r = load_state(kStates / "random333.json");
  EXPECT_EQ(r.dims(), (Dims{3, 3, 3}));
  EXPECT_NEAR(r.amplitudes().norm(), 1.0, 1e-12);
}

TEST(ParseState, DefaultsAndRescaling) {
  const PureTripartiteState s = parse_state(R"({"dims":[2,1,1],"amps":[{"idx":[1,0,0],"re":0.6},{"idx":[0,0,0],"re":0.0,"im":0.8}]})");
  EXPECT_NEAR(s(0, 0, 0).imag(), 0.8, 1e-15);
  EXPECT_NEAR(s(1, 0, 0).real(), 0.6, 1e-15);
  const PureTripartiteState near = parse_state(R"({"dims":[1,1,1],"amps":[{"idx":[0,0,0],"re":1.0000001}]})");
  EXPECT_DOUBLE_EQ(std::abs(near(0, 0, 0)), 1.0);
}

TEST(ParseState, RejectsBadInput) {
  const std::vector<std::string> bad{
      "not json",
      R"({"amps":[]})",
      R"({"dims":[2,2],"amps":[]})",
      R"({"dims":[2,2,0],"amps":[]})",
      R"({"dims":[2,2,2],"amps":[{"idx":[2,0,0],"re":1}]})",
      R"({"dims":[2,2,2],"amps":[{"idx":[0,0,0],"re":1},{"idx":[0,0,0],"re":0}]})",
      R"({"dims":[2,2,2],"amps":[{"idx":[0,0,0],"re":0.5}]})",
      R"({"dims":[2,2,2],"amps":[]})",
  };
  for (const auto& text : bad) EXPECT_THROW(parse_state(text), InputError) << text;
  EXPECT_THROW(load_state(kStates / "missing.json"), InputError);
}

TEST(StateJson, RoundTrips) {
  for (const auto& s : {states::w(), states::ghz(), states::random({3, 2, 4}, 12)}) {
    const PureTripartiteState back = parse_state(state_json(s));
    EXPECT_EQ(back.dims(), s.dims());
    EXPECT_LT(max_difference(back, s), 1e-15);
  }
  EXPECT_EQ(json::parse(state_json(states::w()))["amps"].size(), 3u);
}

TEST(FormatNumber, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(0.918295834054494), "0.918295834054");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(1e-20), "1e-20");
  EXPECT_EQ(format_number(INFINITY), "inf");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
  EXPECT_EQ(format_number(NAN), "nan");
}

TEST(CurveCsv, HeaderAndRows) {
  const RateCurve c = RateCurve::sample(CurveKind::StrongConverse, {0.0, 0.5}, [](double r) { return 2 * r; });
  EXPECT_EQ(curve_csv(c), "r,R\n0,0\n0.5,1\n");
}

TEST(Json, CertificateFields) {
  const json j = json::parse(certificate_json(build_povm(states::ghz(), 1)));
  for (const char* key : {"vectors", "weights", "guaranteed_ebits", "min_entropy_floor", "completeness_residual", "seed",
                          "attempts", "scheme"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["seed"], 1);
  EXPECT_DOUBLE_EQ(j["min_entropy_floor"].get<double>(), 1.0);
  EXPECT_EQ(j["vectors"].size(), j["weights"].size());
}

TEST(Json, KlBallAndTruncation) {
  const auto cert = detect_free_support(states::w());
  const json ball = json::parse(kl_ball_solution_json(kl_ball_minmax_entropy(cert->measured, 0.1), 0.1));
  EXPECT_DOUBLE_EQ(ball["r"].get<double>(), 0.1);
  EXPECT_EQ(ball["q"].size(), 3u);
  double total = 0.0;
  for (const auto& entry : ball["q"]) total += entry["p"].get<double>();
  EXPECT_NEAR(total, 1.0, 1e-11);

  const json t = json::parse(truncation_outcome_json(simultaneous_truncate(states::w(), 0.5, 0.5)));
  EXPECT_NEAR(t["p_a"].get<double>(), 5.0 / 6.0, 1e-11);
}

TEST(Json, SpectrumTableWithBounds) {
  const SpectrumTable table = spectrum_table(states::w(), 2);
  const std::array<double, 3> theta{0.5, 0.5, 0.0};
  const BoundsRecord record{0.5, theta, WeightConvention::Norm, e_alpha_theta_bounds(table, 0.5, theta)};
  const json j = json::parse(spectrum_table_json(table, record));
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["entries"].size(), table.entries.size());
  EXPECT_EQ(j["bounds"]["convention"], "norm");
  EXPECT_NEAR(j["bounds"]["upper"].get<double>() - j["bounds"]["lower"].get<double>(),
              j["bounds"]["slack"].get<double>(), 1e-10);
  EXPECT_FALSE(json::parse(spectrum_table_json(table)).contains("bounds"));
}

TEST(WriteOutput, WritesFileAndRejectsBadPath) {
  const auto path = std::filesystem::temp_directory_path() / "ebits_io_test.txt";
  write_output(path, "hello\n");
  EXPECT_EQ(read_file(path), "hello\n");
  std::filesystem::remove(path);
  EXPECT_THROW(write_output("/nonexistent-dir/x/y.txt", "x"), InputError);
}
