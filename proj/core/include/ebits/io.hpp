#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "ebits/free_support.hpp"
#include "ebits/povm.hpp"
#include "ebits/rates.hpp"
#include "ebits/schur_weyl.hpp"
#include "ebits/state.hpp"
#include "ebits/truncation.hpp"

namespace ebits {

/// Squared norms within this distance of 1 are rescaled on load.
inline constexpr double kLoadNormTolerance = 1e-6;

/// Parses {"dims":[dA,dB,dC], "amps":[{"idx":[a,b,c],"re":x,"im":y}, ...]}.
/// Omitted amplitudes and a missing "im" are zero. Throws InputError on
/// malformed JSON, out-of-range or repeated indices, or a squared norm more
/// than kLoadNormTolerance away from 1.
PureTripartiteState parse_state(std::string_view json);
/// Throws InputError if the file cannot be read.
PureTripartiteState load_state(const std::filesystem::path& path);
/// Nonzero amplitudes only.
std::string state_json(const PureTripartiteState& state);

/// 12 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double x);

/// Header `r,R`, one row per grid point.
std::string curve_csv(const RateCurve& curve);

std::string certificate_json(const PovmCertificate& certificate);
std::string kl_ball_solution_json(const KlBallSolution& solution, double r);
std::string truncation_outcome_json(const TruncationOutcome& outcome);

struct BoundsRecord {
  double alpha;
  std::array<double, 3> theta;
  WeightConvention convention;
  SandwichBounds bounds;
};

/// {n, dims, entries:[{lamA, lamB, lamC, w}], bounds?}.
std::string spectrum_table_json(const SpectrumTable& table, const std::optional<BoundsRecord>& bounds = std::nullopt);

/// Writes `text` to `path`, or to stdout when `path` is empty. Throws
/// InputError if the file cannot be written.
void write_output(const std::filesystem::path& path, const std::string& text);

}  // namespace ebits
