#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lcroots/rootsolver.hpp"
#include "lcroots/sampler.hpp"

namespace lcroots {

/// Thrown for unreadable or unwritable files; the CLI maps it to exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One sampled polynomial as serialised by `lcroots sample`:
///   {"n", "model", "alpha", "seed", "index", "R", "W": [...], "log_coeffs": [...]}
/// W and log_coeffs are decimal strings with 17 significant digits.
struct SampleDocument {
  int n = 0;
  Model model = Model::uniform;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::optional<int> r_peak;
  std::vector<double> w;
  std::vector<double> log_coeffs;

  static SampleDocument from_draw(const ConvexSample& s, const ModelCoeffs& c, std::uint64_t seed,
                                  std::uint64_t index);
};

/// Shortest round-trip-safe decimal with 17 significant digits.
std::string format_decimal(double x);

/// sign * e^{log_abs} in decimal scientific notation with 17 significant
/// digits, valid when the value is far outside the double range.
std::string format_extended(double log_abs, int sign);

nlohmann::json to_json(const SampleDocument& doc);
/// Only "log_coeffs" is required; numbers and decimal strings are both accepted.
SampleDocument sample_from_json(const nlohmann::json& j);

/// A file holds one JSON document per line, or a single document, or an array.
std::vector<SampleDocument> read_sample_file(const std::filesystem::path& path);
void write_sample_file(const std::filesystem::path& path, const std::vector<SampleDocument>& docs);

/// Header `re,im,abs,arg,log_abs,residual`, 17 significant digits.
void write_roots_csv(std::ostream& out, const RootSet& rs);

/// Minimal SVG scatter of roots on the fixed window [-2, 2]^2.
struct ScatterSeries {
  std::string label;
  std::string color;
  std::vector<Root> roots;
};
void write_roots_svg(std::ostream& out, const std::vector<ScatterSeries>& series);

}  // namespace lcroots
