#include "lcroots/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace lcroots {

namespace {

double number_or_string(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("not a decimal number: '" + s + "'");
    return x;
  }
  throw std::invalid_argument("expected a number or decimal string");
}

std::vector<double> decimal_array(const nlohmann::json& v) {
  if (!v.is_array()) throw std::invalid_argument("expected an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(number_or_string(e));
  return out;
}

nlohmann::json string_array(const std::vector<double>& xs) {
  auto out = nlohmann::json::array();
  for (double x : xs) out.push_back(format_decimal(x));
  return out;
}

}  // namespace

SampleDocument SampleDocument::from_draw(const ConvexSample& s, const ModelCoeffs& c, std::uint64_t seed,
                                         std::uint64_t index) {
  SampleDocument d;
  d.n = s.n;
  d.model = c.model;
  d.alpha = c.alpha;
  d.seed = seed;
  d.index = index;
  d.r_peak = s.r_peak;
  d.w = s.w;
  d.log_coeffs = c.log_coeffs;
  return d;
}

std::string format_decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_extended(double log_abs, int sign) {
  if (sign == 0 || log_abs == -INFINITY) return "0";
  if (std::abs(log_abs) < 700.0) return format_decimal(sign * std::exp(log_abs));
  const double l10 = log_abs / std::numbers::ln10;
  double e = std::floor(l10);
  double m = std::pow(10.0, l10 - e);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16f", m);
  if (buf[0] == '1' && buf[1] == '0') {  // mantissa rounded up to 10
    m /= 10.0;
    e += 1.0;
  }
  std::snprintf(buf, sizeof buf, "%s%.16fe%+.0f", sign < 0 ? "-" : "", m, e);
  return buf;
}

nlohmann::json to_json(const SampleDocument& d) {
  nlohmann::json j;
  j["n"] = d.n;
  j["model"] = std::string(to_string(d.model));
  j["alpha"] = d.alpha;
  j["seed"] = d.seed;
  j["index"] = d.index;
  if (d.r_peak) j["R"] = *d.r_peak;
  j["W"] = string_array(d.w);
  j["log_coeffs"] = string_array(d.log_coeffs);
  return j;
}

SampleDocument sample_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("log_coeffs")) {
    throw std::invalid_argument("sample document needs a \"log_coeffs\" array");
  }
  SampleDocument d;
  d.log_coeffs = decimal_array(j.at("log_coeffs"));
  if (d.log_coeffs.size() < 2) throw std::invalid_argument("sample document: degree must be at least 1");
  d.n = static_cast<int>(d.log_coeffs.size()) - 1;
  if (j.contains("n") && j.at("n").get<int>() != d.n) {
    throw std::invalid_argument("sample document: \"n\" disagrees with the number of log_coeffs");
  }
  if (j.contains("model")) d.model = parse_model(j.at("model").get<std::string>());
  if (j.contains("alpha")) d.alpha = number_or_string(j.at("alpha"));
  if (j.contains("seed")) d.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("index")) d.index = j.at("index").get<std::uint64_t>();
  if (j.contains("R")) d.r_peak = j.at("R").get<int>();
  if (j.contains("W")) d.w = decimal_array(j.at("W"));
  return d;
}

std::vector<SampleDocument> read_sample_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  std::vector<SampleDocument> docs;
  try {
    const auto whole = nlohmann::json::parse(text);
    if (whole.is_array()) {
      for (const auto& e : whole) docs.push_back(sample_from_json(e));
    } else {
      docs.push_back(sample_from_json(whole));
    }
    return docs;
  } catch (const nlohmann::json::parse_error&) {
    // Fall through to JSON Lines.
  }
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      docs.push_back(sample_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (docs.empty()) throw std::invalid_argument("'" + path.string() + "' holds no sample documents");
  return docs;
}

void write_sample_file(const std::filesystem::path& path, const std::vector<SampleDocument>& docs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  for (const auto& d : docs) out << to_json(d).dump() << '\n';
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

void write_roots_csv(std::ostream& out, const RootSet& rs) {
  out << "re,im,abs,arg,log_abs,residual\n";
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    const auto& r = rs.roots[i];
    const double c = std::cos(r.arg);
    const double s = std::sin(r.arg);
    const auto part = [&](double t) {
      return t == 0.0 ? std::string("0") : format_extended(r.log_abs + std::log(std::abs(t)), t < 0 ? -1 : 1);
    };
    out << part(c) << ',' << part(s) << ',' << format_extended(r.log_abs, 1) << ',' << format_decimal(r.arg) << ','
        << format_decimal(r.log_abs) << ',' << format_decimal(i < rs.residuals.size() ? rs.residuals[i] : NAN)
        << '\n';
  }
}

void write_roots_svg(std::ostream& out, const std::vector<ScatterSeries>& series) {
  constexpr double kSize = 600.0;
  constexpr double kHalfWidth = 2.0;
  const auto px = [&](double v) { return (v + kHalfWidth) / (2.0 * kHalfWidth) * kSize; };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"0\" y1=\"" << px(0) << "\" x2=\"" << kSize << "\" y2=\"" << px(0)
      << "\" stroke=\"#bbb\"/>\n";
  out << "<line x1=\"" << px(0) << "\" y1=\"0\" x2=\"" << px(0) << "\" y2=\"" << kSize
      << "\" stroke=\"#bbb\"/>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    out << "<g fill=\"" << series[s].color << "\" fill-opacity=\"0.7\"><title>" << series[s].label << "</title>\n";
    for (const auto& r : series[s].roots) {
      if (r.log_abs > std::log(2.0 * std::sqrt(2.0))) continue;
      const auto z = r.value();
      if (std::abs(z.real()) > kHalfWidth || std::abs(z.imag()) > kHalfWidth) continue;
      out << "<circle cx=\"" << px(z.real()) << "\" cy=\"" << kSize - px(z.imag()) << "\" r=\"2\"/>\n";
    }
    out << "</g>\n";
    out << "<text x=\"10\" y=\"" << 20 + 18 * s << "\" fill=\"" << series[s].color
        << "\" font-family=\"sans-serif\" font-size=\"14\">" << series[s].label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace lcroots
