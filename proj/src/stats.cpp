#include "lcroots/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lcroots/theory.hpp"

namespace lcroots {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// One-sample KS and Kuiper pieces for sorted data against a continuous CDF.
struct Deviations {
  double above = 0.0;  // sup (F_n - F)
  double below = 0.0;  // sup (F - F_n)
};

template <class Cdf>
Deviations deviations(const std::vector<double>& sorted, Cdf cdf) {
  Deviations d;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d.above = std::max(d.above, (i + 1) / n - f);
    d.below = std::max(d.below, f - i / n);
  }
  return d;
}

}  // namespace

EmpiricalRootMeasure EmpiricalRootMeasure::from_roots(const std::vector<Root>& roots) {
  EmpiricalRootMeasure m;
  m.n = static_cast<int>(roots.size());
  m.log_radii.reserve(roots.size());
  m.args.reserve(roots.size());
  for (const auto& r : roots) {
    m.log_radii.push_back(r.log_abs);
    m.args.push_back(r.arg);
  }
  std::sort(m.log_radii.begin(), m.log_radii.end());
  return m;
}

double ks_log_radius(const EmpiricalRootMeasure& m) {
  if (m.log_radii.empty()) throw std::domain_error("ks_log_radius: empty measure");
  const auto d = deviations(m.log_radii, theory::log_radial_cdf);
  return std::max(d.above, d.below);
}

AngularFit ks_angular(const EmpiricalRootMeasure& m) {
  if (m.args.empty()) throw std::domain_error("ks_angular: empty measure");
  std::vector<double> u(m.args.size());
  std::transform(m.args.begin(), m.args.end(), u.begin(), [](double theta) {
    const double v = (theta + std::numbers::pi) / kTwoPi;
    return v >= 1.0 ? v - 1.0 : v;
  });
  std::sort(u.begin(), u.end());
  const auto d = deviations(u, [](double x) { return x; });
  return {std::max(d.above, d.below), d.above + d.below};
}

double modulus_concentration(const EmpiricalRootMeasure& m, double band) {
  if (!(band > 0.0)) throw std::domain_error("modulus_concentration: band must be positive");
  if (m.log_radii.empty()) return 0.0;
  const double upper = std::log1p(band);
  const double lower = band < 1.0 ? std::log1p(-band) : -INFINITY;
  const auto outside = std::count_if(m.log_radii.begin(), m.log_radii.end(),
                                     [&](double x) { return x > upper || x < lower; });
  return static_cast<double>(outside) / m.log_radii.size();
}

std::vector<PotentialRow> log_potential_profile(const LogCoeffPoly& poly, const std::vector<double>& radii,
                                                int angles_per_radius) {
  if (angles_per_radius < 1) throw std::domain_error("log_potential_profile: need at least one angle");
  const double n = poly.degree();
  std::vector<PotentialRow> rows;
  rows.reserve(radii.size());
  for (double r : radii) {
    if (!(r > 0.0)) throw std::domain_error("log_potential_profile: radii must be positive");
    PotentialRow row;
    row.radius = r;
    row.limit = theory::big_g_radial(r);
    row.values.reserve(angles_per_radius);
    const double x = std::log(r);
    double sum = 0.0;
    for (int j = 0; j < angles_per_radius; ++j) {
      const double theta = kTwoPi * j / angles_per_radius;
      const double v = eval_log_polar(poly, x, theta).log_abs / n;
      row.values.push_back(v);
      sum += v;
    }
    row.circular_mean = sum / angles_per_radius;
    rows.push_back(std::move(row));
  }
  return rows;
}

double near_origin_mass(const RootSet& rs, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("near_origin_mass: delta must lie in (0, 1)");
  if (rs.roots.empty()) return 0.0;
  const double cut = std::log(delta);
  const auto inside =
      std::count_if(rs.roots.begin(), rs.roots.end(), [cut](const Root& r) { return r.log_abs < cut; });
  return static_cast<double>(inside) / rs.roots.size();
}

double cone_angle_gap(const std::vector<double>& args) {
  double min_pos = INFINITY;
  double max_pos = -INFINITY;
  double min_neg = INFINITY;
  double max_neg = -INFINITY;
  for (double a : args) {
    if (a == 0.0) return 0.0;
    if (a > 0.0) {
      min_pos = std::min(min_pos, a);
      max_pos = std::max(max_pos, a);
    } else {
      min_neg = std::min(min_neg, a);
      max_neg = std::max(max_neg, a);
    }
  }
  const bool has_pos = std::isfinite(min_pos);
  const bool has_neg = std::isfinite(min_neg);
  if (has_pos && has_neg) return min_pos - max_neg;
  if (has_pos) return min_pos + kTwoPi - max_pos;
  if (has_neg) return min_neg + kTwoPi - max_neg;
  return kTwoPi;
}

double cone_angle_gap(const RootSet& rs) {
  std::vector<double> args(rs.roots.size());
  std::transform(rs.roots.begin(), rs.roots.end(), args.begin(), [](const Root& r) { return r.arg; });
  return cone_angle_gap(args);
}

std::vector<Root> sample_limit_measure(int n, Engine& rng) {
  std::vector<Root> out(n);
  for (auto& r : out) {
    double u = uniform_open_closed(rng);
    while (u >= 1.0) u = uniform_open_closed(rng);
    r.log_abs = theory::log_radial_quantile(u);
    // (0, 1] -> (-pi, pi]
    r.arg = std::numbers::pi * (2.0 * uniform_open_closed(rng) - 1.0);
  }
  return out;
}

}  // namespace lcroots
