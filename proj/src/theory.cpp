#include "lcroots/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lcroots::theory {

namespace {

double triangular(int r) { return 0.5 * static_cast<double>(r) * static_cast<double>(r + 1); }

void check_profile_args(int n, int r_peak) {
  if (n < 1) throw std::domain_error("psi_n: degree must be positive");
  if (r_peak < 0 || r_peak > n) throw std::domain_error("psi_n: peak index out of range");
}

}  // namespace

double psi(double t) {
  const double a = std::abs(t);
  if (!(a < 0.5)) throw std::domain_error("psi: |t| must be < 1/2, got " + std::to_string(t));
  return -4.0 * a - 2.0 * std::log1p(-2.0 * a);
}

double psi_tilted_log(double t, double log_abs_z) { return psi(t) - (0.5 + t) * log_abs_z; }

double psi_tilted(double t, std::complex<double> z) {
  if (z == std::complex<double>(0.0, 0.0)) throw std::domain_error("psi_tilted: z must be nonzero");
  return psi_tilted_log(t, std::log(std::abs(z)));
}

double big_g_log(double x) {
  if (std::isnan(x)) throw std::domain_error("big_g: NaN argument");
  if (x <= 0.0) return 2.0 * std::log(4.0 / (4.0 - x));
  return x + 2.0 * std::log(4.0 / (4.0 + x));
}

double big_g_radial(double r) {
  if (r < 0.0 || std::isnan(r)) throw std::domain_error("big_g: radius must be nonnegative");
  if (r == 0.0) return -std::numeric_limits<double>::infinity();
  return big_g_log(std::log(r));
}

double big_g(std::complex<double> z) { return big_g_radial(std::abs(z)); }

double big_g_radial_derivative(double r) {
  if (!(r > 0.0)) throw std::domain_error("big_g_radial_derivative: radius must be positive");
  const double x = std::log(r);
  if (x <= 0.0) return 2.0 / (r * (4.0 - x));
  return (x + 2.0) / (r * (4.0 + x));
}

double mu_density(std::complex<double> z) {
  const double r = std::abs(z);
  if (!(r > 0.0)) throw std::domain_error("mu_density: z must be nonzero");
  const double d = 4.0 + std::abs(std::log(r));
  return 1.0 / (std::numbers::pi * r * r * d * d);
}

double mu_radial_cdf(double r) {
  if (!(r > 0.0)) throw std::domain_error("mu_radial_cdf: radius must be positive");
  return log_radial_cdf(std::log(r));
}

double log_radial_density(double x) {
  const double d = 4.0 + std::abs(x);
  return 2.0 / (d * d);
}

double log_radial_cdf(double x) {
  if (std::isnan(x)) throw std::domain_error("log_radial_cdf: NaN argument");
  if (x <= 0.0) return 2.0 / (4.0 - x);
  return 1.0 - 2.0 / (4.0 + x);
}

double log_radial_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("log_radial_quantile: p must lie in (0, 1), got " + std::to_string(p));
  }
  if (p <= 0.5) return 4.0 - 2.0 / p;
  return 2.0 / (1.0 - p) - 4.0;
}

double RadialLaw::radial_quantile(double p) const { return std::exp(log_radial_quantile(p)); }

double psi_n_profile(int n, int r_peak, int k) {
  check_profile_args(n, r_peak);
  if (k < -r_peak || k > n - r_peak) {
    throw std::domain_error("psi_n: offset " + std::to_string(k) + " outside [-R, n-R]");
  }
  // Mirror image: offsets to the right of the peak see n - R in place of R.
  const int side = k <= 0 ? r_peak : n - r_peak;
  const int l = std::abs(k);
  double sum = 0.0;
  for (int s = 1; s <= l; ++s) sum += s / triangular(side - l + s);
  return 1.0 / (n + 1.0) + sum;
}

std::vector<double> psi_n_sweep(int n, int r_peak) {
  check_profile_args(n, r_peak);
  std::vector<double> out(n + 1);
  out[r_peak] = 1.0 / (n + 1.0);
  double slope = 0.0;
  for (int l = 1; l <= r_peak; ++l) {
    slope += 1.0 / triangular(r_peak - l + 1);
    out[r_peak - l] = out[r_peak - l + 1] + slope;
  }
  slope = 0.0;
  for (int l = 1; l <= n - r_peak; ++l) {
    slope += 1.0 / triangular(n - r_peak - l + 1);
    out[r_peak + l] = out[r_peak + l - 1] + slope;
  }
  return out;
}

double phi_profile(double t, double r) {
  if (!(r != 0.0) || !(1.0 + t / r > 0.0)) throw std::domain_error("phi_profile: requires 1 + t/r > 0");
  const double u = t / r;
  return -2.0 * std::log1p(u) + 2.0 * u;
}

double hughes_quantity(const std::vector<double>& log_coeffs) {
  if (log_coeffs.size() < 2) throw std::domain_error("hughes_quantity: degree must be positive");
  for (double l : log_coeffs) {
    if (!std::isfinite(l)) throw std::domain_error("hughes_quantity: log-coefficients must be finite");
  }
  const double top = *std::max_element(log_coeffs.begin(), log_coeffs.end());
  double sum = 0.0;
  for (double l : log_coeffs) sum += std::exp(l - top);
  const double log_sum = top + std::log(sum);
  const double n = static_cast<double>(log_coeffs.size() - 1);
  return (log_sum - 0.5 * (log_coeffs.front() + log_coeffs.back())) / n;
}

double jensen_origin_envelope(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("jensen_origin_envelope: delta must lie in (0, 1)");
  const double x = std::log(delta);
  return (big_g_log(0.5 * x) - big_g_log(x)) / (-0.5 * x);
}

}  // namespace lcroots::theory
