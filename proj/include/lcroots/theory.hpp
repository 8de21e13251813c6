#pragma once

#include <complex>
#include <vector>

namespace lcroots::theory {

// Limit laws of the random log-concave ensembles. Natural logarithms throughout.

/// psi(t) = -4|t| - 2 log(1 - 2|t|) for |t| < 1/2; std::domain_error otherwise.
double psi(double t);

/// psi(t; z) = psi(t) - (1/2 + t) log|z|, z != 0.
double psi_tilted(double t, std::complex<double> z);
double psi_tilted_log(double t, double log_abs_z);

/// Radial profile v(r) of the limiting potential G(z) = sup_t -psi(t; z):
///   2 log(4/(4 - log r))             for 0 < r <= 1,
///   log r + 2 log(4/(4 + log r))     for r >= 1.
/// G(0) is -infinity.
double big_g(std::complex<double> z);
double big_g_radial(double r);
/// Same profile parametrised by x = log r, so radii outside double range work.
double big_g_log(double log_r);
/// v'(r); both one-sided limits at r = 1 equal 1/2.
double big_g_radial_derivative(double r);

/// Density of the limit measure w.r.t. planar Lebesgue measure:
///   1 / (pi |z|^2 (4 + |log|z||)^2). Throws at z = 0.
double mu_density(std::complex<double> z);

/// mu(D(0, r)): 2/(4 - log r) for r <= 1, (log r + 2)/(4 + log r) for r >= 1.
double mu_radial_cdf(double r);

/// Density of log|zeta| under mu: 2/(4 + |x|)^2.
double log_radial_density(double x);
/// 2/(4 - x) for x <= 0, 1 - 2/(4 + x) for x >= 0.
double log_radial_cdf(double x);
/// Inverse of log_radial_cdf on (0, 1).
double log_radial_quantile(double p);

/// The limit measure viewed through its radial marginal.
class RadialLaw {
 public:
  double density_at(std::complex<double> z) const { return mu_density(z); }
  double radial_cdf(double r) const { return mu_radial_cdf(r); }
  double log_radial_density(double x) const { return theory::log_radial_density(x); }
  double log_radial_cdf(double x) const { return theory::log_radial_cdf(x); }
  double log_radial_quantile(double p) const { return theory::log_radial_quantile(p); }
  double radial_quantile(double p) const;
};

/// Finite-n expected profile E[W_{R+k} | R], -R <= k <= n-R:
///   k = -l <= 0:  1/(n+1) + sum_{s=1}^{l} s / T_{R-l+s},
///   k >= 0:       the mirror sum with n-R in place of R.
double psi_n_profile(int n, int r_peak, int k);
/// All offsets at once: element j holds the profile at k = j - r_peak.
std::vector<double> psi_n_sweep(int n, int r_peak);

/// Phi(t, r) = -2 log(1 + t/r) + 2t/r, defined for 1 + t/r > 0.
double phi_profile(double t, double r);

/// (1/n) [log sum_k e^{L_k} - (L_0 + L_n)/2], evaluated with a shifted log-sum-exp.
double hughes_quantity(const std::vector<double>& log_coeffs);

/// Jensen-formula ceiling on the limiting fraction of zeros in D(0, delta):
///   (v(sqrt(delta)) - v(delta)) / log(1/sqrt(delta)),  0 < delta < 1.
double jensen_origin_envelope(double delta);

}  // namespace lcroots::theory
