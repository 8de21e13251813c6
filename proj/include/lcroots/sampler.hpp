#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "lcroots/rng.hpp"

namespace lcroots {

/// One draw of the random convex sequence: a V-shaped, side-wise strictly
/// convex profile w[0..n] with its minimum at r_peak.
struct ConvexSample {
  int n = 0;
  int r_peak = 0;
  std::vector<double> w;
};

enum class Model { uniform, beta, alpha_scaled };

std::string_view to_string(Model model);
/// Accepts "uniform", "beta", "alpha" and "alpha_scaled".
Model parse_model(std::string_view name);

/// Log-magnitudes L_k of strictly positive polynomial coefficients.
struct ModelCoeffs {
  Model model = Model::uniform;
  double alpha = 1.0;
  std::vector<double> log_coeffs;

  int degree() const { return static_cast<int>(log_coeffs.size()) - 1; }
};

/// Exact law of the peak index:
///   P(R = i) = (n+2)/(n+1) * C(n+1,i) C(n+1,i+1) / C(2n+2,n+1),  i = 0..n.
/// n = 0 yields the point mass {1}. Throws std::domain_error for n < 0.
std::vector<mpq_class> peak_pmf_exact(int n);

/// Peak law in double precision. Exact rationals rounded for n <= 500,
/// log-Gamma terms with compensated summation beyond.
std::vector<double> peak_pmf(int n);

/// Inverse-CDF sampler for the peak index. The cumulative table is built once
/// (exactly for n <= 500) and shared across draws.
class PeakDistribution {
 public:
  explicit PeakDistribution(int n);

  int n() const { return n_; }
  const std::vector<double>& cdf() const { return cdf_; }
  int operator()(Engine& rng) const;

 private:
  int n_;
  std::vector<double> cdf_;
};

int sample_peak(int n, Engine& rng);

/// Draws a random convex sequence through the mixture representation:
/// R from the peak law, then
///   W_{R-k} = E_0/(n+1) + sum_{m=1}^{k} (k-m+1)/T_{R-m+1} E_{-m},
///   W_{R+k} = E_0/(n+1) + sum_{m=1}^{k} (k-m+1)/T_{n-R-m+1} E_{m},
/// with T_r = r(r+1)/2. Linear time: the first differences are running sums.
ConvexSample sample_convex(int n, Engine& rng);
ConvexSample sample_convex(const PeakDistribution& peak, Engine& rng);

/// Same construction with the peak and exponentials supplied by the caller.
/// `left` holds E_{-1..-R}, `right` holds E_{1..n-R}.
ConvexSample convex_from_exponentials(int n, int r_peak, double e0, const std::vector<double>& left,
                                      const std::vector<double>& right);

inline constexpr int kRejectionMaxDegree = 12;
inline constexpr std::uint64_t kRejectionMaxAttempts = 100'000'000;

struct RejectionDraw {
  std::vector<double> x;
  std::uint64_t attempts = 0;
};

/// Ground-truth sampler: i.i.d. standard exponentials X_0..X_n, redrawn until
/// every second difference is nonnegative. n <= 12. Throws std::runtime_error
/// when `max_attempts` is exhausted.
RejectionDraw rejection_oracle(int n, Engine& rng,
                               std::uint64_t max_attempts = kRejectionMaxAttempts);

/// uniform: L = -w, beta: L = -n w, alpha_scaled: L = -n^alpha w.
ModelCoeffs make_coeffs(const ConvexSample& sample, Model model, double alpha = 1.0);

/// Checks V-shape, strict side convexity and positivity. Returns an empty
/// string on success, otherwise a description of the first violation.
std::string check_convex_sample(const ConvexSample& sample);

/// L_{k-1} + L_{k+1} <= 2 L_k for all interior k.
bool is_log_concave(const std::vector<double>& log_coeffs, bool strict = false);

}  // namespace lcroots
