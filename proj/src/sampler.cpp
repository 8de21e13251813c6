#include "lcroots/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lcroots {

namespace {

constexpr int kExactPmfMaxDegree = 500;

double triangular(int r) { return 0.5 * static_cast<double>(r) * static_cast<double>(r + 1); }

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

long double log_binomial(long double n, long double k) {
  return std::lgamma(n + 1.0L) - std::lgamma(k + 1.0L) - std::lgamma(n - k + 1.0L);
}

// Kahan-compensated running sums.
std::vector<double> compensated_cumsum(const std::vector<long double>& terms) {
  std::vector<double> out(terms.size());
  long double sum = 0.0L;
  long double carry = 0.0L;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const long double y = terms[i] - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    out[i] = static_cast<double>(sum);
  }
  return out;
}

std::vector<long double> peak_pmf_log_gamma(int n) {
  const long double m = n + 1.0L;
  const long double log_norm =
      std::log((n + 2.0L) / (n + 1.0L)) - log_binomial(2.0L * m, m);
  std::vector<long double> terms(n + 1);
  for (int i = 0; i <= n; ++i) {
    terms[i] = std::exp(log_norm + log_binomial(m, i) + log_binomial(m, i + 1.0L));
  }
  // Renormalise away the residual log-Gamma rounding.
  long double total = 0.0L;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) total += *it;
  for (auto& t : terms) t /= total;
  return terms;
}

}  // namespace

std::string_view to_string(Model model) {
  switch (model) {
    case Model::uniform:
      return "uniform";
    case Model::beta:
      return "beta";
    case Model::alpha_scaled:
      return "alpha";
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  if (name == "uniform") return Model::uniform;
  if (name == "beta") return Model::beta;
  if (name == "alpha" || name == "alpha_scaled") return Model::alpha_scaled;
  throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

std::vector<mpq_class> peak_pmf_exact(int n) {
  if (n < 0) throw std::domain_error("peak_pmf: degree must be nonnegative");
  if (n == 0) return {mpq_class(1)};
  const auto m = static_cast<unsigned long>(n + 1);
  // (n+2) C(n+1,i) C(n+1,i+1) / ((n+1) C(2n+2,n+1))
  const mpz_class denominator = mpz_class(n + 1) * binomial(2 * m, m);
  std::vector<mpq_class> pmf(n + 1);
  for (int i = 0; i <= n; ++i) {
    pmf[i] = mpq_class(mpz_class(n + 2) * binomial(m, i) * binomial(m, i + 1), denominator);
    pmf[i].canonicalize();
  }
  return pmf;
}

std::vector<double> peak_pmf(int n) {
  if (n < 0) throw std::domain_error("peak_pmf: degree must be nonnegative");
  if (n <= kExactPmfMaxDegree) {
    const auto exact = peak_pmf_exact(n);
    std::vector<double> out(exact.size());
    std::transform(exact.begin(), exact.end(), out.begin(), [](const mpq_class& q) { return q.get_d(); });
    return out;
  }
  const auto terms = peak_pmf_log_gamma(n);
  return {terms.begin(), terms.end()};
}

PeakDistribution::PeakDistribution(int n) : n_(n) {
  if (n < 0) throw std::domain_error("PeakDistribution: degree must be nonnegative");
  if (n <= kExactPmfMaxDegree) {
    const auto exact = peak_pmf_exact(n);
    cdf_.resize(exact.size());
    mpq_class running(0);
    for (std::size_t i = 0; i < exact.size(); ++i) {
      running += exact[i];
      cdf_[i] = running.get_d();
    }
  } else {
    cdf_ = compensated_cumsum(peak_pmf_log_gamma(n));
  }
  cdf_.back() = 1.0;
}

int PeakDistribution::operator()(Engine& rng) const {
  const double u = uniform_open_closed(rng);
  const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf_.begin(), n_));
}

int sample_peak(int n, Engine& rng) {
  if (n < 1) throw std::domain_error("sample_peak: degree must be positive");
  return PeakDistribution(n)(rng);
}

ConvexSample convex_from_exponentials(int n, int r_peak, double e0, const std::vector<double>& left,
                                      const std::vector<double>& right) {
  if (n < 1 || r_peak < 0 || r_peak > n) throw std::domain_error("convex sample: peak index out of range");
  if (static_cast<int>(left.size()) != r_peak || static_cast<int>(right.size()) != n - r_peak) {
    throw std::invalid_argument("convex sample: exponential counts do not match the peak index");
  }
  ConvexSample s;
  s.n = n;
  s.r_peak = r_peak;
  s.w.assign(n + 1, 0.0);
  s.w[r_peak] = e0 / static_cast<double>(n + 1);

  // The k-th first difference away from the peak is sum_{m<=k} E_{-m}/T_{R-m+1};
  // accumulating it gives the triangular weights (k-m+1) of the closed form.
  double slope = 0.0;
  for (int k = 1; k <= r_peak; ++k) {
    slope += left[k - 1] / triangular(r_peak - k + 1);
    s.w[r_peak - k] = s.w[r_peak - k + 1] + slope;
  }
  slope = 0.0;
  for (int k = 1; k <= n - r_peak; ++k) {
    slope += right[k - 1] / triangular(n - r_peak - k + 1);
    s.w[r_peak + k] = s.w[r_peak + k - 1] + slope;
  }
  return s;
}

ConvexSample sample_convex(const PeakDistribution& peak, Engine& rng) {
  const int n = peak.n();
  if (n < 1) throw std::domain_error("sample_convex: degree must be positive");
  const int r = peak(rng);
  const double e0 = standard_exponential(rng);
  std::vector<double> left(r);
  std::vector<double> right(n - r);
  for (auto& e : left) e = standard_exponential(rng);
  for (auto& e : right) e = standard_exponential(rng);
  return convex_from_exponentials(n, r, e0, left, right);
}

ConvexSample sample_convex(int n, Engine& rng) {
  if (n < 1) throw std::domain_error("sample_convex: degree must be positive");
  return sample_convex(PeakDistribution(n), rng);
}

RejectionDraw rejection_oracle(int n, Engine& rng, std::uint64_t max_attempts) {
  if (n < 1 || n > kRejectionMaxDegree) {
    throw std::domain_error("rejection_oracle: degree must lie in [1, " +
                            std::to_string(kRejectionMaxDegree) + "]");
  }
  RejectionDraw draw;
  draw.x.assign(n + 1, 0.0);
  auto& x = draw.x;
  while (draw.attempts < max_attempts) {
    ++draw.attempts;
    x[0] = standard_exponential(rng);
    x[1] = standard_exponential(rng);
    bool accepted = true;
    // Abandoning an attempt at its first violation leaves the accepted law unchanged.
    for (int i = 2; i <= n; ++i) {
      x[i] = standard_exponential(rng);
      if (x[i - 2] + x[i] - 2.0 * x[i - 1] < 0.0) {
        accepted = false;
        break;
      }
    }
    if (accepted) return draw;
  }
  throw std::runtime_error("rejection_oracle: no convex draw within " + std::to_string(max_attempts) +
                           " attempts; n = " + std::to_string(n) + " is too large for rejection");
}

ModelCoeffs make_coeffs(const ConvexSample& sample, Model model, double alpha) {
  double scale = 1.0;
  switch (model) {
    case Model::uniform:
      alpha = 1.0;
      break;
    case Model::beta:
      alpha = 1.0;
      scale = static_cast<double>(sample.n);
      break;
    case Model::alpha_scaled:
      if (!(alpha > 0.0)) throw std::domain_error("make_coeffs: alpha must be positive");
      scale = std::pow(static_cast<double>(sample.n), alpha);
      break;
  }
  ModelCoeffs out;
  out.model = model;
  out.alpha = alpha;
  out.log_coeffs.resize(sample.w.size());
  std::transform(sample.w.begin(), sample.w.end(), out.log_coeffs.begin(),
                 [scale](double w) { return -scale * w; });
  return out;
}

std::string check_convex_sample(const ConvexSample& s) {
  std::ostringstream err;
  const int n = s.n;
  const int r = s.r_peak;
  if (n < 1) return "degree must be positive";
  if (static_cast<int>(s.w.size()) != n + 1) return "expected n+1 values";
  if (r < 0 || r > n) return "peak index out of range";
  for (int k = 0; k <= n; ++k) {
    if (!(s.w[k] > 0.0) || !std::isfinite(s.w[k])) {
      err << "w[" << k << "] = " << s.w[k] << " is not positive";
      return err.str();
    }
  }
  for (int k = 0; k < r; ++k) {
    if (!(s.w[k] > s.w[k + 1])) {
      err << "not strictly decreasing at " << k;
      return err.str();
    }
  }
  for (int k = r; k < n; ++k) {
    if (!(s.w[k + 1] > s.w[k])) {
      err << "not strictly increasing at " << k;
      return err.str();
    }
  }
  for (int k = 0; k + 2 <= r; ++k) {
    if (!(s.w[k] - 2.0 * s.w[k + 1] + s.w[k + 2] > 0.0)) {
      err << "left side not strictly convex at " << k;
      return err.str();
    }
  }
  for (int k = r + 2; k <= n; ++k) {
    if (!(s.w[k] - 2.0 * s.w[k - 1] + s.w[k - 2] > 0.0)) {
      err << "right side not strictly convex at " << k;
      return err.str();
    }
  }
  return {};
}

bool is_log_concave(const std::vector<double>& log_coeffs, bool strict) {
  for (std::size_t k = 1; k + 1 < log_coeffs.size(); ++k) {
    const double lhs = log_coeffs[k - 1] + log_coeffs[k + 1];
    const double rhs = 2.0 * log_coeffs[k];
    if (strict ? !(lhs < rhs) : !(lhs <= rhs)) return false;
  }
  return true;
}

}  // namespace lcroots
