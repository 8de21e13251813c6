#pragma once

#include <cmath>
#include <vector>

#include "lcroots/rootsolver.hpp"

namespace lcroots::detail {

/// Indices whose terms L_k + k x lie within `drop_nats` of the largest one.
/// Everything outside [lo, hi] is below working precision relative to the
/// dominant term and can be left out of an evaluation.
struct TermWindow {
  int lo = 0;
  int hi = 0;
  double top = 0.0;  ///< max_k L_k + k x
};

inline TermWindow term_window(const std::vector<double>& log_coeffs, double log_abs_z, double drop_nats) {
  const int n = static_cast<int>(log_coeffs.size()) - 1;
  TermWindow w;
  w.top = -INFINITY;
  for (int k = 0; k <= n; ++k) w.top = std::max(w.top, log_coeffs[k] + k * log_abs_z);
  const double floor = w.top - drop_nats;
  w.lo = 0;
  while (w.lo < n && log_coeffs[w.lo] + w.lo * log_abs_z < floor) ++w.lo;
  w.hi = n;
  while (w.hi > w.lo && log_coeffs[w.hi] + w.hi * log_abs_z < floor) --w.hi;
  return w;
}

/// log sum_k e^{L_k} |z|^k.
inline double log_abs_sum(const std::vector<double>& log_coeffs, double log_abs_z) {
  double top = -INFINITY;
  const int n = static_cast<int>(log_coeffs.size()) - 1;
  for (int k = 0; k <= n; ++k) top = std::max(top, log_coeffs[k] + k * log_abs_z);
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) sum += std::exp(log_coeffs[k] + k * log_abs_z - top);
  return top + std::log(sum);
}

/// |P(zeta)| / sum_k e^{L_k} |zeta|^k at the given precision.
double relative_residual(const LogCoeffPoly& poly, const Root& root, int precision_bits);

}  // namespace lcroots::detail
