#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "lcroots/sampler.hpp"

namespace lcroots {

/// Degree-n polynomial sum_k e^{L_k} z^k with strictly positive coefficients,
/// held by the natural logarithms L_k of its coefficients.
class LogCoeffPoly {
 public:
  explicit LogCoeffPoly(std::vector<double> log_coeffs);
  explicit LogCoeffPoly(const ModelCoeffs& coeffs) : LogCoeffPoly(coeffs.log_coeffs) {}

  int degree() const { return static_cast<int>(log_coeffs_.size()) - 1; }
  const std::vector<double>& log_coeffs() const { return log_coeffs_; }
  double operator[](int k) const { return log_coeffs_[k]; }
  /// max L - min L, in nats.
  double spread() const;

 private:
  std::vector<double> log_coeffs_;
};

/// A root in polar form. Moduli of beta-model roots leave the double range
/// (|zeta| ~ e^{-1500} at n = 800), so the logarithm of the modulus is the
/// primary coordinate.
struct Root {
  double log_abs = 0.0;
  double arg = 0.0;  ///< in (-pi, pi]

  /// May underflow to 0 or overflow to inf for extreme moduli.
  std::complex<double> value() const;
  static Root from_complex(std::complex<double> z);
};

enum class SolveStatus { converged, not_converged };

struct RootSet {
  std::vector<Root> roots;
  /// |P(zeta)| / sum_k e^{L_k} |zeta|^k per root.
  std::vector<double> residuals;
  int precision_bits = 0;
  bool converged = false;
  int iterations = 0;
  /// One entry per precision level tried, e.g. "128 bits: 37 sweeps, 3 roots unconverged".
  std::vector<std::string> diagnostics;

  int degree() const { return static_cast<int>(roots.size()); }
  std::vector<std::complex<double>> values() const;
};

struct PrecisionPolicy {
  enum class Kind {
    automatic,  ///< start at kAutoSeedBits and double on failure
    spread,     ///< start at 64 + ceil(1.5 * spread / ln 2) and double on failure
    fixed       ///< a single fixed precision, no doubling
  };
  Kind kind = Kind::automatic;
  int bits = 0;  ///< used by Kind::fixed

  static PrecisionPolicy automatic() { return {Kind::automatic, 0}; }
  static PrecisionPolicy spread_seeded() { return {Kind::spread, 0}; }
  static PrecisionPolicy fixed_bits(int bits) { return {Kind::fixed, bits}; }
  /// "auto", "spread" or a bit count.
  static PrecisionPolicy parse(const std::string& text);
};

inline constexpr int kAutoSeedBits = 128;

/// 64 + ceil(1.5 * (max L - min L) / ln 2).
int spread_seed_bits(const LogCoeffPoly& poly);

struct SolverConfig {
  /// Relative Newton-step tolerance and backward-error ceiling.
  double target_residual = 1e-20;
  /// Aberth sweeps allowed per precision level.
  int max_iters = 500;
  PrecisionPolicy precision = PrecisionPolicy::automatic();
  /// 0 selects max(4096, 2 * spread_seed_bits).
  int max_precision_bits = 0;
  /// Run a double-precision extended-range Aberth pass before the multiprecision one.
  bool double_prepass = true;
};

struct LogValue {
  double log_abs;            ///< -inf when P(z) == 0 exactly
  std::complex<double> phase;  ///< P(z)/|P(z)|; 1 when P(z) == 0
};

/// log|P(z)| and the phase of P(z), from a scaled multiprecision evaluation
/// (so that e^{L_k} never has to fit a double).
LogValue eval_log(const LogCoeffPoly& poly, std::complex<double> z, int precision_bits = 128);
/// Same, with z given as log|z| and arg z.
LogValue eval_log_polar(const LogCoeffPoly& poly, double log_abs_z, double arg_z, int precision_bits = 128);

struct HullSegment {
  double radius;     ///< e^{-slope}
  double log_radius;  ///< -slope
  int multiplicity;  ///< k_b - k_a
};

/// Upper convex hull of (k, L_k). Radii strictly increase across segments and
/// multiplicities sum to n.
std::vector<HullSegment> newton_polygon_radii(const LogCoeffPoly& poly);

/// All n roots by Aberth-Ehrlich simultaneous iteration in MPFR arithmetic,
/// started from the Newton polygon circles. Non-convergence at the precision
/// cap is reported through RootSet::converged and RootSet::diagnostics with
/// the last iterates kept as partial results.
RootSet find_roots(const LogCoeffPoly& poly, const SolverConfig& config = {});

inline constexpr int kCompanionMaxDegree = 60;

/// Independent check on find_roots: eigenvalues of the balanced companion
/// matrix in MPFR arithmetic with at least 4x the coefficient spread in bits.
/// Refuses n > 60 with std::domain_error.
RootSet companion_oracle(const LogCoeffPoly& poly);

struct RealRootCounts {
  int negative_axis = 0;
  int positive_axis = 0;
};

/// Counts roots with |Im zeta| <= tol |zeta| by the sign of Re zeta.
RealRootCounts count_real_roots(const RootSet& rs, double tol = 1e-6);

/// Minimal-cost bipartite matching of two root lists on |a - b|.
/// Returns perm with a[i] matched to b[perm[i]].
std::vector<int> match_roots(const std::vector<std::complex<double>>& a,
                             const std::vector<std::complex<double>>& b);

/// max_i |a_i - b_perm(i)| / (1 + |a_i|) after optimal matching.
double matched_distance(const RootSet& a, const RootSet& b);

/// Relative distance |z - w| / |z| between two polar roots, computed without
/// leaving log space.
double relative_distance(const Root& z, const Root& w);

struct RootSetChecks {
  bool conjugate_closed = false;
  double vieta_error = 0.0;  ///< |sum log|zeta| - (L_0 - L_n)|
  bool vieta_ok = false;
  int positive_real = 0;
  bool residuals_ok = false;
  std::string detail;
  bool all_ok() const { return conjugate_closed && vieta_ok && positive_real == 0 && residuals_ok; }
};

/// The algebraic invariants every converged RootSet must satisfy.
RootSetChecks check_root_set(const LogCoeffPoly& poly, const RootSet& rs, double target_residual = 1e-20,
                             double conjugate_tol = 1e-8);

}  // namespace lcroots
