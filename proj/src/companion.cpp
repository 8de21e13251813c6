#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <Eigen/Eigenvalues>

#include "lcroots/rootsolver.hpp"
#include "solver_internal.hpp"

namespace lcroots {

namespace {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

// Restores the thread's default MPFR precision on scope exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10) : saved_(Real::default_precision()) {
    Real::default_precision(digits10);
  }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

double log2_of(const Real& x) {
  using boost::multiprecision::log2;
  return static_cast<double>(log2(x));
}

// Parlett-Reinsch balancing with power-of-two scale factors, which leave the
// eigenvalues exactly unchanged. Scale exponents are computed directly from
// the row/column norm ratio instead of the classic factor-of-two loop because
// companion entries can differ by thousands of binary orders.
void balance(Matrix& a) {
  const Eigen::Index n = a.rows();
  bool changed = true;
  for (int pass = 0; changed && pass < 100; ++pass) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      Real c = 0;
      Real r = 0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs(a(j, i));
        r += abs(a(i, j));
      }
      if (c == 0 || r == 0) continue;
      const double shift = std::round(0.5 * (log2_of(r) - log2_of(c)));
      if (shift == 0.0) continue;
      const Real f = ldexp(Real(1), static_cast<int>(shift));
      if (c * f + r / f < Real(0.95) * (c + r)) {
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) /= f;
        for (Eigen::Index j = 0; j < n; ++j) a(j, i) *= f;
        changed = true;
      }
    }
  }
}

}  // namespace

RootSet companion_oracle(const LogCoeffPoly& poly) {
  const int n = poly.degree();
  if (n > kCompanionMaxDegree) {
    throw std::domain_error("companion_oracle: degree " + std::to_string(n) + " exceeds " +
                            std::to_string(kCompanionMaxDegree));
  }
  const int spread_bits = static_cast<int>(std::ceil(poly.spread() / std::numbers::ln2));
  const int bits = 4 * spread_bits + 128;
  const auto digits10 = static_cast<unsigned>(std::ceil(bits * std::log10(2.0))) + 1;
  PrecisionScope scope(digits10);

  // Monic companion matrix of sum_k (b_k / b_n) z^k.
  Matrix a = Matrix::Zero(n, n);
  for (int i = 1; i < n; ++i) a(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) a(i, n - 1) = -exp(Real(poly[i]) - Real(poly[n]));
  balance(a);

  Eigen::EigenSolver<Matrix> solver(a, false);
  RootSet rs;
  rs.precision_bits = bits;
  rs.converged = solver.info() == Eigen::Success;
  rs.diagnostics.push_back("companion eigenvalues at " + std::to_string(bits) + " bits");
  const auto& ev = solver.eigenvalues();
  rs.roots.reserve(n);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const Real re = ev(i).real();
    const Real im = ev(i).imag();
    const Real modulus = sqrt(re * re + im * im);
    rs.roots.push_back({static_cast<double>(log(modulus)), static_cast<double>(atan2(im, re))});
  }
  rs.residuals.reserve(n);
  const int eval_bits = std::max(128, bits);
  for (const auto& r : rs.roots) rs.residuals.push_back(detail::relative_residual(poly, r, eval_bits));
  return rs;
}

}  // namespace lcroots
