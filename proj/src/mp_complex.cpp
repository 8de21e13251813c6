#include "mp_complex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lcroots::mp {

double log_abs(const Float& x) {
  if (x.is_zero()) return -std::numeric_limits<double>::infinity();
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
  return std::log(std::abs(m)) + static_cast<double>(e) * std::numbers::ln2;
}

double log_abs(const Complex& z) {
  if (z.re.is_zero()) return log_abs(z.im);
  if (z.im.is_zero()) return log_abs(z.re);
  long er = 0;
  long ei = 0;
  const double mr = mpfr_get_d_2exp(&er, z.re.get(), MPFR_RNDN);
  const double mi = mpfr_get_d_2exp(&ei, z.im.get(), MPFR_RNDN);
  const long e = std::max(er, ei);
  // Shifts below -1100 flush to zero, which is exact at double resolution.
  const double a = std::ldexp(mr, static_cast<int>(std::max(er - e, -1100L)));
  const double b = std::ldexp(mi, static_cast<int>(std::max(ei - e, -1100L)));
  return std::log(std::hypot(a, b)) + static_cast<double>(e) * std::numbers::ln2;
}

double arg(const Complex& z) {
  if (z.is_zero()) return 0.0;
  long er = 0;
  long ei = 0;
  const double mr = mpfr_get_d_2exp(&er, z.re.get(), MPFR_RNDN);
  const double mi = mpfr_get_d_2exp(&ei, z.im.get(), MPFR_RNDN);
  if (z.re.is_zero()) return mi > 0 ? std::numbers::pi / 2 : -std::numbers::pi / 2;
  if (z.im.is_zero()) return mr > 0 ? 0.0 : std::numbers::pi;
  const long e = std::max(er, ei);
  const double a = std::ldexp(mr, static_cast<int>(std::max(er - e, -1100L)));
  const double b = std::ldexp(mi, static_cast<int>(std::max(ei - e, -1100L)));
  return std::atan2(b, a);
}

void set_polar(Complex& z, double log_r, double theta) {
  mpfr_set_d(z.re.get(), log_r, MPFR_RNDN);
  mpfr_exp(z.re.get(), z.re.get(), MPFR_RNDN);
  mpfr_mul_d(z.im.get(), z.re.get(), std::sin(theta), MPFR_RNDN);
  mpfr_mul_d(z.re.get(), z.re.get(), std::cos(theta), MPFR_RNDN);
}

void mul(Complex& out, const Complex& a, const Complex& b) {
  mpfr_fmms(out.re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmma(out.im.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
}

void div(Complex& out, const Complex& a, const Complex& b, Scratch& s) {
  mpfr_fmma(s.a.get(), b.re.get(), b.re.get(), b.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmma(out.re.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fmms(out.im.get(), a.im.get(), b.re.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_div(out.re.get(), out.re.get(), s.a.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), out.im.get(), s.a.get(), MPFR_RNDN);
}

void add_reciprocal_difference(Complex& acc, const Complex& a, const Complex& b, Complex& diff, Scratch& s) {
  mpfr_sub(diff.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(diff.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  // 1/d = conj(d) / |d|^2
  mpfr_fmma(s.a.get(), diff.re.get(), diff.re.get(), diff.im.get(), diff.im.get(), MPFR_RNDN);
  if (mpfr_zero_p(s.a.get())) return;
  mpfr_div(s.b.get(), diff.re.get(), s.a.get(), MPFR_RNDN);
  mpfr_add(acc.re.get(), acc.re.get(), s.b.get(), MPFR_RNDN);
  mpfr_div(s.b.get(), diff.im.get(), s.a.get(), MPFR_RNDN);
  mpfr_sub(acc.im.get(), acc.im.get(), s.b.get(), MPFR_RNDN);
}

}  // namespace lcroots::mp
