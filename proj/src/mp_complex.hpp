#pragma once

// Thin RAII layer over MPFR for the root-finding kernel. Arithmetic is done
// through free functions writing into caller-owned outputs so that the inner
// loops never allocate.

#include <complex>
#include <utility>

#include <mpfr.h>

namespace lcroots::mp {

class Float {
 public:
  explicit Float(mpfr_prec_t prec) { mpfr_init2(value_, prec); mpfr_set_zero(value_, 1); }
  Float(const Float& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  Float(Float&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
  }
  Float& operator=(const Float& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }
  Float& operator=(Float&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }
  ~Float() { mpfr_clear(value_); }

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  /// Changes precision keeping the value (rounded).
  void round_to(mpfr_prec_t prec) { mpfr_prec_round(value_, prec, MPFR_RNDN); }
  void set(double x) { mpfr_set_d(value_, x, MPFR_RNDN); }
  void set(const Float& x) { mpfr_set(value_, x.value_, MPFR_RNDN); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }

 private:
  mpfr_t value_;
};

struct Complex {
  Float re;
  Float im;

  explicit Complex(mpfr_prec_t prec) : re(prec), im(prec) {}

  void round_to(mpfr_prec_t prec) {
    re.round_to(prec);
    im.round_to(prec);
  }
  void set(std::complex<double> z) {
    re.set(z.real());
    im.set(z.imag());
  }
  void set(const Complex& z) {
    re.set(z.re);
    im.set(z.im);
  }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

/// Scratch registers for the complex helpers below.
struct Scratch {
  Float a, b, c;
  explicit Scratch(mpfr_prec_t prec) : a(prec), b(prec), c(prec) {}
};

/// log|z| as a double, valid far outside the double exponent range.
/// Returns -inf for z = 0.
double log_abs(const Complex& z);
double log_abs(const Float& x);

/// arg z in (-pi, pi] as a double.
double arg(const Complex& z);

/// z = exp(log_r) * (cos theta + i sin theta).
void set_polar(Complex& z, double log_r, double theta);

/// out = a * b; out must not alias a or b.
void mul(Complex& out, const Complex& a, const Complex& b);
/// out = a / b; out must not alias a or b.
void div(Complex& out, const Complex& a, const Complex& b, Scratch& s);
/// acc += 1 / (a - b).
void add_reciprocal_difference(Complex& acc, const Complex& a, const Complex& b, Complex& diff, Scratch& s);

}  // namespace lcroots::mp
