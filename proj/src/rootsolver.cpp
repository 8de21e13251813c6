#include "lcroots/rootsolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mp_complex.hpp"
#include "solver_internal.hpp"

namespace lcroots {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGoldenAngle = std::numbers::pi * (3.0 - 2.2360679774997896964);
constexpr double kInitialOffset = 0.5;
// Relative step at which the double pass hands a root over.
constexpr double kPrepassTolerance = 1e-13;
// Terms further than this below the dominant one vanish in double arithmetic.
constexpr double kPrepassDropNats = 60.0;
constexpr int kGuardBits = 64;
// Roots closer than this (in argument) to the positive axis are rejected.
constexpr double kPositiveAxisArg = 1e-9;

double wrap_angle(double theta) {
  theta = std::remainder(theta, 2.0 * std::numbers::pi);
  if (theta <= -std::numbers::pi) theta += 2.0 * std::numbers::pi;
  return theta;
}

double drop_nats_for(int bits, int n) {
  return (bits + kGuardBits) * std::numbers::ln2 + std::log(n + 1.0);
}

// Coefficients e^{L_k} at a fixed working precision.
class MpPoly {
 public:
  MpPoly(const LogCoeffPoly& poly, mpfr_prec_t prec) : poly_(poly), prec_(prec) {
    coeffs_.reserve(poly.degree() + 1);
    for (double l : poly.log_coeffs()) {
      mp::Float c(prec);
      mpfr_set_d(c.get(), l, MPFR_RNDN);
      mpfr_exp(c.get(), c.get(), MPFR_RNDN);
      coeffs_.push_back(std::move(c));
    }
  }

  mpfr_prec_t precision() const { return prec_; }
  const LogCoeffPoly& poly() const { return poly_; }

  // q = sum_{k=lo}^{hi} b_k z^{k-lo}; dq its derivative when requested.
  void horner(const mp::Complex& z, const detail::TermWindow& w, mp::Complex& q, mp::Complex* dq,
              mp::Complex& tmp) const {
    mpfr_set_zero(q.re.get(), 1);
    mpfr_set_zero(q.im.get(), 1);
    if (dq) {
      mpfr_set_zero(dq->re.get(), 1);
      mpfr_set_zero(dq->im.get(), 1);
    }
    for (int k = w.hi; k >= w.lo; --k) {
      if (dq) {
        mp::mul(tmp, *dq, z);
        mpfr_add(dq->re.get(), tmp.re.get(), q.re.get(), MPFR_RNDN);
        mpfr_add(dq->im.get(), tmp.im.get(), q.im.get(), MPFR_RNDN);
      }
      mp::mul(tmp, q, z);
      mpfr_add(q.re.get(), tmp.re.get(), coeffs_[k].get(), MPFR_RNDN);
      mpfr_set(q.im.get(), tmp.im.get(), MPFR_RNDN);
    }
  }

 private:
  const LogCoeffPoly& poly_;
  mpfr_prec_t prec_;
  std::vector<mp::Float> coeffs_;
};

std::vector<Root> initial_guesses(const LogCoeffPoly& poly) {
  std::vector<Root> roots;
  roots.reserve(poly.degree());
  const auto hull = newton_polygon_radii(poly);
  double offset = kInitialOffset;
  for (const auto& seg : hull) {
    for (int j = 0; j < seg.multiplicity; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / seg.multiplicity + offset;
      roots.push_back({seg.log_radius, wrap_angle(theta)});
    }
    offset += kGoldenAngle;
  }
  return roots;
}

// Aberth iteration carried out relative to each iterate so that only ratios of
// roots ever appear: with z = e^{x} u and t_k = L_k + k x,
//   z P'(z)/P(z) = sum k e^{t_k} u^k / sum e^{t_k} u^k,
//   z A(z)       = sum_j 1 / (1 - z_j / z),
// and the update is z <- z (1 - 1/(z P'/P - z A)).
int double_prepass(const LogCoeffPoly& poly, std::vector<Root>& roots, int max_sweeps) {
  const int n = poly.degree();
  const auto& logc = poly.log_coeffs();
  std::vector<std::complex<double>> unit(n);
  std::vector<std::complex<double>> step(n);
  std::vector<char> active(n, 1);
  for (int i = 0; i < n; ++i) unit[i] = std::polar(1.0, roots[i].arg);

  int sweep = 0;
  int n_active = n;
  for (; sweep < max_sweeps && n_active > 0; ++sweep) {
    for (int i = 0; i < n; ++i) {
      step[i] = 0.0;
      if (!active[i]) continue;
      const double x = roots[i].log_abs;
      const auto u = unit[i];
      const auto win = detail::term_window(logc, x, kPrepassDropNats);
      std::complex<double> q = 0.0;
      std::complex<double> dq = 0.0;
      for (int k = win.hi; k >= win.lo; --k) {
        dq = dq * u + q;
        q = q * u + std::exp(logc[k] + k * x - win.top);
      }
      if (q == 0.0) continue;
      const std::complex<double> zg = static_cast<double>(win.lo) + u * dq / q;
      std::complex<double> za = 0.0;
      const auto u_conj = std::conj(u);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double d = roots[j].log_abs - x;
        if (d > 700.0) continue;  // z_j/z overflows; its term is ~ -z/z_j
        if (d < -700.0) {
          za += 1.0;
          continue;
        }
        const auto ratio = std::exp(d) * (unit[j] * u_conj);
        const auto denom = 1.0 - ratio;
        if (denom != 0.0) za += 1.0 / denom;
      }
      auto delta = 1.0 / (zg - za);
      if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) delta = 1.0 / zg;
      if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) continue;
      step[i] = delta;
    }
    n_active = 0;
    for (int i = 0; i < n; ++i) {
      if (!active[i]) continue;
      const auto factor = 1.0 - step[i];
      if (std::abs(factor) < 1e-300) continue;
      roots[i].log_abs += std::log(std::abs(factor));
      unit[i] *= factor / std::abs(factor);
      roots[i].arg = std::arg(unit[i]);
      if (std::abs(step[i]) <= kPrepassTolerance) {
        active[i] = 0;
      } else {
        ++n_active;
      }
    }
  }
  return sweep;
}

struct LevelOutcome {
  bool converged = false;
  int sweeps = 0;
  int unconverged = 0;
};

// Jacobi-style Aberth sweeps at the precision of `mp`: every correction in a
// sweep is computed from the previous iterates before any root moves.
LevelOutcome aberth_level(const MpPoly& mp, std::vector<mp::Complex>& z, const SolverConfig& config) {
  const int n = mp.poly().degree();
  const auto& logc = mp.poly().log_coeffs();
  const auto prec = mp.precision();
  const double drop = drop_nats_for(static_cast<int>(prec), n);
  const double log_tol = std::log(config.target_residual);

  mp::Complex q(prec), dq(prec), tmp(prec), g(prec), acc(prec), diff(prec);
  mp::Scratch scratch(prec);
  std::vector<mp::Complex> step(n, mp::Complex(prec));
  std::vector<char> active(n, 1);
  std::vector<char> has_step(n, 0);

  LevelOutcome out;
  int n_active = n;
  for (; out.sweeps < config.max_iters && n_active > 0; ++out.sweeps) {
    for (int i = 0; i < n; ++i) {
      has_step[i] = 0;
      if (!active[i]) continue;
      const double x = mp::log_abs(z[i]);
      const auto win = detail::term_window(logc, x, drop);
      mp.horner(z[i], win, q, &dq, tmp);
      if (q.is_zero()) {
        active[i] = 0;  // exact root at working precision
        continue;
      }
      // g = P'/P = Q'/Q + lo/z
      mp::div(g, dq, q, scratch);
      if (win.lo > 0) {
        mpfr_fmma(scratch.c.get(), z[i].re.get(), z[i].re.get(), z[i].im.get(), z[i].im.get(), MPFR_RNDN);
        mpfr_mul_si(scratch.a.get(), z[i].re.get(), win.lo, MPFR_RNDN);
        mpfr_div(scratch.a.get(), scratch.a.get(), scratch.c.get(), MPFR_RNDN);
        mpfr_add(g.re.get(), g.re.get(), scratch.a.get(), MPFR_RNDN);
        mpfr_mul_si(scratch.a.get(), z[i].im.get(), win.lo, MPFR_RNDN);
        mpfr_div(scratch.a.get(), scratch.a.get(), scratch.c.get(), MPFR_RNDN);
        mpfr_sub(g.im.get(), g.im.get(), scratch.a.get(), MPFR_RNDN);
      }
      mpfr_set_zero(acc.re.get(), 1);
      mpfr_set_zero(acc.im.get(), 1);
      for (int j = 0; j < n; ++j) {
        if (j != i) mp::add_reciprocal_difference(acc, z[i], z[j], diff, scratch);
      }
      // w = 1 / (g - A)
      mpfr_sub(acc.re.get(), g.re.get(), acc.re.get(), MPFR_RNDN);
      mpfr_sub(acc.im.get(), g.im.get(), acc.im.get(), MPFR_RNDN);
      if (acc.is_zero()) acc.set(g);
      if (acc.is_zero()) continue;
      mpfr_fmma(scratch.a.get(), acc.re.get(), acc.re.get(), acc.im.get(), acc.im.get(), MPFR_RNDN);
      mpfr_div(step[i].re.get(), acc.re.get(), scratch.a.get(), MPFR_RNDN);
      mpfr_div(step[i].im.get(), acc.im.get(), scratch.a.get(), MPFR_RNDN);
      mpfr_neg(step[i].im.get(), step[i].im.get(), MPFR_RNDN);
      has_step[i] = 1;
    }
    n_active = 0;
    for (int i = 0; i < n; ++i) {
      if (!active[i]) continue;
      if (!has_step[i]) {
        ++n_active;
        continue;
      }
      const bool small = mp::log_abs(step[i]) <= log_tol + mp::log_abs(z[i]);
      mpfr_sub(z[i].re.get(), z[i].re.get(), step[i].re.get(), MPFR_RNDN);
      mpfr_sub(z[i].im.get(), z[i].im.get(), step[i].im.get(), MPFR_RNDN);
      if (small) {
        active[i] = 0;
      } else {
        ++n_active;
      }
    }
  }
  out.unconverged = n_active;
  out.converged = n_active == 0;
  return out;
}

double residual_at(const MpPoly& mp, const mp::Complex& z, mp::Complex& q, mp::Complex& tmp) {
  const auto& logc = mp.poly().log_coeffs();
  const int n = mp.poly().degree();
  const double x = mp::log_abs(z);
  const auto win = detail::term_window(logc, x, drop_nats_for(static_cast<int>(mp.precision()), n));
  mp.horner(z, win, q, nullptr, tmp);
  if (q.is_zero()) return 0.0;
  const double log_p = mp::log_abs(q) + win.lo * x;
  return std::exp(log_p - detail::log_abs_sum(logc, x));
}

int next_precision(int bits) { return 2 * bits; }

}  // namespace

LogCoeffPoly::LogCoeffPoly(std::vector<double> log_coeffs) : log_coeffs_(std::move(log_coeffs)) {
  if (log_coeffs_.size() < 2) throw std::domain_error("LogCoeffPoly: degree must be at least 1");
  for (double l : log_coeffs_) {
    if (!std::isfinite(l)) throw std::domain_error("LogCoeffPoly: log-coefficients must be finite");
  }
}

double LogCoeffPoly::spread() const {
  const auto [lo, hi] = std::minmax_element(log_coeffs_.begin(), log_coeffs_.end());
  return *hi - *lo;
}

std::complex<double> Root::value() const { return std::polar(std::exp(log_abs), arg); }

Root Root::from_complex(std::complex<double> z) { return {std::log(std::abs(z)), std::arg(z)}; }

std::vector<std::complex<double>> RootSet::values() const {
  std::vector<std::complex<double>> out(roots.size());
  std::transform(roots.begin(), roots.end(), out.begin(), [](const Root& r) { return r.value(); });
  return out;
}

PrecisionPolicy PrecisionPolicy::parse(const std::string& text) {
  if (text == "auto") return automatic();
  if (text == "spread") return spread_seeded();
  std::size_t used = 0;
  int bits = 0;
  try {
    bits = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || bits < 32) {
    throw std::invalid_argument("precision must be 'auto', 'spread' or a bit count >= 32, got '" + text + "'");
  }
  return fixed_bits(bits);
}

int spread_seed_bits(const LogCoeffPoly& poly) {
  return 64 + static_cast<int>(std::ceil(1.5 * poly.spread() / std::numbers::ln2));
}

LogValue eval_log_polar(const LogCoeffPoly& poly, double log_abs_z, double arg_z, int precision_bits) {
  mp::Complex z(precision_bits);
  mp::set_polar(z, log_abs_z, arg_z);
  MpPoly mpp(poly, precision_bits);
  mp::Complex q(precision_bits), tmp(precision_bits);
  const auto win = detail::term_window(poly.log_coeffs(), log_abs_z, drop_nats_for(precision_bits, poly.degree()));
  mpp.horner(z, win, q, nullptr, tmp);
  if (q.is_zero()) return {-kInf, {1.0, 0.0}};
  const double phase = mp::arg(q) + win.lo * arg_z;
  return {mp::log_abs(q) + win.lo * log_abs_z, std::polar(1.0, phase)};
}

LogValue eval_log(const LogCoeffPoly& poly, std::complex<double> z, int precision_bits) {
  if (z == std::complex<double>(0.0, 0.0)) return {poly[0], {1.0, 0.0}};
  // Keep z exact: the evaluation must see the caller's point, not a polar round trip.
  mp::Complex zz(precision_bits);
  zz.set(z);
  const double x = mp::log_abs(zz);
  MpPoly mpp(poly, precision_bits);
  mp::Complex q(precision_bits), tmp(precision_bits);
  const auto win = detail::term_window(poly.log_coeffs(), x, drop_nats_for(precision_bits, poly.degree()));
  mpp.horner(zz, win, q, nullptr, tmp);
  if (q.is_zero()) return {-kInf, {1.0, 0.0}};
  const double phase = mp::arg(q) + win.lo * std::arg(z);
  return {mp::log_abs(q) + win.lo * x, std::polar(1.0, phase)};
}

std::vector<HullSegment> newton_polygon_radii(const LogCoeffPoly& poly) {
  const int n = poly.degree();
  const auto& l = poly.log_coeffs();
  std::vector<int> hull;
  for (int k = 0; k <= n; ++k) {
    // Pop while the last point lies on or below the chord to (k, L_k).
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2];
      const int b = hull.back();
      const double cross = (b - a) * (l[k] - l[a]) - (k - a) * (l[b] - l[a]);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }
  std::vector<HullSegment> out;
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const int a = hull[s];
    const int b = hull[s + 1];
    const double log_radius = -(l[b] - l[a]) / (b - a);
    out.push_back({std::exp(log_radius), log_radius, b - a});
  }
  return out;
}

namespace detail {

double relative_residual(const LogCoeffPoly& poly, const Root& root, int precision_bits) {
  const auto v = eval_log_polar(poly, root.log_abs, root.arg, precision_bits);
  if (v.log_abs == -kInf) return 0.0;
  return std::exp(v.log_abs - log_abs_sum(poly.log_coeffs(), root.log_abs));
}

}  // namespace detail

RootSet find_roots(const LogCoeffPoly& poly, const SolverConfig& config) {
  const int n = poly.degree();
  if (!(config.target_residual > 0.0)) throw std::invalid_argument("find_roots: target_residual must be positive");
  if (config.max_iters < 1) throw std::invalid_argument("find_roots: max_iters must be positive");

  RootSet rs;
  auto start = initial_guesses(poly);
  if (config.double_prepass) {
    const int sweeps = double_prepass(poly, start, config.max_iters);
    rs.iterations += sweeps;
    rs.diagnostics.push_back("double prepass: " + std::to_string(sweeps) + " sweeps");
  }

  const int spread_bits = spread_seed_bits(poly);
  int bits = 0;
  int cap = 0;
  switch (config.precision.kind) {
    case PrecisionPolicy::Kind::automatic:
      bits = kAutoSeedBits;
      break;
    case PrecisionPolicy::Kind::spread:
      bits = spread_bits;
      break;
    case PrecisionPolicy::Kind::fixed:
      bits = config.precision.bits;
      break;
  }
  if (config.precision.kind == PrecisionPolicy::Kind::fixed) {
    cap = bits;
  } else {
    cap = config.max_precision_bits > 0 ? config.max_precision_bits : std::max(4096, 2 * spread_bits);
    cap = std::max(cap, bits);
  }

  std::vector<mp::Complex> z;
  z.reserve(n);
  for (const auto& r : start) {
    mp::Complex c(bits);
    mp::set_polar(c, r.log_abs, r.arg);
    z.push_back(std::move(c));
  }

  while (true) {
    MpPoly mpp(poly, bits);
    const auto level = aberth_level(mpp, z, config);
    rs.iterations += level.sweeps;

    std::vector<Root> roots(n);
    std::vector<double> residuals(n);
    mp::Complex q(bits), tmp(bits);
    int bad_residual = 0;
    int on_positive_axis = 0;
    for (int i = 0; i < n; ++i) {
      roots[i] = {mp::log_abs(z[i]), mp::arg(z[i])};
      residuals[i] = residual_at(mpp, z[i], q, tmp);
      if (!(residuals[i] <= config.target_residual)) ++bad_residual;
      if (std::abs(roots[i].arg) < kPositiveAxisArg) ++on_positive_axis;
    }
    rs.roots = std::move(roots);
    rs.residuals = std::move(residuals);
    rs.precision_bits = bits;
    rs.converged = level.converged && bad_residual == 0 && on_positive_axis == 0;

    std::ostringstream msg;
    msg << bits << " bits: " << level.sweeps << " sweeps, " << level.unconverged << " unconverged, " << bad_residual
        << " above residual target, " << on_positive_axis << " on the positive axis";
    rs.diagnostics.push_back(msg.str());

    if (rs.converged || bits >= cap) break;
    bits = std::min(next_precision(bits), cap);
    for (auto& c : z) c.round_to(bits);
  }
  return rs;
}

RealRootCounts count_real_roots(const RootSet& rs, double tol) {
  RealRootCounts out;
  for (const auto& r : rs.roots) {
    if (std::abs(std::sin(r.arg)) > tol) continue;
    if (std::cos(r.arg) < 0.0) {
      ++out.negative_axis;
    } else {
      ++out.positive_axis;
    }
  }
  return out;
}

double relative_distance(const Root& z, const Root& w) {
  const double d = w.log_abs - z.log_abs;
  const double phi = w.arg - z.arg;
  // |e^{d + i phi} - 1| without cancellation.
  const double s = std::sin(0.5 * phi);
  const double re = std::expm1(d) * std::cos(phi) - 2.0 * s * s;
  const double im = std::exp(d) * std::sin(phi);
  return std::hypot(re, im);
}

RootSetChecks check_root_set(const LogCoeffPoly& poly, const RootSet& rs, double target_residual,
                             double conjugate_tol) {
  RootSetChecks out;
  std::ostringstream detail;
  const int n = poly.degree();
  if (rs.degree() != n) {
    out.detail = "expected " + std::to_string(n) + " roots, got " + std::to_string(rs.degree());
    return out;
  }

  // Greedy conjugate pairing; real roots pair with themselves.
  std::vector<char> used(n, 0);
  out.conjugate_closed = true;
  for (int i = 0; i < n && out.conjugate_closed; ++i) {
    if (used[i]) continue;
    const Root target{rs.roots[i].log_abs, -rs.roots[i].arg};
    int best = -1;
    double best_d = kInf;
    for (int j = 0; j < n; ++j) {
      if (used[j] || (j == i && std::abs(std::sin(rs.roots[i].arg)) > conjugate_tol)) continue;
      const double d = relative_distance(target, rs.roots[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best < 0 || best_d > conjugate_tol) {
      out.conjugate_closed = false;
      detail << "root " << i << " has no conjugate partner (closest relative distance " << best_d << "); ";
      break;
    }
    used[i] = 1;
    used[best] = 1;
  }

  double log_sum = 0.0;
  for (const auto& r : rs.roots) log_sum += r.log_abs;
  out.vieta_error = std::abs(log_sum - (poly[0] - poly[n]));
  out.vieta_ok = out.vieta_error <= 1e-6 * n;
  if (!out.vieta_ok) detail << "Vieta log-sum off by " << out.vieta_error << "; ";

  out.positive_real = count_real_roots(rs).positive_axis;
  if (out.positive_real > 0) detail << out.positive_real << " roots on the positive axis; ";

  out.residuals_ok = static_cast<int>(rs.residuals.size()) == n &&
                     std::all_of(rs.residuals.begin(), rs.residuals.end(),
                                 [&](double r) { return r <= target_residual; });
  if (!out.residuals_ok) detail << "residual above " << target_residual << "; ";
  out.detail = detail.str();
  return out;
}

}  // namespace lcroots
