#pragma once

#include <vector>

#include "lcroots/rng.hpp"
#include "lcroots/rootsolver.hpp"

namespace lcroots {

/// Normalised zero-counting measure n^{-1} sum_k delta_{zeta_k}, stored through
/// its polar coordinates.
struct EmpiricalRootMeasure {
  int n = 0;
  std::vector<double> log_radii;  ///< ascending
  std::vector<double> args;       ///< in (-pi, pi]

  static EmpiricalRootMeasure from_roots(const std::vector<Root>& roots);
  static EmpiricalRootMeasure from_root_set(const RootSet& rs) { return from_roots(rs.roots); }
};

/// sup_x |F_n(x) - F(x)| for the log-radii against the log-radial law
/// F(x) = 2/(4 - x) (x <= 0), 1 - 2/(4 + x) (x >= 0), evaluated at the jumps.
double ks_log_radius(const EmpiricalRootMeasure& m);

struct AngularFit {
  double ks = 0.0;      ///< against the uniform law of (theta + pi) / 2pi
  double kuiper = 0.0;  ///< D+ + D-, invariant under rotation
};

AngularFit ks_angular(const EmpiricalRootMeasure& m);

/// Fraction of roots with ||zeta| - 1| > band.
double modulus_concentration(const EmpiricalRootMeasure& m, double band);

struct PotentialRow {
  double radius = 0.0;
  double circular_mean = 0.0;  ///< trapezoid mean of (1/n) log|P| over the circle
  double limit = 0.0;          ///< G on the circle
  std::vector<double> values;  ///< (1/n) log|P(r e^{i theta_j})|, theta_j = 2 pi j / m
};

std::vector<PotentialRow> log_potential_profile(const LogCoeffPoly& poly, const std::vector<double>& radii,
                                                int angles_per_radius = 256);

/// Fraction of roots with |zeta| < delta, 0 < delta < 1.
double near_origin_mass(const RootSet& rs, double delta);

/// Width of the root-free arc that contains the direction theta = 0.
double cone_angle_gap(const RootSet& rs);
double cone_angle_gap(const std::vector<double>& args);

/// n points drawn exactly from the limit measure: log-radius through the
/// closed-form quantile, argument uniform on (-pi, pi].
std::vector<Root> sample_limit_measure(int n, Engine& rng);

}  // namespace lcroots
