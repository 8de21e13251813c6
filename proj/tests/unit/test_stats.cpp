#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "lcroots/rng.hpp"
#include "lcroots/stats.hpp"
#include "lcroots/theory.hpp"

using namespace lcroots;
using std::numbers::pi;

namespace {

EmpiricalRootMeasure measure_from(const std::vector<double>& log_radii, const std::vector<double>& args) {
  std::vector<Root> roots;
  for (std::size_t i = 0; i < log_radii.size(); ++i) roots.push_back({log_radii[i], args[i]});
  return EmpiricalRootMeasure::from_roots(roots);
}

std::vector<double> equally_spaced_args(int n, double offset) {
  std::vector<double> a;
  for (int k = 0; k < n; ++k) a.push_back(std::remainder(offset + 2.0 * pi * k / n, 2.0 * pi));
  return a;
}

}  // namespace

TEST(KsLogRadius, PointMassAtZero) {
  const auto m = measure_from(std::vector<double>(10, 0.0), std::vector<double>(10, 1.0));
  EXPECT_DOUBLE_EQ(ks_log_radius(m), 0.5);
}

TEST(KsLogRadius, SortedAndPermutationInvariant) {
  const std::vector<double> x{2.0, -1.0, 0.5, -7.0, 3.0};
  auto y = x;
  std::reverse(y.begin(), y.end());
  const auto a = measure_from(x, std::vector<double>(5, 0.1));
  const auto b = measure_from(y, std::vector<double>(5, 0.1));
  EXPECT_TRUE(std::is_sorted(a.log_radii.begin(), a.log_radii.end()));
  EXPECT_EQ(ks_log_radius(a), ks_log_radius(b));
}

TEST(KsLogRadius, MatchesBruteForceSupremum) {
  // Brute force: sup over a fine grid plus both one-sided limits at each jump.
  auto rng = make_stream(5, 0);
  std::vector<double> x;
  for (int i = 0; i < 40; ++i) x.push_back(6.0 * (uniform_open_closed(rng) - 0.5));
  const auto m = measure_from(x, std::vector<double>(x.size(), 0.0));
  double brute = 0.0;
  const double n = static_cast<double>(x.size());
  for (const double t : m.log_radii) {
    const double below = std::lower_bound(m.log_radii.begin(), m.log_radii.end(), t) - m.log_radii.begin();
    const double upto = std::upper_bound(m.log_radii.begin(), m.log_radii.end(), t) - m.log_radii.begin();
    brute = std::max({brute, std::abs(upto / n - theory::log_radial_cdf(t)),
                      std::abs(below / n - theory::log_radial_cdf(t))});
  }
  EXPECT_NEAR(ks_log_radius(m), brute, 1e-15);
}

TEST(KsLogRadius, DkwOnExactDraws) {
  auto rng = make_stream(6, 0);
  const int n = 10000;
  const auto m = EmpiricalRootMeasure::from_roots(sample_limit_measure(n, rng));
  EXPECT_LE(ks_log_radius(m), 1.95 / std::sqrt(n));
}

TEST(KsAngular, EquallySpaced) {
  for (int n : {7, 100, 1001}) {
    const auto m = measure_from(std::vector<double>(n, 0.0), equally_spaced_args(n, 0.37));
    EXPECT_LE(ks_angular(m).kuiper, 2.0 / n);
  }
}

TEST(KsAngular, PointMass) {
  const auto m = measure_from(std::vector<double>(12, 0.0), std::vector<double>(12, 0.0));
  const auto fit = ks_angular(m);
  EXPECT_DOUBLE_EQ(fit.ks, 0.5);
  EXPECT_DOUBLE_EQ(fit.kuiper, 1.0);
}

TEST(KsAngular, KuiperRotationInvariant) {
  auto rng = make_stream(7, 0);
  std::vector<double> args;
  for (int i = 0; i < 300; ++i) args.push_back(pi * (2.0 * uniform_open_closed(rng) - 1.0) * 0.6);
  const auto base = ks_angular(measure_from(std::vector<double>(args.size(), 0.0), args)).kuiper;
  for (double rot : {0.3, 1.9, -2.7}) {
    std::vector<double> r;
    for (double a : args) r.push_back(std::remainder(a + rot, 2.0 * pi));
    EXPECT_NEAR(ks_angular(measure_from(std::vector<double>(r.size(), 0.0), r)).kuiper, base, 1e-12);
  }
}

TEST(ModulusConcentration, Examples) {
  const auto on_circle = measure_from(std::vector<double>(9, 0.0), equally_spaced_args(9, 0.1));
  for (double band : {1e-9, 0.1, 2.0}) EXPECT_EQ(modulus_concentration(on_circle, band), 0.0);
  const auto mixed = measure_from({std::log(0.85), std::log(0.95), std::log(1.05), std::log(1.2)}, {0, 0, 0, 0});
  EXPECT_DOUBLE_EQ(modulus_concentration(mixed, 0.1), 0.5);
  EXPECT_THROW(modulus_concentration(mixed, 0.0), std::domain_error);
}

TEST(ModulusConcentration, LimitLawValue) {
  auto rng = make_stream(8, 0);
  const auto m = EmpiricalRootMeasure::from_roots(sample_limit_measure(200000, rng));
  const double expected = 1.0 - (theory::mu_radial_cdf(1.1) - theory::mu_radial_cdf(0.9));
  EXPECT_NEAR(modulus_concentration(m, 0.1), expected, 0.005);
}

TEST(LogPotential, LinearPolynomialAtLargeRadius) {
  const LogCoeffPoly p({0.0, 0.0});
  const auto rows = log_potential_profile(p, {1e6, 1e12}, 64);
  for (const auto& row : rows) {
    EXPECT_NEAR(row.circular_mean, std::log(row.radius), 1e-6);
    EXPECT_EQ(row.values.size(), 64u);
    EXPECT_DOUBLE_EQ(row.limit, theory::big_g_radial(row.radius));
  }
}

TEST(LogPotential, JensenInsideRootFreeDisc) {
  // Roots of 2 + 3z + z^2 are -1 and -2; inside |z| < 1 the circular mean is log|P(0)|/n.
  const LogCoeffPoly p({std::log(2.0), std::log(3.0), 0.0});
  const auto rows = log_potential_profile(p, {0.3, 0.9}, 256);
  for (const auto& row : rows) EXPECT_NEAR(row.circular_mean, std::log(2.0) / 2.0, 1e-12);
  // Between the roots Jensen adds log(r / 1) / n.
  const auto mid = log_potential_profile(p, {1.5}, 256)[0];
  EXPECT_NEAR(mid.circular_mean, (std::log(2.0) + std::log(1.5)) / 2.0, 1e-12);
}

TEST(NearOriginMass, Examples) {
  RootSet rs;
  rs.roots = {{std::log(0.5), 1.0}, {std::log(0.05), 2.0}, {std::log(0.001), -2.0}, {std::log(3.0), 3.0}};
  EXPECT_DOUBLE_EQ(near_origin_mass(rs, 1e-4), 0.0);
  EXPECT_DOUBLE_EQ(near_origin_mass(rs, 0.01), 0.25);
  EXPECT_DOUBLE_EQ(near_origin_mass(rs, 0.1), 0.5);
  double prev = 1.0;
  for (double d = 0.99; d > 1e-6; d *= 0.5) {
    const double v = near_origin_mass(rs, d);
    EXPECT_LE(v, prev);
    prev = v;
  }
  EXPECT_THROW(near_origin_mass(rs, 1.0), std::domain_error);
}

TEST(ConeAngleGap, Examples) {
  EXPECT_NEAR(cone_angle_gap(equally_spaced_args(40, pi / 40)), 2.0 * pi / 40, 1e-12);
  EXPECT_GE(cone_angle_gap(std::vector<double>{2.0, -2.0, 3.0, -1.7, pi}), pi);
  EXPECT_EQ(cone_angle_gap(std::vector<double>{0.0, 1.0}), 0.0);
  EXPECT_NEAR(cone_angle_gap(std::vector<double>{0.3, 1.0}), 0.3 + 2.0 * pi - 1.0, 1e-15);
}

TEST(LimitMeasure, PipelineCalibration) {
  auto rng = make_stream(9, 0);
  const auto roots = sample_limit_measure(20000, rng);
  const auto m = EmpiricalRootMeasure::from_roots(roots);
  const double eps = 1.95 / std::sqrt(20000.0);
  EXPECT_LE(ks_log_radius(m), eps);
  EXPECT_LE(ks_angular(m).ks, eps);
  for (const auto& r : roots) {
    EXPECT_GT(r.arg, -pi);
    EXPECT_LE(r.arg, pi);
  }
}
