#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lcroots/experiment.hpp"
#include "lcroots/io.hpp"
#include "lcroots/rootsolver.hpp"
#include "lcroots/sampler.hpp"
#include "lcroots/stats.hpp"
#include "lcroots/theory.hpp"

namespace py = pybind11;
using namespace lcroots;

namespace {

py::dict sample_dict(int n, const std::string& model, double alpha, std::uint64_t seed, std::uint64_t index) {
  auto rng = make_stream(seed, index);
  const auto s = sample_convex(n, rng);
  const auto c = make_coeffs(s, parse_model(model), alpha);
  py::dict d;
  d["n"] = n;
  d["model"] = std::string(to_string(c.model));
  d["alpha"] = alpha;
  d["seed"] = seed;
  d["index"] = index;
  d["R"] = s.r_peak;
  d["W"] = s.w;
  d["log_coeffs"] = c.log_coeffs;
  return d;
}

SolverConfig solver_config(const std::string& precision, double target_residual, int max_iters) {
  SolverConfig cfg;
  cfg.precision = PrecisionPolicy::parse(precision);
  cfg.target_residual = target_residual;
  cfg.max_iters = max_iters;
  return cfg;
}

std::vector<double> log_radii_of(const RootSet& rs) {
  std::vector<double> out;
  for (const auto& r : rs.roots) out.push_back(r.log_abs);
  return out;
}

std::vector<double> args_of(const RootSet& rs) {
  std::vector<double> out;
  for (const auto& r : rs.roots) out.push_back(r.arg);
  return out;
}

EmpiricalRootMeasure measure(const std::vector<double>& log_radii, const std::vector<double>& args) {
  if (!args.empty() && args.size() != log_radii.size()) throw std::invalid_argument("log_radii and args differ in length");
  std::vector<Root> roots(log_radii.size());
  for (std::size_t i = 0; i < roots.size(); ++i) roots[i] = {log_radii[i], args.empty() ? 0.0 : args[i]};
  return EmpiricalRootMeasure::from_roots(roots);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Random log-concave polynomials: samplers, root solver, limit laws and statistics";

  m.def("peak_pmf", &peak_pmf, py::arg("n"));
  m.def(
      "peak_pmf_exact",
      [](int n) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& q : peak_pmf_exact(n)) out.emplace_back(q.get_num().get_str(), q.get_den().get_str());
        return out;
      },
      py::arg("n"), "Exact peak law as (numerator, denominator) decimal strings.");
  m.def("sample", &sample_dict, py::arg("n"), py::arg("model") = "uniform", py::arg("alpha") = 1.0,
        py::arg("seed") = 0, py::arg("index") = 0);

  py::class_<RootSet>(m, "RootSet")
      .def_property_readonly("values", &RootSet::values)
      .def_property_readonly("log_abs", &log_radii_of)
      .def_property_readonly("args", &args_of)
      .def_readonly("residuals", &RootSet::residuals)
      .def_readonly("precision_bits", &RootSet::precision_bits)
      .def_readonly("converged", &RootSet::converged)
      .def_readonly("iterations", &RootSet::iterations)
      .def_readonly("diagnostics", &RootSet::diagnostics)
      .def("__len__", &RootSet::degree);

  m.def(
      "find_roots",
      [](std::vector<double> log_coeffs, const std::string& precision, double target_residual, int max_iters) {
        const LogCoeffPoly poly(std::move(log_coeffs));
        const auto cfg = solver_config(precision, target_residual, max_iters);
        py::gil_scoped_release release;
        return find_roots(poly, cfg);
      },
      py::arg("log_coeffs"), py::arg("precision") = "auto", py::arg("target_residual") = 1e-20,
      py::arg("max_iters") = 500);
  m.def(
      "companion_oracle", [](std::vector<double> log_coeffs) { return companion_oracle(LogCoeffPoly(std::move(log_coeffs))); },
      py::arg("log_coeffs"));
  m.def("matched_distance", &matched_distance, py::arg("a"), py::arg("b"));
  m.def(
      "eval_log",
      [](std::vector<double> log_coeffs, std::complex<double> z) {
        const auto v = eval_log(LogCoeffPoly(std::move(log_coeffs)), z);
        return py::make_tuple(v.log_abs, v.phase);
      },
      py::arg("log_coeffs"), py::arg("z"), "(log|P(z)|, P(z)/|P(z)|)");
  m.def(
      "newton_polygon_radii",
      [](std::vector<double> log_coeffs) {
        std::vector<std::pair<double, int>> out;
        for (const auto& s : newton_polygon_radii(LogCoeffPoly(std::move(log_coeffs)))) {
          out.emplace_back(s.log_radius, s.multiplicity);
        }
        return out;
      },
      py::arg("log_coeffs"), "(log radius, multiplicity) per hull segment.");
  m.def(
      "check_root_set",
      [](std::vector<double> log_coeffs, const RootSet& rs) {
        const auto c = check_root_set(LogCoeffPoly(std::move(log_coeffs)), rs);
        py::dict d;
        d["conjugate_closed"] = c.conjugate_closed;
        d["vieta_error"] = c.vieta_error;
        d["vieta_ok"] = c.vieta_ok;
        d["positive_real"] = c.positive_real;
        d["residuals_ok"] = c.residuals_ok;
        d["ok"] = c.all_ok();
        return d;
      },
      py::arg("log_coeffs"), py::arg("roots"));

  auto th = m.def_submodule("theory", "Closed-form limit laws");
  th.def("psi", &theory::psi, py::arg("t"));
  th.def("big_g", &theory::big_g, py::arg("z"));
  th.def("big_g_radial", &theory::big_g_radial, py::arg("r"));
  th.def("mu_density", &theory::mu_density, py::arg("z"));
  th.def("mu_radial_cdf", &theory::mu_radial_cdf, py::arg("r"));
  th.def("log_radial_density", &theory::log_radial_density, py::arg("x"));
  th.def("log_radial_cdf", &theory::log_radial_cdf, py::arg("x"));
  th.def("log_radial_quantile", &theory::log_radial_quantile, py::arg("p"));
  th.def("psi_n_profile", &theory::psi_n_profile, py::arg("n"), py::arg("r_peak"), py::arg("k"));
  th.def("phi_profile", &theory::phi_profile, py::arg("t"), py::arg("r"));
  th.def("hughes_quantity", &theory::hughes_quantity, py::arg("log_coeffs"));
  th.def("jensen_origin_envelope", &theory::jensen_origin_envelope, py::arg("delta"));

  auto st = m.def_submodule("stats", "Empirical root statistics");
  st.def(
      "ks_log_radius", [](const std::vector<double>& x) { return ks_log_radius(measure(x, {})); },
      py::arg("log_radii"));
  st.def(
      "ks_angular",
      [](const std::vector<double>& args) {
        const auto f = ks_angular(measure(std::vector<double>(args.size(), 0.0), args));
        return py::make_tuple(f.ks, f.kuiper);
      },
      py::arg("args"), "(KS, Kuiper)");
  st.def(
      "modulus_concentration",
      [](const std::vector<double>& x, double band) { return modulus_concentration(measure(x, {}), band); },
      py::arg("log_radii"), py::arg("band") = 0.1);
  st.def("cone_angle_gap", py::overload_cast<const std::vector<double>&>(&cone_angle_gap), py::arg("args"));
  st.def("near_origin_mass", &near_origin_mass, py::arg("roots"), py::arg("delta"));

  m.def(
      "_run_experiment",
      [](const std::string& suite, const std::string& model, std::vector<int> n_values, int replicates,
         std::uint64_t seed, double alpha, const std::string& precision, int threads) {
        ExperimentConfig cfg;
        cfg.suite = parse_suite(suite);
        cfg.model = parse_model(model);
        cfg.n_values = std::move(n_values);
        cfg.replicates = replicates;
        cfg.master_seed = seed;
        cfg.alpha = alpha;
        cfg.precision = PrecisionPolicy::parse(precision);
        cfg.threads = threads;
        ExperimentRecord rec;
        {
          py::gil_scoped_release release;
          rec = run_experiment(cfg);
        }
        return to_json(rec, false).dump();
      },
      py::arg("suite"), py::arg("model"), py::arg("n_values"), py::arg("replicates"), py::arg("seed"),
      py::arg("alpha"), py::arg("precision"), py::arg("threads"));
}
