// lcroots: command line front end for sampling, root finding, experiments and
// closed-form evaluation.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "lcroots/experiment.hpp"
#include "lcroots/io.hpp"
#include "lcroots/rootsolver.hpp"
#include "lcroots/sampler.hpp"
#include "lcroots/theory.hpp"

namespace {

using namespace lcroots;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPartial = 2;
constexpr int kExitIo = 3;

struct SampleArgs {
  std::string model = "uniform";
  int n = 0;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  int count = 1;
  std::string out;
};

struct RootsArgs {
  std::string in;
  std::string precision = "auto";
  double target_residual = 1e-20;
  int max_iters = 500;
  std::size_t index = 0;
  std::string out = "-";
  std::string svg;
};

struct ExperimentArgs {
  std::string suite = "all";
  std::string model = "beta";
  std::vector<int> n_values;
  int replicates = 1;
  std::uint64_t seed = 0;
  double alpha = 1.0;
  std::string precision = "auto";
  double target_residual = 1e-20;
  std::string out_dir = "results";
  int threads = 0;
  bool svg = false;
  bool no_roots = false;
  bool quiet = false;
};

struct TheoryArgs {
  std::string fn;
  std::vector<std::string> at;
};

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int cmd_sample(const SampleArgs& a) {
  const Model model = parse_model(a.model);
  if (a.n < 1) throw std::invalid_argument("--n must be >= 1");
  if (a.count < 1) throw std::invalid_argument("--count must be >= 1");
  if (!(a.alpha > 0.0)) throw std::invalid_argument("--alpha must be positive");
  const PeakDistribution peak(a.n);
  std::vector<SampleDocument> docs;
  for (int i = 0; i < a.count; ++i) {
    auto rng = make_stream(a.seed, static_cast<std::uint64_t>(i));
    const auto s = sample_convex(peak, rng);
    docs.push_back(SampleDocument::from_draw(s, make_coeffs(s, model, a.alpha), a.seed, i));
  }
  if (a.out == "-") {
    for (const auto& d : docs) std::cout << to_json(d).dump() << '\n';
  } else {
    write_sample_file(a.out, docs);
  }
  return kExitOk;
}

int cmd_roots(const RootsArgs& a) {
  const auto docs = read_sample_file(a.in);
  if (a.index >= docs.size()) {
    throw std::invalid_argument("--index " + std::to_string(a.index) + " out of range: '" + a.in + "' holds " +
                                std::to_string(docs.size()) + " document(s)");
  }
  const LogCoeffPoly poly(docs[a.index].log_coeffs);
  SolverConfig cfg;
  cfg.precision = PrecisionPolicy::parse(a.precision);
  cfg.target_residual = a.target_residual;
  cfg.max_iters = a.max_iters;
  const RootSet rs = find_roots(poly, cfg);

  std::ostringstream csv;
  if (!rs.converged) {
    csv << "# partial: not converged at " << rs.precision_bits << " bits\n";
  }
  write_roots_csv(csv, rs);
  if (a.out == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw IoError("cannot open '" + a.out + "' for writing");
    out << csv.str();
    if (!out) throw IoError("write to '" + a.out + "' failed");
  }
  if (!a.svg.empty()) {
    std::ofstream out(a.svg, std::ios::binary);
    if (!out) throw IoError("cannot open '" + a.svg + "' for writing");
    write_roots_svg(out, {{"n=" + std::to_string(poly.degree()), "#1f5fbf", rs.roots}});
    if (!out) throw IoError("write to '" + a.svg + "' failed");
  }
  for (const auto& d : rs.diagnostics) std::cerr << d << '\n';
  if (!rs.converged) {
    std::cerr << "lcroots: partial convergence, roots written but flagged\n";
    return kExitPartial;
  }
  return kExitOk;
}

int cmd_experiment(const ExperimentArgs& a) {
  ExperimentConfig cfg;
  cfg.suite = parse_suite(a.suite);
  cfg.model = parse_model(a.model);
  cfg.n_values = a.n_values;
  cfg.replicates = a.replicates;
  cfg.master_seed = a.seed;
  cfg.alpha = a.alpha;
  cfg.precision = PrecisionPolicy::parse(a.precision);
  cfg.target_residual = a.target_residual;
  cfg.output_dir = a.out_dir;
  cfg.emit_svg = a.svg;
  cfg.emit_roots = !a.no_roots;
  cfg.threads = a.threads > 0 ? a.threads : std::max(1u, std::thread::hardware_concurrency());

  const auto progress = [&](const ReplicateResult& r) {
    if (a.quiet) return;
    std::cerr << "n=" << r.n << " replicate " << r.replicate << (r.converged ? "" : " NOT CONVERGED") << " ("
              << fmt17(r.seconds).substr(0, 6) << " s)\n";
  };
  const auto rec = run_experiment(cfg, progress);
  write_experiment(rec);
  std::cout << format_summary(rec);
  std::cout << "record written to " << (cfg.output_dir / "experiment.json").string() << '\n';
  if (rec.exit_code() != 0) {
    std::cerr << "lcroots: " << rec.failed << " of " << rec.replicates.size() << " replicates failed to converge\n";
  }
  return rec.exit_code();
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::invalid_argument("--at: '" + s + "' is not a number");
  return x;
}

int parse_int(const std::string& s) {
  const double x = parse_real(s);
  if (x != std::floor(x) || std::abs(x) > 2e9) throw std::invalid_argument("--at: '" + s + "' is not an integer");
  return static_cast<int>(x);
}

int cmd_theory(const TheoryArgs& a) {
  if (a.at.empty()) throw std::invalid_argument("--at needs at least one argument");
  if (a.fn == "psi-n") {
    if (a.at.size() != 3) throw std::invalid_argument("--fn psi-n takes --at N R K");
    std::cout << fmt17(theory::psi_n_profile(parse_int(a.at[0]), parse_int(a.at[1]), parse_int(a.at[2]))) << '\n';
    return kExitOk;
  }
  double (*f)(double) = nullptr;
  if (a.fn == "psi") f = theory::psi;
  else if (a.fn == "G") f = theory::big_g_radial;
  else if (a.fn == "mu-cdf") f = theory::mu_radial_cdf;
  else if (a.fn == "mu-density") f = [](double r) { return theory::mu_density({r, 0.0}); };
  else if (a.fn == "log-radial-cdf") f = theory::log_radial_cdf;
  else throw std::invalid_argument("unknown --fn '" + a.fn + "' (expected psi|G|mu-cdf|mu-density|log-radial-cdf|psi-n)");

  std::vector<std::string> lines;
  for (const auto& s : a.at) {
    const double x = parse_real(s);
    try {
      lines.push_back(fmt17(f(x)));
    } catch (const std::domain_error& e) {
      throw std::domain_error(std::string(e.what()) + " (argument " + s + ")");
    }
  }
  for (const auto& l : lines) std::cout << l << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random log-concave polynomials: sampling, roots, experiments and limit laws"};
  app.require_subcommand(1);

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Draw random log-concave coefficient sequences as JSON");
  sample->add_option("--model", sa.model, "uniform|beta|alpha")->capture_default_str();
  sample->add_option("--n", sa.n, "Degree")->required();
  sample->add_option("--alpha", sa.alpha, "Exponent for the alpha model, b_k = a_k^(n^alpha)")->capture_default_str();
  sample->add_option("--seed", sa.seed, "Master seed")->capture_default_str();
  sample->add_option("--count", sa.count, "Number of draws")->capture_default_str();
  sample->add_option("--out", sa.out, "Output path, '-' for stdout")->required();

  RootsArgs ra;
  auto* roots = app.add_subcommand("roots", "Find all roots of a sampled polynomial and write CSV");
  roots->add_option("--in", ra.in, "Sample JSON file")->required();
  roots->add_option("--precision", ra.precision, "auto|spread|BITS")->capture_default_str();
  roots->add_option("--target-residual", ra.target_residual, "Backward-error target")->capture_default_str();
  roots->add_option("--max-iters", ra.max_iters, "Sweeps per precision level")->capture_default_str();
  roots->add_option("--index", ra.index, "Document index within the input file")->capture_default_str();
  roots->add_option("--out", ra.out, "CSV output path, '-' for stdout")->capture_default_str();
  roots->add_option("--svg", ra.svg, "Optional SVG scatter on [-2,2]^2");

  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment suite");
  experiment->add_option("--suite", ea.suite, "radial|angular|potential|hughes|origin|realroots|all")
      ->capture_default_str();
  experiment->add_option("--model", ea.model, "uniform|beta|alpha")->capture_default_str();
  experiment->add_option("--n", ea.n_values, "Comma separated degrees")->required()->delimiter(',');
  experiment->add_option("--replicates", ea.replicates, "Replicates per degree")->capture_default_str();
  experiment->add_option("--seed", ea.seed, "Master seed")->capture_default_str();
  experiment->add_option("--alpha", ea.alpha, "Exponent for the alpha model")->capture_default_str();
  experiment->add_option("--precision", ea.precision, "auto|spread|BITS")->capture_default_str();
  experiment->add_option("--target-residual", ea.target_residual, "Backward-error target")->capture_default_str();
  experiment->add_option("--out-dir", ea.out_dir, "Output directory")->envname("LCROOTS_OUTPUT_DIR")->capture_default_str();
  experiment->add_option("--threads", ea.threads, "Worker threads (0: hardware concurrency)")
      ->envname("LCROOTS_THREADS")
      ->capture_default_str();
  experiment->add_flag("--svg", ea.svg, "Also write roots.svg");
  experiment->add_flag("--no-roots-csv", ea.no_roots, "Skip the long-form roots.csv");
  experiment->add_flag("--quiet", ea.quiet, "No per-replicate progress on stderr");

  TheoryArgs ta;
  auto* theory_cmd = app.add_subcommand("theory", "Closed-form limit laws");
  theory_cmd->require_subcommand(1);
  auto* eval = theory_cmd->add_subcommand("eval", "Evaluate a limit-law function");
  eval->add_option("--fn", ta.fn, "psi|G|mu-cdf|mu-density|log-radial-cdf|psi-n")->required();
  eval->add_option("--at", ta.at, "Arguments (psi-n: N R K)")->required()->allow_extra_args()->expected(1, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sample) return cmd_sample(sa);
    if (*roots) return cmd_roots(ra);
    if (*experiment) return cmd_experiment(ea);
    if (*eval) return cmd_theory(ta);
  } catch (const IoError& e) {
    std::cerr << "lcroots: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "lcroots: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
