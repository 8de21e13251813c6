#include "lcroots/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lcroots/io.hpp"
#include "lcroots/rng.hpp"
#include "lcroots/stats.hpp"
#include "lcroots/theory.hpp"

namespace lcroots {

namespace {

constexpr int kGridRadii = 10;
constexpr int kGridAngles = 10;

double median_of(std::vector<double> xs) {
  if (xs.empty()) return NAN;
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); }

// Named statistics that get a median; potential means are added per radius.
std::vector<std::pair<std::string, double>> named_stats(const ExperimentConfig& cfg, const ReplicateResult& r) {
  std::vector<std::pair<std::string, double>> out{
      {"ks_radius", r.ks_radius},
      {"ks_angle", r.ks_angle},
      {"kuiper", r.kuiper},
      {"modulus_concentration", r.modulus_concentration},
      {"hughes", r.hughes},
      {"near_origin", r.near_origin},
      {"negative_real", r.negative_real < 0 ? NAN : r.negative_real},
      {"positive_real", r.positive_real < 0 ? NAN : r.positive_real},
      {"cone_gap", r.cone_gap},
      {"potential_max_excess", r.potential_max_excess},
      {"precision_bits", r.solved ? static_cast<double>(r.precision_bits) : NAN},
  };
  for (std::size_t i = 0; i < r.potential_means.size(); ++i) {
    out.emplace_back("potential_abs_dev_r" + format_decimal(cfg.potential_radii[i]),
                     std::abs(r.potential_means[i] - r.potential_limits[i]));
  }
  return out;
}

}  // namespace

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::radial: return "radial";
    case Suite::angular: return "angular";
    case Suite::potential: return "potential";
    case Suite::hughes: return "hughes";
    case Suite::origin: return "origin";
    case Suite::realroots: return "realroots";
    case Suite::all: return "all";
  }
  return "?";
}

Suite parse_suite(std::string_view name) {
  for (Suite s : {Suite::radial, Suite::angular, Suite::potential, Suite::hughes, Suite::origin, Suite::realroots,
                  Suite::all}) {
    if (name == to_string(s)) return s;
  }
  throw std::invalid_argument("unknown suite '" + std::string(name) +
                              "' (expected radial|angular|potential|hughes|origin|realroots|all)");
}

bool suite_needs_roots(Suite suite) { return suite != Suite::hughes && suite != Suite::potential; }

void ExperimentConfig::validate() const {
  if (n_values.empty()) throw std::invalid_argument("experiment: n_values must be nonempty");
  for (int n : n_values) {
    if (n < 1) throw std::invalid_argument("experiment: every n must be >= 1, got " + std::to_string(n));
  }
  if (replicates < 1) throw std::invalid_argument("experiment: replicates must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("experiment: alpha must be positive");
  if (!(target_residual > 0.0)) throw std::invalid_argument("experiment: target residual must be positive");
  if (threads < 1) throw std::invalid_argument("experiment: threads must be >= 1");
  if (!(band > 0.0)) throw std::invalid_argument("experiment: band must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("experiment: delta must lie in (0, 1)");
  if (angles < 1) throw std::invalid_argument("experiment: angles must be >= 1");
  if (!(grid_radius >= 1.0)) throw std::invalid_argument("experiment: grid radius must be >= 1");
}

std::uint64_t replicate_stream(int n, int replicate) {
  return (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint32_t>(replicate);
}

double AggregateRow::median(std::string_view name) const {
  for (const auto& [k, v] : medians) {
    if (k == name) return v;
  }
  return NAN;
}

int ExperimentRecord::exit_code() const {
  const double total = static_cast<double>(replicates.size());
  return total > 0 && failed > config.failure_fraction_limit * total ? 2 : 0;
}

ReplicateResult run_replicate(const ExperimentConfig& cfg, int n, int replicate) {
  const auto start = std::chrono::steady_clock::now();
  ReplicateResult r;
  r.n = n;
  r.replicate = replicate;
  r.stream = replicate_stream(n, replicate);

  auto rng = make_stream(cfg.master_seed, r.stream);
  const auto sample = sample_convex(n, rng);
  r.r_peak = sample.r_peak;
  const auto coeffs = make_coeffs(sample, cfg.model, cfg.alpha);
  const LogCoeffPoly poly(coeffs);

  r.hughes = theory::hughes_quantity(coeffs.log_coeffs);

  if (cfg.suite == Suite::potential || cfg.suite == Suite::all) {
    for (const auto& row : log_potential_profile(poly, cfg.potential_radii, cfg.angles)) {
      r.potential_means.push_back(row.circular_mean);
      r.potential_limits.push_back(row.limit);
    }
    const double lc = std::log(cfg.grid_radius);
    double worst = -INFINITY;
    for (int i = 0; i < kGridRadii; ++i) {
      const double x = -lc + 2.0 * lc * i / (kGridRadii - 1);
      for (int j = 0; j < kGridAngles; ++j) {
        const double theta = 2.0 * std::numbers::pi * (j + 0.5) / kGridAngles - std::numbers::pi;
        const double v = eval_log_polar(poly, x, theta).log_abs / n;
        worst = std::max(worst, v - theory::big_g_log(x));
      }
    }
    r.potential_max_excess = worst;
  }

  if (suite_needs_roots(cfg.suite)) {
    SolverConfig sc;
    sc.target_residual = cfg.target_residual;
    sc.precision = cfg.precision;
    r.roots = find_roots(poly, sc);
    r.solved = true;
    r.converged = r.roots.converged;
    r.precision_bits = r.roots.precision_bits;
    r.iterations = r.roots.iterations;
    r.diagnostics = r.roots.diagnostics;

    const auto m = EmpiricalRootMeasure::from_root_set(r.roots);
    r.ks_radius = ks_log_radius(m);
    const auto fit = ks_angular(m);
    r.ks_angle = fit.ks;
    r.kuiper = fit.kuiper;
    r.modulus_concentration = modulus_concentration(m, cfg.band);
    r.near_origin = near_origin_mass(r.roots, cfg.delta);
    r.origin_envelope = theory::jensen_origin_envelope(cfg.delta);
    const auto real = count_real_roots(r.roots);
    r.negative_real = real.negative_axis;
    r.positive_real = real.positive_axis;
    r.cone_gap = cone_angle_gap(r.roots);

    const auto checks = check_root_set(poly, r.roots, cfg.target_residual);
    r.invariants_checked = true;
    r.conjugate_closed = checks.conjugate_closed;
    r.vieta_error = checks.vieta_error;
    r.vieta_ok = checks.vieta_ok;
    r.residuals_ok = checks.residuals_ok;
    if (!checks.detail.empty()) r.diagnostics.push_back(checks.detail);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ExperimentRecord run_experiment(const ExperimentConfig& cfg, const ProgressFn& progress) {
  cfg.validate();
  ExperimentRecord rec;
  rec.config = cfg;

  std::vector<std::pair<int, int>> jobs;
  for (int n : cfg.n_values) {
    for (int j = 0; j < cfg.replicates; ++j) jobs.emplace_back(n, j);
  }
  rec.replicates.resize(jobs.size());

  std::atomic<std::size_t> next{0};
  std::mutex sink;
  std::exception_ptr error;
  const auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      try {
        auto res = run_replicate(cfg, jobs[i].first, jobs[i].second);
        std::lock_guard lock(sink);
        rec.replicates[i] = std::move(res);
        if (progress) progress(rec.replicates[i]);
      } catch (...) {
        std::lock_guard lock(sink);
        if (!error) error = std::current_exception();
        next = jobs.size();
      }
    }
  };
  const int nthreads = std::min<int>(cfg.threads, static_cast<int>(jobs.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  for (int n : cfg.n_values) {
    AggregateRow row;
    row.n = n;
    std::vector<const ReplicateResult*> ok;
    for (const auto& r : rec.replicates) {
      if (r.n != n) continue;
      ++row.replicates;
      if (r.converged) {
        ok.push_back(&r);
      } else {
        ++row.failed;
      }
    }
    if (!ok.empty()) {
      const auto names = named_stats(cfg, *ok.front());
      for (std::size_t s = 0; s < names.size(); ++s) {
        std::vector<double> xs;
        for (const auto* r : ok) {
          const double v = named_stats(cfg, *r)[s].second;
          if (std::isfinite(v)) xs.push_back(v);
        }
        if (!xs.empty()) row.medians.emplace_back(names[s].first, median_of(xs));
      }
    }
    rec.failed += row.failed;
    rec.aggregates.push_back(std::move(row));
  }
  return rec;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["suite"] = std::string(to_string(c.suite));
  j["model"] = std::string(to_string(c.model));
  j["n_values"] = c.n_values;
  j["replicates"] = c.replicates;
  j["master_seed"] = c.master_seed;
  j["alpha"] = c.alpha;
  switch (c.precision.kind) {
    case PrecisionPolicy::Kind::automatic: j["precision"] = "auto"; break;
    case PrecisionPolicy::Kind::spread: j["precision"] = "spread"; break;
    case PrecisionPolicy::Kind::fixed: j["precision"] = c.precision.bits; break;
  }
  j["target_residual"] = c.target_residual;
  j["output_dir"] = c.output_dir.string();
  j["emit_svg"] = c.emit_svg;
  j["emit_roots"] = c.emit_roots;
  j["band"] = c.band;
  j["delta"] = c.delta;
  j["potential_radii"] = c.potential_radii;
  j["angles"] = c.angles;
  j["grid_radius"] = c.grid_radius;
  j["thresholds"] = {{"median_strict", c.median_threshold_strict},
                     {"median_loose", c.median_threshold_loose},
                     {"failure_fraction", c.failure_fraction_limit}};
  return j;
}

nlohmann::json to_json(const ExperimentRecord& rec, bool with_timing) {
  nlohmann::json j;
  j["config"] = to_json(rec.config);
  auto reps = nlohmann::json::array();
  for (const auto& r : rec.replicates) {
    nlohmann::json e;
    e["n"] = r.n;
    e["replicate"] = r.replicate;
    e["seed"] = {{"master", rec.config.master_seed}, {"stream", r.stream}};
    e["R"] = r.r_peak;
    e["converged"] = r.converged;
    e["solved"] = r.solved;
    e["precision_bits"] = r.precision_bits;
    e["iterations"] = r.iterations;
    if (with_timing) e["seconds"] = r.seconds;
    e["hughes"] = number_or_null(r.hughes);
    if (r.solved) {
      e["ks_radius"] = number_or_null(r.ks_radius);
      e["ks_angle"] = number_or_null(r.ks_angle);
      e["kuiper"] = number_or_null(r.kuiper);
      e["modulus_concentration"] = number_or_null(r.modulus_concentration);
      e["near_origin"] = number_or_null(r.near_origin);
      e["origin_envelope"] = number_or_null(r.origin_envelope);
      e["real_roots"] = {{"negative_axis", r.negative_real}, {"positive_axis", r.positive_real}};
      e["cone_gap"] = number_or_null(r.cone_gap);
      e["invariants"] = {{"conjugate_closed", r.conjugate_closed},
                         {"vieta_error", number_or_null(r.vieta_error)},
                         {"vieta_ok", r.vieta_ok},
                         {"residuals_ok", r.residuals_ok}};
    }
    if (!r.potential_means.empty()) {
      e["potential"] = {{"radii", rec.config.potential_radii},
                        {"circular_means", r.potential_means},
                        {"limits", r.potential_limits},
                        {"max_excess", number_or_null(r.potential_max_excess)}};
    }
    if (!r.diagnostics.empty()) e["diagnostics"] = r.diagnostics;
    reps.push_back(std::move(e));
  }
  j["replicates"] = std::move(reps);
  auto aggs = nlohmann::json::array();
  for (const auto& a : rec.aggregates) {
    nlohmann::json e;
    e["n"] = a.n;
    e["replicates"] = a.replicates;
    e["failed"] = a.failed;
    nlohmann::json med = nlohmann::json::object();
    for (const auto& [k, v] : a.medians) med[k] = v;
    e["medians"] = std::move(med);
    aggs.push_back(std::move(e));
  }
  j["aggregates"] = std::move(aggs);
  j["failed"] = rec.failed;
  return j;
}

void write_experiment(const ExperimentRecord& rec) {
  const auto& dir = rec.config.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());

  const auto open = [](const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot open '" + p.string() + "' for writing");
    return out;
  };
  const auto finish = [](std::ofstream& out, const std::filesystem::path& p) {
    out.flush();
    if (!out) throw IoError("write to '" + p.string() + "' failed");
  };

  {
    const auto p = dir / "experiment.json";
    auto out = open(p);
    out << to_json(rec).dump(2) << '\n';
    finish(out, p);
  }
  {
    const auto p = dir / "replicates.csv";
    auto out = open(p);
    out << "n,replicate,stream,R,converged,precision_bits,seconds,ks_radius,ks_angle,kuiper,"
           "modulus_concentration,hughes,near_origin,negative_real,positive_real,cone_gap,potential_max_excess\n";
    const auto d = [](double x) { return std::isfinite(x) ? format_decimal(x) : std::string(); };
    for (const auto& r : rec.replicates) {
      out << r.n << ',' << r.replicate << ',' << r.stream << ',' << r.r_peak << ',' << (r.converged ? 1 : 0) << ','
          << r.precision_bits << ',' << d(r.seconds) << ',' << d(r.ks_radius) << ',' << d(r.ks_angle) << ','
          << d(r.kuiper) << ',' << d(r.modulus_concentration) << ',' << d(r.hughes) << ',' << d(r.near_origin)
          << ',' << (r.negative_real < 0 ? "" : std::to_string(r.negative_real)) << ','
          << (r.positive_real < 0 ? "" : std::to_string(r.positive_real)) << ',' << d(r.cone_gap) << ','
          << d(r.potential_max_excess) << '\n';
    }
    finish(out, p);
  }
  {
    const auto p = dir / "summary.csv";
    auto out = open(p);
    out << "n,replicates,failed,statistic,median\n";
    for (const auto& a : rec.aggregates) {
      for (const auto& [k, v] : a.medians) {
        out << a.n << ',' << a.replicates << ',' << a.failed << ',' << k << ',' << format_decimal(v) << '\n';
      }
    }
    finish(out, p);
  }
  const bool have_roots = std::any_of(rec.replicates.begin(), rec.replicates.end(),
                                      [](const ReplicateResult& r) { return r.solved; });
  if (rec.config.emit_roots && have_roots) {
    const auto p = dir / "roots.csv";
    auto out = open(p);
    out << "n,replicate,converged,";
    bool header = true;
    for (const auto& r : rec.replicates) {
      if (!r.solved) continue;
      std::ostringstream body;
      write_roots_csv(body, r.roots);
      std::istringstream lines(body.str());
      std::string line;
      std::getline(lines, line);
      if (header) {
        out << line << '\n';
        header = false;
      }
      while (std::getline(lines, line)) {
        out << r.n << ',' << r.replicate << ',' << (r.converged ? 1 : 0) << ',' << line << '\n';
      }
    }
    finish(out, p);
  }
  if (rec.config.emit_svg && have_roots) {
    static const char* kColors[] = {"#e07b00", "#1f5fbf", "#2a9d3c", "#b0306a", "#6b4fb8"};
    std::vector<ScatterSeries> series;
    for (std::size_t i = 0; i < rec.config.n_values.size(); ++i) {
      const int n = rec.config.n_values[i];
      for (const auto& r : rec.replicates) {
        if (r.n == n && r.replicate == 0 && r.solved) {
          series.push_back({"n=" + std::to_string(n), kColors[i % 5], r.roots.roots});
        }
      }
    }
    const auto p = dir / "roots.svg";
    auto out = open(p);
    write_roots_svg(out, series);
    finish(out, p);
  }
}

std::string format_summary(const ExperimentRecord& rec) {
  std::vector<std::string> names;
  for (const auto& a : rec.aggregates) {
    for (const auto& [k, v] : a.medians) {
      if (std::find(names.begin(), names.end(), k) == names.end()) names.push_back(k);
    }
  }
  std::ostringstream out;
  out << "suite=" << to_string(rec.config.suite) << " model=" << to_string(rec.config.model)
      << " seed=" << rec.config.master_seed << " (medians over converged replicates)\n";
  out << std::left << std::setw(26) << "statistic";
  for (const auto& a : rec.aggregates) out << std::setw(14) << ("n=" + std::to_string(a.n));
  out << '\n';
  out << std::setw(26) << "replicates/failed";
  for (const auto& a : rec.aggregates) {
    out << std::setw(14) << (std::to_string(a.replicates) + "/" + std::to_string(a.failed));
  }
  out << '\n';
  for (const auto& name : names) {
    out << std::setw(26) << name;
    for (const auto& a : rec.aggregates) {
      char buf[32];
      const double v = a.median(name);
      if (std::isfinite(v)) {
        std::snprintf(buf, sizeof buf, "%.6g", v);
      } else {
        std::snprintf(buf, sizeof buf, "-");
      }
      out << std::setw(14) << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace lcroots
