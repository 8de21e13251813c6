#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lcroots/rootsolver.hpp"
#include "lcroots/sampler.hpp"

namespace lcroots {

enum class Suite { radial, angular, potential, hughes, origin, realroots, all };

std::string_view to_string(Suite suite);
Suite parse_suite(std::string_view name);

/// Whether the suite needs the roots (hughes and potential only evaluate P).
bool suite_needs_roots(Suite suite);

struct ExperimentConfig {
  Suite suite = Suite::all;
  Model model = Model::beta;
  std::vector<int> n_values;
  int replicates = 1;
  std::uint64_t master_seed = 0;
  double alpha = 1.0;
  PrecisionPolicy precision = PrecisionPolicy::automatic();
  double target_residual = 1e-20;
  std::filesystem::path output_dir = "results";
  bool emit_svg = false;
  bool emit_roots = true;
  int threads = 1;

  // Statistic parameters and the recorded engineering thresholds.
  double band = 0.1;
  double delta = 0.01;
  std::vector<double> potential_radii{0.5, 1.0, 2.0};
  int angles = 256;
  double grid_radius = 2.0;  ///< C in C^-1 <= |z| <= C for the upper-bound grid
  double median_threshold_strict = 0.05;
  double median_threshold_loose = 0.1;
  double failure_fraction_limit = 0.2;

  /// Throws std::invalid_argument when an invariant is broken.
  void validate() const;
};

/// Stream index of replicate j at degree n; independent of scheduling and of
/// the other degrees in the run.
std::uint64_t replicate_stream(int n, int replicate);

/// Per-replicate statistics. Root-based fields are NaN (or -1 for counts)
/// when the suite did not ask for roots.
struct ReplicateResult {
  int n = 0;
  int replicate = 0;
  std::uint64_t stream = 0;
  int r_peak = 0;
  bool solved = false;
  bool converged = true;
  double seconds = 0.0;
  int precision_bits = 0;
  int iterations = 0;
  std::vector<std::string> diagnostics;

  double ks_radius = NAN;
  double ks_angle = NAN;
  double kuiper = NAN;
  double modulus_concentration = NAN;
  double hughes = NAN;
  double near_origin = NAN;
  double origin_envelope = NAN;
  int negative_real = -1;
  int positive_real = -1;
  double cone_gap = NAN;

  bool invariants_checked = false;
  bool conjugate_closed = false;
  double vieta_error = NAN;
  bool vieta_ok = false;
  bool residuals_ok = false;

  std::vector<double> potential_means;  ///< per ExperimentConfig::potential_radii
  std::vector<double> potential_limits;
  double potential_max_excess = NAN;  ///< max over the grid of (1/n) log|P| - G

  RootSet roots;  ///< kept for emission, empty when not solved
};

struct AggregateRow {
  int n = 0;
  int replicates = 0;
  int failed = 0;
  /// Medians over the converged replicates, keyed by statistic name.
  std::vector<std::pair<std::string, double>> medians;
  double median(std::string_view name) const;
};

struct ExperimentRecord {
  ExperimentConfig config;
  std::vector<ReplicateResult> replicates;  ///< ordered by (n, replicate)
  std::vector<AggregateRow> aggregates;     ///< one per n, in config order
  int failed = 0;

  /// 0 on success, 2 when more than the allowed fraction failed.
  int exit_code() const;
};

using ProgressFn = std::function<void(const ReplicateResult&)>;

/// Runs every (n, replicate) pair on a pool of config.threads workers. Each
/// replicate draws from its own stream, so results do not depend on the
/// thread count.
ExperimentRecord run_experiment(const ExperimentConfig& config, const ProgressFn& progress = {});

/// Statistics for one polynomial; exposed for tests and the Python module.
ReplicateResult run_replicate(const ExperimentConfig& config, int n, int replicate);

nlohmann::json to_json(const ExperimentConfig& config);
/// Excludes wall-clock time when with_timing is false, which makes the
/// document bit-identical across runs.
nlohmann::json to_json(const ExperimentRecord& record, bool with_timing = true);

/// Writes experiment.json, replicates.csv, summary.csv and, when requested,
/// roots.csv and roots.svg into config.output_dir.
void write_experiment(const ExperimentRecord& record);

/// Plain-text aggregate table for the terminal.
std::string format_summary(const ExperimentRecord& record);

}  // namespace lcroots
