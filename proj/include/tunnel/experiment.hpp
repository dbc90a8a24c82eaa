#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tunnel/error.hpp"
#include "tunnel/peakfind.hpp"
#include "tunnel/quadrature.hpp"

namespace tunnel {

class ConfigError : public DomainError {
 public:
  explicit ConfigError(const std::string& what) : DomainError(what) {}
};

enum class ExperimentId { table1, fig1, fig2, single };

std::string_view to_string(ExperimentId id);
ExperimentId parse_experiment_id(std::string_view name);

/// Everything a run needs. Grids: `lambdas` is k_M L, `w_ratios` is
/// sqrt(V0/E_M). Unset tau_min/tau_max fall back to default_search_config.
struct ExperimentConfig {
  ExperimentId id = ExperimentId::single;
  std::vector<double> lambdas;
  std::vector<double> w_ratios;
  double kappa0 = 0.5;
  double delta = 10.0;
  QuadratureSettings quadrature;
  int coarse_points = 256;
  double refine_tol = 1e-6;
  std::optional<double> tau_min;
  std::optional<double> tau_max;
  std::string out_path;  // empty: standard output
  bool trace = false;
  int trace_points = 512;
  bool plot_script = false;

  /// Defaults for each experiment (Table 1 grid, Fig. 1/2 sweeps, one point).
  static ExperimentConfig defaults(ExperimentId id);

  /// Throws ConfigError on empty grids or settings the modules would reject.
  void validate() const;
};

/// Applies one `key = value` setting. Lists are comma separated;
/// `energy_ratio` (V0/E_M) is an alternative to `w_ratio`.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Applies a config file body: `key = value` lines, `#` comments, blank lines.
void apply_config_text(ExperimentConfig& config, std::string_view text);

/// Reads and applies a config file; throws ConfigError if unreadable.
void apply_config_file(ExperimentConfig& config, const std::string& path);

/// One (Lambda, W) point. Undefined quantities stay empty.
struct ResultRow {
  double lambda = 0.0;
  double w_ratio = 1.0;
  std::optional<double> kappa_bar;
  std::optional<double> tau_spm;
  std::optional<double> tau_spm_full;
  std::string spm_note;  // "diverges" when q_M = 0
  std::optional<double> tau_new;
  std::optional<double> tau_new_reduced;
  std::optional<double> tau_num;
  std::optional<double> v_transit;
  std::optional<double> ratio_ana_num;
  std::optional<double> density_peak;
  int panels = 0;
  int refine_steps = 0;
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

/// Computes one row, turning numerical failures into a non-"ok" status.
ResultRow compute_row(const ExperimentConfig& config, double lambda, double w_ratio);

/// Rows for the given points, in order. Points are spread over OpenMP threads
/// when there are at least as many points as threads; otherwise each row's
/// density scan is parallel instead.
std::vector<ResultRow> run_points(const ExperimentConfig& config,
                                  const std::vector<std::pair<double, double>>& points,
                                  Execution exec = Execution::parallel);

std::vector<ResultRow> run_table1(const ExperimentConfig& config);
std::vector<ResultRow> run_fig1(const ExperimentConfig& config);
std::vector<ResultRow> run_fig2(const ExperimentConfig& config);

struct DensityTrace {
  std::vector<double> tau;
  std::vector<double> density;
};

struct SingleResult {
  ResultRow row;
  std::optional<DensityTrace> trace;
};

/// First (Lambda, W) of the config; the trace covers the search window and
/// includes the refined peak time itself.
SingleResult run_single(const ExperimentConfig& config);

struct ExperimentOutput {
  std::vector<ResultRow> rows;
  std::optional<DensityTrace> trace;
};

/// Dispatches on config.id. A trace is only produced for `single`.
ExperimentOutput run_experiment(const ExperimentConfig& config);

/// 0 all rows ok, 2 all failed, 3 some failed.
int exit_code_for(const std::vector<ResultRow>& rows);

// CSV (csv.cpp)
std::string csv_header();
std::string to_csv_line(const ResultRow& row);
std::string to_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_csv(std::string_view text);
std::string trace_to_csv(const DensityTrace& trace);

/// gnuplot script plotting the rows CSV written at `csv_path`.
std::string plot_script(ExperimentId id, const std::string& csv_path);

}  // namespace tunnel
