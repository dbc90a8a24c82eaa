#include "tunnel/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tunnel/phasetime.hpp"
#include "tunnel/spectrum.hpp"
#include "tunnel/transmission.hpp"

namespace tunnel {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError("'" + std::string(key) + "': not a number: '" + std::string(text) + "'");
  return v;
}

int parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError("'" + std::string(key) + "': not an integer: '" + std::string(text) + "'");
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("'" + std::string(key) + "': not a boolean: '" + std::string(text) + "'");
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_double(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

}  // namespace

std::string_view to_string(ExperimentId id) {
  switch (id) {
    case ExperimentId::table1: return "table1";
    case ExperimentId::fig1: return "fig1";
    case ExperimentId::fig2: return "fig2";
    case ExperimentId::single: return "single";
  }
  return "single";
}

ExperimentId parse_experiment_id(std::string_view name) {
  name = trim(name);
  if (name == "table1") return ExperimentId::table1;
  if (name == "fig1") return ExperimentId::fig1;
  if (name == "fig2") return ExperimentId::fig2;
  if (name == "single") return ExperimentId::single;
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

ExperimentConfig ExperimentConfig::defaults(ExperimentId id) {
  ExperimentConfig c;
  c.id = id;
  switch (id) {
    case ExperimentId::table1:
      c.lambdas = {50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
      c.w_ratios = {1.0};
      break;
    case ExperimentId::fig1:
      c.lambdas = {20, 40, 60, 80, 100, 120, 140, 160, 180, 200};
      for (const double ratio : {1.0, 1.1, 1.3, 1.5}) c.w_ratios.push_back(std::sqrt(ratio));
      break;
    case ExperimentId::fig2:
      c.lambdas = {100};
      c.w_ratios = linspace(1.0, 2.0, 21);
      break;
    case ExperimentId::single:
      c.lambdas = {100};
      c.w_ratios = {1.0};
      break;
  }
  return c;
}

void ExperimentConfig::validate() const {
  if (lambdas.empty()) throw ConfigError("lambda grid is empty");
  if (w_ratios.empty()) throw ConfigError("w_ratio grid is empty");
  for (const double l : lambdas)
    if (!std::isfinite(l) || l < 0.0) throw ConfigError("lambda values must be >= 0");
  for (const double w : w_ratios)
    if (!std::isfinite(w) || w < 1.0)
      throw ConfigError("w_ratio values must be >= 1 (E_M <= V0, pure tunneling)");
  try {
    Spectrum(kappa0, delta);
    quadrature.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (coarse_points < 16) throw ConfigError("coarse_points must be >= 16");
  if (!(refine_tol > 0.0)) throw ConfigError("refine_tol must be positive");
  if (tau_min && tau_max && !(*tau_min < *tau_max)) throw ConfigError("tau_min must be < tau_max");
  if (trace_points < 2) throw ConfigError("trace_points must be >= 2");
}

void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "experiment") {
    c.id = parse_experiment_id(value);
  } else if (key == "lambda") {
    c.lambdas = parse_list(key, value);
  } else if (key == "w_ratio") {
    c.w_ratios = parse_list(key, value);
  } else if (key == "energy_ratio") {
    c.w_ratios.clear();
    for (const double r : parse_list(key, value)) {
      if (!(r >= 1.0)) throw ConfigError("energy_ratio values must be >= 1");
      c.w_ratios.push_back(std::sqrt(r));
    }
  } else if (key == "kappa0") {
    c.kappa0 = parse_double(key, value);
  } else if (key == "delta") {
    c.delta = parse_double(key, value);
  } else if (key == "nodes_per_panel") {
    c.quadrature.nodes_per_panel = parse_int(key, value);
  } else if (key == "max_panels") {
    c.quadrature.max_panels = parse_int(key, value);
  } else if (key == "rel_tol") {
    c.quadrature.rel_tol = parse_double(key, value);
  } else if (key == "coarse_points") {
    c.coarse_points = parse_int(key, value);
  } else if (key == "refine_tol") {
    c.refine_tol = parse_double(key, value);
  } else if (key == "tau_min") {
    c.tau_min = parse_double(key, value);
  } else if (key == "tau_max") {
    c.tau_max = parse_double(key, value);
  } else if (key == "out") {
    c.out_path = std::string(value);
  } else if (key == "trace") {
    c.trace = parse_bool(key, value);
  } else if (key == "trace_points") {
    c.trace_points = parse_int(key, value);
  } else if (key == "plot_script") {
    c.plot_script = parse_bool(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_text(ExperimentConfig& config, std::string_view text) {
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    try {
      apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void apply_config_file(ExperimentConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream body;
  body << in.rdbuf();
  apply_config_text(config, body.str());
}

namespace {

PeakSearchConfig search_config_for(const ExperimentConfig& config,
                                   const DimensionlessParams& params) {
  PeakSearchConfig search = default_search_config(params);
  if (config.tau_min) search.tau_min = *config.tau_min;
  if (config.tau_max) search.tau_max = *config.tau_max;
  search.coarse_points = config.coarse_points;
  search.refine_tol = config.refine_tol;
  return search;
}

}  // namespace

ResultRow compute_row(const ExperimentConfig& config, double lambda, double w_ratio) {
  ResultRow row;
  row.lambda = lambda;
  row.w_ratio = w_ratio;
  try {
    const auto params = DimensionlessParams::from_w(w_ratio, lambda);
    const Spectrum spec(config.kappa0, config.delta);

    if (params.a() > 0.0) {
      row.tau_spm = phase_time_spm(params, 1.0, SpmForm::opaque);
    } else {
      row.spm_note = "diverges";
    }
    if (lambda > 0.0) {
      const MomentTable moments = moments_paper(params);
      row.tau_new = phase_time_new(moments, params, NewTimeForm::stationary_point);
      row.tau_new_reduced = phase_time_new(moments, params, NewTimeForm::reduced);
    }
    row.kappa_bar = transmitted_mean_k(spec, params, config.quadrature);
    row.tau_spm_full = phase_time_spm(params, *row.kappa_bar, SpmForm::full);

    const PeakSearchConfig search = search_config_for(config, params);
    const PeakResult peak = peak_arrival(spec, params, search, config.quadrature);
    row.panels = peak.max_panels;
    row.refine_steps = peak.refine_steps;
    if (peak.window_hit) {
      std::ostringstream msg;
      msg << "window_hit: density maximum at the search window edge tau=" << peak.tau_peak;
      row.status = msg.str();
      return row;
    }
    row.tau_num = peak.tau_peak;
    row.density_peak = peak.density_peak;
    if (peak.tau_peak > 0.0 && lambda > 0.0) {
      row.v_transit = transit_velocity(peak.tau_peak, params);
      if (row.tau_new) row.ratio_ana_num = transit_velocity(*row.tau_new, params) / *row.v_transit;
    }
  } catch (const NumericalError& e) {
    row.status = std::string("failed: ") + e.what();
  } catch (const DomainError& e) {
    row.status = std::string("invalid: ") + e.what();
  }
  return row;
}

std::vector<ResultRow> run_points(const ExperimentConfig& config,
                                  const std::vector<std::pair<double, double>>& points,
                                  Execution exec) {
  config.validate();
  std::vector<ResultRow> rows(points.size());
  const auto n = static_cast<long>(points.size());
  const bool spread_rows =
      exec == Execution::parallel && n >= static_cast<long>(omp_get_max_threads());
  // compute_row never throws for numerical trouble; rows land in grid order.
#pragma omp parallel for schedule(dynamic, 1) if (spread_rows)
  for (long i = 0; i < n; ++i) rows[i] = compute_row(config, points[i].first, points[i].second);
  return rows;
}

namespace {

std::vector<std::pair<double, double>> product(const std::vector<double>& ws,
                                               const std::vector<double>& lambdas) {
  std::vector<std::pair<double, double>> pts;
  for (const double w : ws)
    for (const double l : lambdas) pts.emplace_back(l, w);
  return pts;
}

}  // namespace

std::vector<ResultRow> run_table1(const ExperimentConfig& config) {
  return run_points(config, product(config.w_ratios, config.lambdas));
}

std::vector<ResultRow> run_fig1(const ExperimentConfig& config) {
  return run_points(config, product(config.w_ratios, config.lambdas));
}

std::vector<ResultRow> run_fig2(const ExperimentConfig& config) {
  config.validate();
  return run_points(config, product(config.w_ratios, {config.lambdas.front()}));
}

SingleResult run_single(const ExperimentConfig& config) {
  config.validate();
  const double lambda = config.lambdas.front();
  const double w = config.w_ratios.front();
  SingleResult out;
  out.row = compute_row(config, lambda, w);
  if (!config.trace || !out.row.ok()) return out;

  const auto params = DimensionlessParams::from_w(w, lambda);
  const Spectrum spec(config.kappa0, config.delta);
  PeakSearchConfig window = search_config_for(config, params);
  window.coarse_points = std::max(config.trace_points, 16);
  std::vector<double> taus = tau_grid(window);
  taus.push_back(*out.row.tau_num);
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

  const auto samples = density_scan(spec, params, taus, config.quadrature);
  DensityTrace trace;
  trace.tau = taus;
  for (const auto& s : samples) trace.density.push_back(s.density);
  out.trace = std::move(trace);
  return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  ExperimentOutput out;
  switch (config.id) {
    case ExperimentId::table1: out.rows = run_table1(config); break;
    case ExperimentId::fig1: out.rows = run_fig1(config); break;
    case ExperimentId::fig2: out.rows = run_fig2(config); break;
    case ExperimentId::single: {
      SingleResult single = run_single(config);
      out.rows.push_back(std::move(single.row));
      out.trace = std::move(single.trace);
      break;
    }
  }
  return out;
}

int exit_code_for(const std::vector<ResultRow>& rows) {
  const auto failed = std::count_if(rows.begin(), rows.end(), [](const ResultRow& r) { return !r.ok(); });
  if (failed == 0) return 0;
  if (failed == static_cast<long>(rows.size())) return 2;
  return 3;
}

std::string plot_script(ExperimentId id, const std::string& csv_path) {
  std::ostringstream gp;
  gp << "# gnuplot script for " << csv_path << "\n"
     << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set grid\n";
  switch (id) {
    case ExperimentId::table1:
    case ExperimentId::single:
      gp << "set xlabel 'k_M L'\nset ylabel 'v_{tra} [sqrt(V_0/2m)]'\n"
         << "plot '" << csv_path << "' using 1:10 with linespoints title 'numerical', "
         << "4.5 with lines title '9/2'\n";
      break;
    case ExperimentId::fig1:
      gp << "set xlabel 'k_M L'\nset ylabel 'v_{tra} [sqrt(V_0/2m)]'\n"
         << "plot for [w in system(\"tail -n +2 '" << csv_path
         << "' | cut -d, -f2 | uniq\")] '" << csv_path
         << "' using 1:($2==w+0 ? $10 : 1/0) with linespoints title sprintf('sqrt(V_0/E_M)=%s', w)\n";
      break;
    case ExperimentId::fig2:
      gp << "set xlabel 'sqrt(V_0/E_M)'\nset ylabel 'E_M t / hbar'\nset logscale y\n"
         << "plot '" << csv_path << "' using 2:7 with lines title 'NEW', "
         << "'' using 2:4 with lines title 'SPM', "
         << "'' using 2:9 with points title 'NUM'\n";
      break;
  }
  return gp.str();
}

}  // namespace tunnel
