// tunneltime: phase-time experiments for wave packets tunneling through a
// rectangular barrier.
//
//   tunneltime table1 [--config FILE] [--out FILE]
//   tunneltime fig1   [--lambda 20,40,...] [--energy-ratio 1,1.1,...]
//   tunneltime fig2   [--lambda 100] [--w-ratio 1,1.05,...]
//   tunneltime single [--lambda 100] [--w-ratio 1] [--trace]
//
// Exit codes: 0 success, 1 invalid config, 2 numerical failure,
// 3 partial success.

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tunnel/experiment.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::vector<double> lambdas;
  std::vector<double> w_ratios;
  std::vector<double> energy_ratios;
  std::optional<double> kappa0;
  std::optional<double> delta;
  std::optional<double> tau_min;
  std::optional<double> tau_max;
  std::string out;
  bool trace = false;
  bool plot = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "key = value config file")->check(CLI::ExistingFile);
  cmd->add_option("--lambda", o.lambdas, "barrier widths k_M L")->delimiter(',');
  cmd->add_option("--w-ratio", o.w_ratios, "barrier strengths sqrt(V0/E_M)")->delimiter(',');
  cmd->add_option("--energy-ratio", o.energy_ratios, "V0/E_M values (alternative to --w-ratio)")
      ->delimiter(',');
  cmd->add_option("--kappa0", o.kappa0, "spectrum centre k0/k_M");
  cmd->add_option("--delta", o.delta, "spectrum localization k_M d");
  cmd->add_option("--tau-min", o.tau_min, "peak search window start [hbar/E_M]");
  cmd->add_option("--tau-max", o.tau_max, "peak search window end [hbar/E_M]");
  cmd->add_option("--out", o.out, "CSV output path (default: stdout)");
  cmd->add_flag("--plot-script", o.plot, "also write a gnuplot script next to --out");
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (const double x : v) {
    if (!s.empty()) s += ',';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);  // round-trips
    s += buf;
  }
  return s;
}

tunnel::ExperimentConfig build_config(tunnel::ExperimentId id, const Overrides& o) {
  auto config = tunnel::ExperimentConfig::defaults(id);
  if (!o.config_path.empty()) {
    tunnel::apply_config_file(config, o.config_path);
    config.id = id;  // the subcommand wins over an `experiment` key
  }
  if (!o.lambdas.empty()) config.lambdas = o.lambdas;
  if (!o.w_ratios.empty()) config.w_ratios = o.w_ratios;
  if (!o.energy_ratios.empty()) tunnel::apply_setting(config, "energy_ratio", join(o.energy_ratios));
  if (o.kappa0) config.kappa0 = *o.kappa0;
  if (o.delta) config.delta = *o.delta;
  if (o.tau_min) config.tau_min = *o.tau_min;
  if (o.tau_max) config.tau_max = *o.tau_max;
  if (!o.out.empty()) config.out_path = o.out;
  if (o.trace) config.trace = true;
  if (o.plot) config.plot_script = true;
  config.validate();
  return config;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tunnel::ConfigError("cannot write '" + path + "'");
  out << body;
}

std::string stem(const std::string& path) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
  return path.substr(0, dot);
}

void apply_thread_override() {
  const char* env = std::getenv("PHASETIME_THREADS");
  if (!env || !*env) return;
  const int n = std::atoi(env);
  if (n > 0) omp_set_num_threads(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tunneling phase times: stationary-phase, moment-based and numerical"};
  app.require_subcommand(1);
  Overrides o;
  std::vector<std::pair<CLI::App*, tunnel::ExperimentId>> commands;
  for (const auto id : {tunnel::ExperimentId::table1, tunnel::ExperimentId::fig1,
                        tunnel::ExperimentId::fig2, tunnel::ExperimentId::single}) {
    auto* cmd = app.add_subcommand(std::string(tunnel::to_string(id)));
    add_common(cmd, o);
    if (id == tunnel::ExperimentId::single)
      cmd->add_flag("--trace", o.trace, "also emit the exit density time series");
    commands.emplace_back(cmd, id);
  }
  commands[0].first->description("Peak times and transit velocities for E_M = V0 (Table 1)");
  commands[1].first->description("Transit velocity versus k_M L for several V0/E_M (Figure 1)");
  commands[2].first->description("SPM, new and numerical phase times versus sqrt(V0/E_M) (Figure 2)");
  commands[3].first->description("One (k_M L, sqrt(V0/E_M)) point, optionally with a density trace");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  apply_thread_override();

  tunnel::ExperimentConfig config;
  try {
    for (const auto& [cmd, id] : commands)
      if (cmd->parsed()) config = build_config(id, o);
  } catch (const tunnel::DomainError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 1;
  }

  try {
    const tunnel::ExperimentOutput result = tunnel::run_experiment(config);
    const std::string csv = tunnel::to_csv(result.rows);
    if (config.out_path.empty()) {
      std::cout << csv;
      if (result.trace) std::cout << "\n" << tunnel::trace_to_csv(*result.trace);
    } else {
      write_file(config.out_path, csv);
      if (result.trace) write_file(stem(config.out_path) + "_trace.csv", tunnel::trace_to_csv(*result.trace));
      if (config.plot_script)
        write_file(stem(config.out_path) + ".gp", tunnel::plot_script(config.id, config.out_path));
    }
    for (const auto& row : result.rows)
      if (!row.ok())
        std::cerr << "lambda=" << row.lambda << " w_ratio=" << row.w_ratio << ": " << row.status << "\n";
    return tunnel::exit_code_for(result.rows);
  } catch (const tunnel::ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 1;
  } catch (const tunnel::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const tunnel::DomainError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 1;
  }
}
