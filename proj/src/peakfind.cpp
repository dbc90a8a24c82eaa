#include "tunnel/peakfind.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "tunnel/error.hpp"

namespace tunnel {

void PeakSearchConfig::validate() const {
  if (!(tau_min < tau_max) || !std::isfinite(tau_min) || !std::isfinite(tau_max))
    throw DomainError("peak search window needs tau_min < tau_max");
  if (coarse_points < 16) throw DomainError("peak search needs at least 16 coarse points");
  if (!(refine_tol > 0.0)) throw DomainError("peak search refine_tol must be positive");
}

PeakSearchConfig default_search_config(const DimensionlessParams& params) {
  PeakSearchConfig config;
  if (!(params.lambda() > 0.0)) {
    config.tau_min = 0.0;
    config.tau_max = 10.0;
    return config;
  }
  const double tau_new = phase_time_new(moments_paper(params), params);
  config.tau_min = 0.1 * tau_new;
  config.tau_max = 5.0 * tau_new + 10.0;
  return config;
}

std::vector<double> tau_grid(const PeakSearchConfig& config) {
  config.validate();
  const int n = config.coarse_points;
  std::vector<double> taus(static_cast<std::size_t>(n));
  const double step = (config.tau_max - config.tau_min) / (n - 1);
  for (int i = 0; i < n; ++i) taus[i] = config.tau_min + step * i;
  taus.back() = config.tau_max;
  return taus;
}

std::vector<WaveSample> density_scan_serial(const Spectrum& spec, const DimensionlessParams& params,
                                            std::span<const double> taus,
                                            const QuadratureSettings& settings) {
  std::vector<WaveSample> out;
  out.reserve(taus.size());
  for (const double tau : taus) out.push_back(synthesize(spec, params, 0.0, tau, settings));
  return out;
}

std::vector<WaveSample> density_scan(const Spectrum& spec, const DimensionlessParams& params,
                                     std::span<const double> taus,
                                     const QuadratureSettings& settings) {
  settings.validate();
  const auto n = static_cast<long>(taus.size());
  std::vector<WaveSample> out(taus.size());
  std::vector<std::exception_ptr> errors(taus.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = synthesize(spec, params, 0.0, taus[i], settings);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

PeakResult peak_arrival(const Spectrum& spec_in, const DimensionlessParams& params,
                        const PeakSearchConfig& config, const QuadratureSettings& settings,
                        Execution exec) {
  config.validate();
  // Search on the unit-normalized spectrum so every comparison, and hence
  // tau_peak, is independent of the overall scale; rescale the density at the end.
  const Spectrum spec(spec_in.kappa0(), spec_in.delta());
  const double norm = spec_in.scale() * spec_in.scale();
  const auto taus = tau_grid(config);
  const auto samples = exec == Execution::parallel ? density_scan(spec, params, taus, settings)
                                                   : density_scan_serial(spec, params, taus, settings);

  PeakResult result;
  std::size_t best = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    result.max_panels = std::max(result.max_panels, samples[i].panels);
    if (samples[i].density > samples[best].density) best = i;
  }
  result.tau_peak = taus[best];
  result.density_peak = samples[best].density;
  result.log_scale = samples[best].log_scale;
  if (best == 0 || best + 1 == samples.size()) {
    result.window_hit = true;
    result.density_peak *= norm;
    return result;
  }
  // argmax is a local maximum of the three grid points around it
  auto density = [&](double tau) {
    const WaveSample s = synthesize(spec, params, 0.0, tau, settings);
    result.max_panels = std::max(result.max_panels, s.panels);
    ++result.refine_steps;
    return s.density;
  };

  constexpr double inv_phi = 0.6180339887498949;
  double lo = taus[best - 1];
  double hi = taus[best + 1];
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = density(c);
  double fd = density(d);
  while (hi - lo > config.refine_tol) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = density(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = density(d);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fmid = density(mid);
  if (fmid >= result.density_peak) {
    result.tau_peak = mid;
    result.density_peak = fmid;
  }
  result.density_peak *= norm;
  return result;
}

PhaseTimeReport full_report(const Spectrum& spec, const DimensionlessParams& params,
                            const PeakSearchConfig& config, const QuadratureSettings& settings,
                            PeakResult* peak_out) {
  const PeakResult peak = peak_arrival(spec, params, config, settings);
  if (peak_out) *peak_out = peak;
  if (peak.window_hit) {
    std::ostringstream msg;
    msg << "density maximum on the edge of the search window [" << config.tau_min << ", "
        << config.tau_max << "] at tau = " << peak.tau_peak << "; widen the window";
    throw PeakWindowError(msg.str());
  }
  PhaseTimeReport report;
  report.tau_numeric = peak.tau_peak;
  report.tau_new = phase_time_new(moments_paper(params), params);
  if (params.a() > 0.0) report.tau_spm = phase_time_spm(params, 1.0, SpmForm::opaque);
  report.v_transit = transit_velocity(report.tau_numeric, params);
  report.ratio_ana_num = transit_velocity(report.tau_new, params) / report.v_transit;
  return report;
}

}  // namespace tunnel
