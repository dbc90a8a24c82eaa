#pragma once

#include <span>
#include <vector>

#include "tunnel/phasetime.hpp"
#include "tunnel/quadrature.hpp"
#include "tunnel/spectrum.hpp"
#include "tunnel/wavepacket.hpp"

namespace tunnel {

struct PeakSearchConfig {
  double tau_min = 0.0;
  double tau_max = 0.0;
  int coarse_points = 256;
  double refine_tol = 1e-6;

  void validate() const;
};

/// Window [0.1 tau_new, 5 tau_new + 10] around the analytic estimate;
/// [0, 10] for a zero-width barrier where no estimate exists.
PeakSearchConfig default_search_config(const DimensionlessParams& params);

struct PeakResult {
  double tau_peak = 0.0;
  double density_peak = 0.0;  // in units of e^{-2 log_scale}
  double log_scale = 0.0;     // see WaveSample
  bool window_hit = false;  // argmax within one grid step of a window edge
  int refine_steps = 0;
  int max_panels = 0;  // largest quadrature panel count used by any evaluation
};

enum class Execution { parallel, serial };

/// Uniform grid of `coarse_points` times spanning the window.
std::vector<double> tau_grid(const PeakSearchConfig& config);

/// density_at_exit at every grid time, points distributed over OpenMP threads.
/// The first failure (in grid order) is rethrown after the loop.
std::vector<WaveSample> density_scan(const Spectrum& spec, const DimensionlessParams& params,
                                     std::span<const double> taus,
                                     const QuadratureSettings& settings = {});

/// Reference implementation of density_scan: a plain loop.
std::vector<WaveSample> density_scan_serial(const Spectrum& spec, const DimensionlessParams& params,
                                            std::span<const double> taus,
                                            const QuadratureSettings& settings = {});

/// Coarse scan, then golden-section refinement around the best grid point
/// until the bracket is narrower than refine_tol. A window hit is reported
/// in the result, not thrown.
PeakResult peak_arrival(const Spectrum& spec, const DimensionlessParams& params,
                        const PeakSearchConfig& config, const QuadratureSettings& settings = {},
                        Execution exec = Execution::parallel);

/// Numerical, new and standard phase times plus transit velocities.
/// Throws PeakWindowError when the maximum sits on the window edge.
PhaseTimeReport full_report(const Spectrum& spec, const DimensionlessParams& params,
                            const PeakSearchConfig& config, const QuadratureSettings& settings = {},
                            PeakResult* peak_out = nullptr);

}  // namespace tunnel
