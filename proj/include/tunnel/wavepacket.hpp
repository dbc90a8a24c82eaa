#pragma once

#include <complex>

#include "tunnel/quadrature.hpp"
#include "tunnel/spectrum.hpp"
#include "tunnel/units.hpp"

namespace tunnel {

/// Transmitted packet sampled after the barrier. `position` is k_M (x - L),
/// `time` is tau = E_M t / hbar.
///
/// For wide, strong barriers the whole packet carries e^{-a Lambda}. When that
/// would underflow, `amplitude` and `density` are reported multiplied by
/// e^{log_scale} and e^{2 log_scale}; `log_scale` is 0 otherwise.
struct WaveSample {
  double position = 0.0;
  double time = 0.0;
  std::complex<double> amplitude{};
  double density = 0.0;
  double log_scale = 0.0;
  int panels = 0;  // quadrature panels used
};

/// Uniform panel count before refinement, ceil(4 (1 + |tau| / 2 pi)), so the
/// e^{-i kappa^2 tau} chirp stays resolved. Away from the exit the
/// e^{i kappa x} oscillations add x / 2 pi.
int initial_panels(double time, double position = 0.0);

/// Phi_T(x, t) = int_0^1 dkappa g |T| e^{i phi} e^{i (kappa x - kappa^2 tau)} with the
/// exact amplitude. Throws DomainError for position < 0 and ConvergenceError
/// when the panel budget is exhausted.
WaveSample synthesize(const Spectrum& spec, const DimensionlessParams& params, double position,
                      double time, const QuadratureSettings& settings = {});

/// |Phi_T(L, t)|^2, unscaled (may underflow to 0 when a Lambda is large).
double density_at_exit(const Spectrum& spec, const DimensionlessParams& params, double time,
                       const QuadratureSettings& settings = {});

}  // namespace tunnel
