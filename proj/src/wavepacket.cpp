#include "tunnel/wavepacket.hpp"

#include <cmath>
#include <numbers>

#include "tunnel/error.hpp"
#include "tunnel/transmission.hpp"

namespace tunnel {

namespace {

constexpr double kScaleAbove = 200.0;

}  // namespace

int initial_panels(double time, double position) {
  const double cycles = (std::abs(time) + std::abs(position)) / (2.0 * std::numbers::pi);
  return static_cast<int>(std::ceil(4.0 * (1.0 + cycles)));
}

WaveSample synthesize(const Spectrum& spec, const DimensionlessParams& params, double position,
                      double time, const QuadratureSettings& settings) {
  if (!(position >= 0.0)) throw DomainError("wave packet is only synthesized after the barrier (x >= L)");
  if (!std::isfinite(time)) throw DomainError("time must be finite");

  // e^{-a Lambda} is only factored out where it would otherwise underflow.
  const double shift = transmitted_log_scale(params) > kScaleAbove ? transmitted_log_scale(params) : 0.0;
  auto integrand = [&](double kappa) -> std::complex<double> {
    if (kappa <= 0.0) return {};
    const double g = evaluate(spec, kappa);
    if (g == 0.0) return {};
    const TransmissionValue t = amplitude(kappa, params);
    const double mod = shift == 0.0 ? t.modulus : std::exp(t.log_modulus + shift);
    return std::polar(g * mod, t.phase + kappa * position - kappa * kappa * time);
  };

  const auto pts = kappa_breakpoints(params, initial_panels(time, position));
  const auto r = integrate_adaptive(integrand, pts, settings);
  require_converged(r, "transmitted wave packet");

  WaveSample out;
  out.position = position;
  out.time = time;
  out.amplitude = r.value;
  out.density = std::norm(r.value);
  out.log_scale = shift;
  out.panels = r.panels;
  return out;
}

double density_at_exit(const Spectrum& spec, const DimensionlessParams& params, double time,
                       const QuadratureSettings& settings) {
  const WaveSample s = synthesize(spec, params, 0.0, time, settings);
  return s.log_scale == 0.0 ? s.density : s.density * std::exp(-2.0 * s.log_scale);
}

}  // namespace tunnel
