#include "tunnel/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tunnel/error.hpp"
#include "tunnel/transmission.hpp"

namespace tunnel {

Spectrum::Spectrum(double kappa0, double delta, double scale)
    : kappa0_(kappa0), delta_(delta), scale_(scale) {
  if (!(kappa0 > 0.0 && kappa0 < 1.0))
    throw DomainError("spectrum centre kappa0 must lie in (0, 1), got " + std::to_string(kappa0));
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw DomainError("spectrum localization delta must be positive");
  if (!(scale >= 0.0) || !std::isfinite(scale))
    throw DomainError("spectrum scale must be >= 0");
}

double evaluate(const Spectrum& spec, double kappa) {
  if (!(kappa >= 0.0 && kappa <= Spectrum::cutoff())) return 0.0;
  const double u = (kappa - spec.kappa0()) * spec.delta();
  return spec.scale() * std::exp(-0.25 * u * u);
}

double transmitted_log_scale(const DimensionlessParams& params) {
  return params.a() * params.lambda();
}

double transmitted_edge_width(const DimensionlessParams& params) {
  const double lambda = params.lambda();
  if (lambda <= 0.0) return std::numeric_limits<double>::infinity();
  // kappa_e^2 = W^2 - (a + 1/Lambda)^2 = 1 - 2a/Lambda - 1/Lambda^2
  const double drop = (2.0 * params.a() + 1.0 / lambda) / lambda;
  if (drop >= 1.0) return std::numeric_limits<double>::infinity();
  return drop / (1.0 + std::sqrt(1.0 - drop));
}

std::vector<double> kappa_breakpoints(const DimensionlessParams& params, int uniform_panels) {
  const int n = std::max(uniform_panels, 1);
  std::vector<double> pts;
  pts.reserve(static_cast<std::size_t>(n) + 24);
  for (int i = 0; i <= n; ++i) pts.push_back(static_cast<double>(i) / n);
  const double last = 1.0 / n;
  const double h = transmitted_edge_width(params);
  if (std::isfinite(h)) {
    for (double d = h / 256.0; d < last; d *= 2.0) pts.push_back(1.0 - d);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double transmitted_mean_k(const Spectrum& spec, const DimensionlessParams& params,
                          const QuadratureSettings& settings) {
  // The ratio is unchanged by the common factor e^{2 a Lambda}.
  const double shift = transmitted_log_scale(params);
  auto weight = [&](double kappa) {
    if (kappa <= 0.0) return 0.0;
    const double g = evaluate(spec, kappa);
    if (g == 0.0) return 0.0;
    const double log_t = amplitude(kappa, params).log_modulus + shift;
    return g * g * std::exp(2.0 * log_t);
  };
  const auto pts = kappa_breakpoints(params, 8);
  const auto den = integrate_adaptive(weight, pts, settings);
  require_converged(den, "transmitted mean momentum (denominator)");
  if (!(den.value > 0.0))
    throw NumericalError("transmitted mean momentum: vanishing denominator (degenerate spectrum)");
  const auto num =
      integrate_adaptive([&](double kappa) { return kappa * weight(kappa); }, pts, settings);
  require_converged(num, "transmitted mean momentum (numerator)");
  return num.value / den.value;
}

double mean_k_opaque(const DimensionlessParams& params) {
  if (!(params.lambda() > 0.0))
    throw DomainError("opaque mean momentum needs Lambda > 0");
  return 1.0 - params.a() / (2.0 * params.lambda());
}

}  // namespace tunnel
