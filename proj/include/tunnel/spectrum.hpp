#pragma once

#include <vector>

#include "tunnel/quadrature.hpp"
#include "tunnel/units.hpp"

namespace tunnel {

/// Truncated Gaussian momentum weighting
///   g(kappa) = scale * exp(-(kappa - kappa0)^2 delta^2 / 4)  for 0 <= kappa <= 1
/// and zero elsewhere. delta = k_M d is the localization. `scale` plays the
/// role of the normalization N and is 1 unless a caller rescales the packet.
class Spectrum {
 public:
  /// Throws DomainError unless 0 < kappa0 < 1, delta > 0, scale >= 0.
  Spectrum(double kappa0, double delta, double scale = 1.0);

  /// kappa0 = 1/2, delta = 10.
  static Spectrum standard() { return Spectrum(0.5, 10.0); }

  double kappa0() const { return kappa0_; }
  double delta() const { return delta_; }
  double scale() const { return scale_; }
  static constexpr double cutoff() { return 1.0; }

  Spectrum scaled(double factor) const { return Spectrum(kappa0_, delta_, scale_ * factor); }

 private:
  double kappa0_;
  double delta_;
  double scale_;
};

/// g(kappa); exactly zero outside [0, 1].
double evaluate(const Spectrum& spec, double kappa);

/// Mean transmitted wavenumber <k>_T / k_M with weight g^2 |T|^2.
/// Throws NumericalError if the weight integrates to zero and
/// ConvergenceError if the quadrature stalls.
double transmitted_mean_k(const Spectrum& spec, const DimensionlessParams& params,
                          const QuadratureSettings& settings = {});

/// Opaque-limit filter-effect estimate 1 - a / (2 Lambda). Requires Lambda > 0.
double mean_k_opaque(const DimensionlessParams& params);

/// kappa-width of the transmitted edge below the cutoff: the distance from
/// kappa = 1 over which Lambda (q - q_M) grows by one. Infinite when the
/// barrier is too thin to filter.
double transmitted_edge_width(const DimensionlessParams& params);

/// Exponent a Lambda of the e^{-q_M L} suppression shared by every transmitted
/// component; integrals factor it out so wide barriers do not underflow.
double transmitted_log_scale(const DimensionlessParams& params);

/// Breakpoints on [0, 1]: `uniform_panels` equal panels plus a geometric
/// grading toward kappa = 1 down to 1/256 of the transmitted edge width.
std::vector<double> kappa_breakpoints(const DimensionlessParams& params, int uniform_panels);

}  // namespace tunnel
