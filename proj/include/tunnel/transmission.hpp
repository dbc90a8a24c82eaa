#pragma once

#include "tunnel/units.hpp"

namespace tunnel {

/// T(k) = e^{-ikL} |T| e^{i phase}. The plane-wave factor -kL is not part of
/// `phase`; it belongs to the propagation term of the packet.
struct TransmissionValue {
  double modulus = 1.0;
  double log_modulus = 0.0;  // stays finite where modulus underflows
  double phase = 0.0;
  double kappa = 0.0;
};

/// Exact rectangular-barrier amplitude for 0 < kappa <= 1.
///
/// The removable singularity at q = 0 (kappa = W = 1) is handled by series
/// for qL < 1e-4, and the hyperbolic functions are exp-scaled for qL > 30 so
/// widths of several hundred k_M^-1 do not overflow.
TransmissionValue amplitude(double kappa, const DimensionlessParams& params);

/// Opaque-barrier modulus 4 k q e^{-qL} / w^2, zero at q = 0.
double amplitude_opaque(double kappa, const DimensionlessParams& params);

/// Time tau = E_M t / hbar at which the transmitted phase is stationary at the
/// barrier exit for a monochromatic component kappa (0 < kappa < W).
/// Tends to 1/(kappa q/k_M) for qL >> 1.
double stationary_time_full(double kappa, const DimensionlessParams& params);

/// q / k_M = sqrt(W^2 - kappa^2), evaluated without cancellation near kappa = W.
double evanescent_ratio(double kappa, const DimensionlessParams& params);

}  // namespace tunnel
