#pragma once

#include <array>
#include <optional>

#include "tunnel/quadrature.hpp"
#include "tunnel/units.hpp"

namespace tunnel {

enum class MomentMode { exact, closed_form };

/// s(n) = int_0^R (rho + a)^2 rho^n e^{-rho Lambda} drho for n = 0..4, with
/// rho = (q - q_M)/k_M. The closed form takes R -> infinity; the exact mode
/// integrates up to R = W - a.
struct MomentTable {
  std::array<double, 5> s{};
  MomentMode mode = MomentMode::closed_form;
  double a = 0.0;
  double lambda = 0.0;
  double w_ratio = 1.0;
  double upper_limit = 0.0;  // infinity for the closed form

  double operator[](int n) const { return s.at(static_cast<std::size_t>(n)); }

  // Gram-type combinations entering S(t); all three are negative.
  double a_term() const { return s[1] * s[1] - s[0] * s[2]; }  // s1^2 - s0 s2
  double b_term() const { return s[1] * s[2] - s[0] * s[3]; }  // s1 s2 - s0 s3
  double c_term() const { return s[2] * s[2] - s[0] * s[4]; }  // s2^2 - s0 s4
};

/// Phase coefficients of the exit density model at time tau:
/// alpha = 2 (a tau - 1), beta = tau - a.
struct SCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
};

struct PhaseTimeReport {
  std::optional<double> tau_spm;  // empty when a = 0 (formula diverges)
  double tau_new = 0.0;
  double tau_numeric = 0.0;
  double v_transit = 0.0;      // sqrt(V0/2m), from tau_numeric
  double ratio_ana_num = 0.0;  // v(tau_new) / v(tau_numeric)
};

MomentTable moments_paper(const DimensionlessParams& params);

/// Finite-range moments by adaptive quadrature (rel_tol 1e-10 unless tighter).
MomentTable moments_exact(const DimensionlessParams& params, const QuadratureSettings& settings = {});

enum class SpmForm {
  opaque,  // tau = k_M / q_M
  full,    // stationary_time_full at the transmitted mean wavenumber
};

/// Standard stationary-phase time. The opaque form throws DivergenceError at a = 0.
double phase_time_spm(const DimensionlessParams& params, double kappa_bar,
                      SpmForm form = SpmForm::opaque);

enum class NewTimeForm {
  stationary_point,  // exact vertex of the quadratic s_of_t
  reduced,           // same ratio without the a (s2^2 - s0 s4) numerator term
};

/// Peak time of the quadratic exit-density model, from its closed-form vertex.
/// Throws NumericalError on a vanishing denominator or a non-positive result.
double phase_time_new(const MomentTable& moments, const DimensionlessParams& params,
                      NewTimeForm form = NewTimeForm::stationary_point);

SCoefficients s_coefficients(const DimensionlessParams& params, double tau);

/// S(tau) = s0^2 + alpha^2 A + 2 alpha beta B + beta^2 C. This is the
/// truncated expansion, so it turns negative far from the peak.
double s_of_t(const MomentTable& moments, const DimensionlessParams& params, double tau);

/// Lambda / (tau W), i.e. L/t in units sqrt(V0 / 2m).
double transit_velocity(double tau, const DimensionlessParams& params);

/// Expansions around the cutoff in rho = (q - q_M)/k_M:
///   phi = phi_M + phi1 rho + phi2 rho^2,   E/E_M = 1 + e1 rho + e2 rho^2.
struct ExpansionCoefficients {
  double phi_cutoff = 0.0;
  double phi_linear = -2.0;
  double phi_quadratic = 0.0;  // -a
  double energy_constant = 1.0;
  double energy_linear = 0.0;  // -2a
  double energy_quadratic = -1.0;

  double phase(double rho) const { return phi_cutoff + (phi_linear + phi_quadratic * rho) * rho; }
  double energy(double rho) const {
    return energy_constant + (energy_linear + energy_quadratic * rho) * rho;
  }
};

ExpansionCoefficients expansion_coefficients(const DimensionlessParams& params);

}  // namespace tunnel
