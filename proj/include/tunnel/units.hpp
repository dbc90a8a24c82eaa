#pragma once

// Dimensionless parameterization of a rectangular barrier crossed by a
// wave packet whose momentum spectrum is cut off at k_M.
//
//   W = w / k_M = sqrt(V0 / E_M)          barrier strength, >= 1
//   Lambda = k_M L                         barrier width
//   a = q_M / k_M = sqrt(W^2 - 1)          evanescent rate at the cutoff
//
// Wavenumbers are carried as kappa = k / k_M in (0, 1] and times as
// tau = E_M t / hbar. Physical units only appear at the CLI boundary.

namespace tunnel {

/// SI values: kg, J s, J, J, m.
struct PhysicalParams {
  double mass = 0.0;
  double hbar = 0.0;
  double barrier_height = 0.0;  // V0
  double energy_max = 0.0;      // E_M
  double barrier_width = 0.0;   // L

  /// Electron with energies in eV and width in metres.
  static PhysicalParams electron_ev(double barrier_height_ev, double energy_max_ev,
                                    double barrier_width_m);
};

class DimensionlessParams {
 public:
  /// Throws DomainError unless W >= 1 and Lambda >= 0 (both finite).
  static DimensionlessParams from_w(double w_ratio, double lambda);
  /// Builds from a = q_M/k_M directly; W = sqrt(1 + a^2).
  static DimensionlessParams from_a(double a, double lambda);

  double w_ratio() const { return w_; }
  double lambda() const { return lambda_; }
  double a() const { return a_; }

 private:
  DimensionlessParams(double w, double lambda, double a) : w_(w), lambda_(lambda), a_(a) {}

  double w_;
  double lambda_;
  double a_;
};

/// Scale factors of the table units, in SI.
struct UnitScales {
  double length_unit = 0.0;    // hbar / sqrt(2 m V0)       [m]
  double time_unit = 0.0;      // hbar / V0                 [s]
  double velocity_unit = 0.0;  // sqrt(V0 / 2 m)            [m/s]
};

namespace constants {
inline constexpr double hbar_si = 1.054571817e-34;         // J s
inline constexpr double electron_mass_si = 9.1093837015e-31;  // kg
inline constexpr double electron_volt_si = 1.602176634e-19;   // J
inline constexpr double speed_of_light_si = 299792458.0;      // m/s
inline constexpr double angstrom_si = 1e-10;                  // m
}  // namespace constants

void validate(const PhysicalParams& phys);

/// Throws DomainError for invalid input, including E_M > V0.
DimensionlessParams normalize(const PhysicalParams& phys);

/// Inverse of normalize given the particle, hbar and barrier height.
PhysicalParams denormalize(const DimensionlessParams& params, double mass, double hbar,
                           double barrier_height);

UnitScales unit_scales(const PhysicalParams& phys);

}  // namespace tunnel
