#include "tunnel/units.hpp"

#include <cmath>
#include <string>

#include "tunnel/error.hpp"

namespace tunnel {

namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

PhysicalParams PhysicalParams::electron_ev(double barrier_height_ev, double energy_max_ev,
                                           double barrier_width_m) {
  return {constants::electron_mass_si, constants::hbar_si,
          barrier_height_ev * constants::electron_volt_si,
          energy_max_ev * constants::electron_volt_si, barrier_width_m};
}

DimensionlessParams DimensionlessParams::from_w(double w_ratio, double lambda) {
  if (!std::isfinite(w_ratio) || w_ratio < 1.0)
    throw DomainError("barrier strength W must be >= 1 (pure tunneling), got " +
                      std::to_string(w_ratio));
  if (!std::isfinite(lambda) || lambda < 0.0)
    throw DomainError("barrier width Lambda must be >= 0, got " + std::to_string(lambda));
  // (W-1)(W+1) keeps a accurate when W is close to 1.
  const double a = std::sqrt((w_ratio - 1.0) * (w_ratio + 1.0));
  return {w_ratio, lambda, a};
}

DimensionlessParams DimensionlessParams::from_a(double a, double lambda) {
  if (!std::isfinite(a) || a < 0.0)
    throw DomainError("q_M/k_M must be >= 0, got " + std::to_string(a));
  if (!std::isfinite(lambda) || lambda < 0.0)
    throw DomainError("barrier width Lambda must be >= 0, got " + std::to_string(lambda));
  return {std::hypot(1.0, a), lambda, a};
}

void validate(const PhysicalParams& phys) {
  if (!positive(phys.mass)) throw DomainError("mass must be positive");
  if (!positive(phys.hbar)) throw DomainError("hbar must be positive");
  if (!positive(phys.barrier_height)) throw DomainError("barrier height must be positive");
  if (!positive(phys.energy_max)) throw DomainError("maximum energy must be positive");
  if (!std::isfinite(phys.barrier_width) || phys.barrier_width < 0.0)
    throw DomainError("barrier width must be >= 0");
  if (phys.energy_max > phys.barrier_height)
    throw DomainError("maximum energy above the barrier height: only pure tunneling is supported");
}

DimensionlessParams normalize(const PhysicalParams& phys) {
  validate(phys);
  const double w_ratio = std::sqrt(phys.barrier_height / phys.energy_max);
  const double k_max = std::sqrt(2.0 * phys.mass * phys.energy_max) / phys.hbar;
  return DimensionlessParams::from_w(w_ratio, k_max * phys.barrier_width);
}

PhysicalParams denormalize(const DimensionlessParams& params, double mass, double hbar,
                           double barrier_height) {
  const double w = params.w_ratio();
  PhysicalParams phys{mass, hbar, barrier_height, barrier_height / (w * w), 0.0};
  validate(phys);
  const double k_max = std::sqrt(2.0 * mass * phys.energy_max) / hbar;
  phys.barrier_width = params.lambda() / k_max;
  return phys;
}

UnitScales unit_scales(const PhysicalParams& phys) {
  validate(phys);
  const double v0 = phys.barrier_height;
  return {phys.hbar / std::sqrt(2.0 * phys.mass * v0), phys.hbar / v0,
          std::sqrt(v0 / (2.0 * phys.mass))};
}

}  // namespace tunnel
