#include "tunnel/transmission.hpp"

#include <cmath>
#include <string>

#include "tunnel/error.hpp"

namespace tunnel {

namespace {

constexpr double kSeriesBelow = 1e-4;
constexpr double kScaledAbove = 30.0;

void check_kappa(double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0))
    throw DomainError("kappa = k/k_M must lie in (0, 1], got " + std::to_string(kappa));
}

// sinh(x)/x and tanh(x)/x near zero.
double sinhc(double x) {
  if (x < kSeriesBelow) {
    const double x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

double tanhc(double x) {
  if (x < kSeriesBelow) {
    const double x2 = x * x;
    return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0;
  }
  return std::tanh(x) / x;
}

}  // namespace

double evanescent_ratio(double kappa, const DimensionlessParams& params) {
  const double w = params.w_ratio();
  const double d = (w - kappa) * (w + kappa);
  return d > 0.0 ? std::sqrt(d) : 0.0;
}

TransmissionValue amplitude(double kappa, const DimensionlessParams& params) {
  check_kappa(kappa);
  const double w = params.w_ratio();
  const double lambda = params.lambda();
  const double q = evanescent_ratio(kappa, params);
  const double x = q * lambda;
  // (2k^2 - w^2) / (2k), the q-free part of the mixing coefficient.
  const double c0 = (2.0 * kappa * kappa - w * w) / (2.0 * kappa);

  TransmissionValue out;
  out.kappa = kappa;
  out.phase = std::atan(c0 * lambda * tanhc(x));

  if (x > kScaledAbove) {
    // cosh x = e^x (1+e)/2, sinh x = e^x (1-e)/2 with e = e^{-2x}
    const double e = std::exp(-2.0 * x);
    const double ch = 0.5 * (1.0 + e);
    const double sh = 0.5 * (1.0 - e);
    const double mix = c0 / q;
    out.log_modulus = -x - 0.5 * std::log(ch * ch + mix * mix * sh * sh);
    out.modulus = std::exp(out.log_modulus);
  } else {
    const double ch = std::cosh(x);
    const double sh_over_q = lambda * sinhc(x);  // sinh(qL)/q
    const double mix = c0 * sh_over_q;
    out.modulus = 1.0 / std::sqrt(ch * ch + mix * mix);
    out.log_modulus = -0.5 * std::log(ch * ch + mix * mix);
  }
  return out;
}

double amplitude_opaque(double kappa, const DimensionlessParams& params) {
  check_kappa(kappa);
  const double w = params.w_ratio();
  const double q = evanescent_ratio(kappa, params);
  if (q == 0.0) return 0.0;
  return 4.0 * kappa * q * std::exp(-q * params.lambda()) / (w * w);
}

double stationary_time_full(double kappa, const DimensionlessParams& params) {
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  const double q = evanescent_ratio(kappa, params);
  if (!(kappa < params.w_ratio()) || q <= 0.0)
    throw DomainError("stationary phase time needs kappa < W (q > 0)");
  const double w2 = params.w_ratio() * params.w_ratio();
  const double w4 = w2 * w2;
  const double k2 = kappa * kappa;
  const double x = q * params.lambda();
  const double linear = 2.0 * k2 * (w2 - 2.0 * k2) * x;

  double num = 0.0;
  double den = 0.0;
  if (x > kScaledAbove) {
    // both brackets divided by e^{2x}/2
    const double e = std::exp(-2.0 * x);
    num = w4 * (1.0 - e * e) + 2.0 * linear * e;
    den = w4 * (1.0 + e * e) + 2.0 * (8.0 * k2 * q * q - w4) * e;
  } else {
    // w^4 (cosh 2x - 1) written as 2 w^4 sinh^2 x
    const double sh = std::sinh(x);
    num = w4 * std::sinh(2.0 * x) + linear;
    den = 2.0 * w4 * sh * sh + 8.0 * k2 * q * q;
  }
  // E t / hbar = kappa num / (q den) and E / E_M = kappa^2
  return num / (q * den * kappa);
}

}  // namespace tunnel
