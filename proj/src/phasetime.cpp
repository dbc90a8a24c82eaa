#include "tunnel/phasetime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "tunnel/error.hpp"
#include "tunnel/transmission.hpp"

namespace tunnel {

namespace {

void require_width(const DimensionlessParams& params) {
  if (!(params.lambda() > 0.0)) throw DomainError("moments diverge at Lambda = 0");
}

MomentTable table_for(const DimensionlessParams& params, MomentMode mode, double upper) {
  MomentTable t;
  t.mode = mode;
  t.a = params.a();
  t.lambda = params.lambda();
  t.w_ratio = params.w_ratio();
  t.upper_limit = upper;
  return t;
}

}  // namespace

MomentTable moments_paper(const DimensionlessParams& params) {
  require_width(params);
  MomentTable t =
      table_for(params, MomentMode::closed_form, std::numeric_limits<double>::infinity());
  const double lambda = params.lambda();
  const double al = params.a() * lambda;
  double fact = 2.0;  // (n+2)!
  double power = lambda * lambda * lambda;
  for (int n = 0; n < 5; ++n) {
    if (n > 0) {
      fact *= n + 2;
      power *= lambda;
    }
    const double m = n + 2.0;
    t.s[n] = fact / power * (1.0 + 2.0 * al / m + al * al / (m * (m - 1.0)));
  }
  return t;
}

MomentTable moments_exact(const DimensionlessParams& params, const QuadratureSettings& settings) {
  require_width(params);
  // W - a = 1 / (W + a) since W^2 - a^2 = 1
  const double upper = 1.0 / (params.w_ratio() + params.a());
  MomentTable t = table_for(params, MomentMode::exact, upper);
  const double lambda = params.lambda();
  const double a = params.a();

  QuadratureSettings qs = settings;
  qs.rel_tol = std::min(qs.rel_tol, 1e-10);

  // The integrand peaks near rho ~ (n+2)/Lambda; grade panels on that scale.
  std::vector<double> pts{0.0};
  for (double r = 0.5 / lambda; r < upper; r *= 2.0) pts.push_back(r);
  pts.push_back(upper);

  for (int n = 0; n < 5; ++n) {
    auto f = [&](double rho) {
      const double shifted = rho + a;
      return shifted * shifted * std::pow(rho, n) * std::exp(-rho * lambda);
    };
    const auto r = integrate_adaptive(f, pts, qs);
    require_converged(r, "moment s(" + std::to_string(n) + ")");
    t.s[n] = r.value;
  }
  return t;
}

double phase_time_spm(const DimensionlessParams& params, double kappa_bar, SpmForm form) {
  if (form == SpmForm::opaque) {
    if (params.a() == 0.0)
      throw DivergenceError("SPM formula undefined at E_M = V0 (q_M = 0)");
    return 1.0 / params.a();
  }
  return stationary_time_full(kappa_bar, params);
}

double phase_time_new(const MomentTable& moments, const DimensionlessParams& params,
                      NewTimeForm form) {
  const double a = params.a();
  const double w2 = params.w_ratio() * params.w_ratio();
  const double A = moments.a_term();
  const double B = moments.b_term();
  const double C = moments.c_term();
  double num = 2.0 * w2 * B + 4.0 * a * A;
  if (form == NewTimeForm::stationary_point) num += a * C;
  const double den = C + 4.0 * a * B + 4.0 * a * a * A;
  if (den == 0.0 || !std::isfinite(den))
    throw NumericalError("new phase time: vanishing denominator");
  const double tau = num / den;
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw NumericalError("new phase time: non-positive result " + std::to_string(tau));
  return tau;
}

SCoefficients s_coefficients(const DimensionlessParams& params, double tau) {
  const double a = params.a();
  return {2.0 * (a * tau - 1.0), tau - a};
}

double s_of_t(const MomentTable& moments, const DimensionlessParams& params, double tau) {
  const auto [alpha, beta] = s_coefficients(params, tau);
  const double s0 = moments.s[0];
  return s0 * s0 + alpha * alpha * moments.a_term() + 2.0 * alpha * beta * moments.b_term() +
         beta * beta * moments.c_term();
}

double transit_velocity(double tau, const DimensionlessParams& params) {
  if (!(tau > 0.0)) throw DomainError("transit velocity needs a positive time");
  return params.lambda() / (tau * params.w_ratio());
}

ExpansionCoefficients expansion_coefficients(const DimensionlessParams& params) {
  const double a = params.a();
  ExpansionCoefficients c;
  c.phi_cutoff = amplitude(1.0, params).phase;
  c.phi_linear = -2.0;
  c.phi_quadratic = -a;
  c.energy_constant = 1.0;
  c.energy_linear = -2.0 * a;
  c.energy_quadratic = -1.0;
  return c;
}

}  // namespace tunnel
