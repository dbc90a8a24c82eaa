#include "tunnel/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tunnel/error.hpp"

namespace tunnel {

void QuadratureSettings::validate() const {
  if (nodes_per_panel < 8) throw DomainError("quadrature needs at least 8 nodes per panel");
  if (max_panels < 1) throw DomainError("quadrature needs max_panels >= 1");
  if (!(rel_tol > 0.0)) throw DomainError("quadrature rel_tol must be positive");
}

GaussLegendreRule::GaussLegendreRule(int n) : nodes_(n), weights_(n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs n >= 1");
  // Newton iteration on P_n from the Tricomi initial guesses; symmetric pairs.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes_[i] = -x;
    nodes_[n - 1 - i] = x;
    weights_[i] = w;
    weights_[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes_[n / 2] = 0.0;
}

void require_converged(bool converged, int panels, double error, double scale,
                       const std::string& what) {
  if (converged) return;
  std::ostringstream msg;
  msg << what << ": quadrature did not converge (panels=" << panels << ", error=" << error
      << ", scale=" << scale << ")";
  throw ConvergenceError(msg.str());
}

}  // namespace tunnel
