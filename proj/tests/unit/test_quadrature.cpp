#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "tunnel/error.hpp"
#include "tunnel/quadrature.hpp"

using namespace tunnel;

TEST_CASE("Gauss-Legendre rule integrates polynomials of degree 2n-1 exactly") {
  for (int n : {8, 16, 32, 33}) {
    const GaussLegendreRule rule(n);
    const auto w = rule.weights();
    CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(2.0).epsilon(1e-14));
    for (int degree = 0; degree < 2 * n; ++degree) {
      auto mono = [degree](double x) { return std::pow(x, degree); };
      const double exact = degree % 2 ? 0.0 : 2.0 / (degree + 1);
      CHECK(rule.apply(mono, -1.0, 1.0) == doctest::Approx(exact).epsilon(1e-13));
    }
    const auto x = rule.nodes();
    for (int i = 1; i < n; ++i) CHECK(x[i] > x[i - 1]);
  }
}

TEST_CASE("adaptive integration of a smooth function") {
  QuadratureSettings s;
  const std::vector<double> pts{0.0, std::numbers::pi};
  const auto r = integrate_adaptive([](double x) { return std::sin(x); }, pts, s);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.panels == 1);
}

TEST_CASE("adaptive integration refines toward an endpoint singularity") {
  QuadratureSettings s;
  s.rel_tol = 1e-10;
  const std::vector<double> pts{0.0, 1.0};
  const auto r = integrate_adaptive([](double x) { return std::sqrt(x); }, pts, s);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(r.panels > 1);
}

TEST_CASE("adaptive integration of a sharp boundary layer and a chirp") {
  QuadratureSettings s;
  const std::vector<double> pts{0.0, 1.0};
  const auto layer = integrate_adaptive([](double x) { return std::exp(-1000.0 * x); }, pts, s);
  CHECK(layer.converged);
  CHECK(layer.value == doctest::Approx((1.0 - std::exp(-1000.0)) / 1000.0).epsilon(1e-9));

  // int_0^1 e^{-i 200 x} dx = (1 - e^{-200 i}) / (200 i)
  const auto chirp = integrate_adaptive(
      [](double x) { return std::polar(1.0, -200.0 * x); }, pts, s);
  const std::complex<double> exact = (1.0 - std::polar(1.0, -200.0)) / std::complex<double>(0, 200);
  CHECK(chirp.converged);
  CHECK(std::abs(chirp.value - exact) < 1e-9);
}

TEST_CASE("non-convergence is reported, not hidden") {
  QuadratureSettings s;
  s.max_panels = 2;
  s.rel_tol = 1e-14;
  const std::vector<double> pts{0.0, 1.0};
  const auto r = integrate_adaptive([](double x) { return std::sqrt(x); }, pts, s);
  CHECK_FALSE(r.converged);
  CHECK(r.panels == 2);
  CHECK_THROWS_AS(require_converged(r, "sqrt"), ConvergenceError);

  // more initial panels than allowed
  std::vector<double> many(10);
  std::iota(many.begin(), many.end(), 0.0);
  s.max_panels = 5;
  const auto over = integrate_adaptive([](double) { return 1.0; }, many, s);
  CHECK_FALSE(over.converged);
}

TEST_CASE("identically zero integrand converges immediately") {
  const std::vector<double> pts{0.0, 0.5, 1.0};
  const auto r = integrate_adaptive([](double) { return 0.0; }, pts, QuadratureSettings{});
  CHECK(r.converged);
  CHECK(r.value == 0.0);
}

TEST_CASE("settings validation") {
  QuadratureSettings s;
  s.nodes_per_panel = 7;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = {};
  s.rel_tol = 0.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s = {};
  s.max_panels = 0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  CHECK_NOTHROW(QuadratureSettings{}.validate());
}
