#include <array>
#include <limits>
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "tunnel/error.hpp"
#include "tunnel/transmission.hpp"

using namespace tunnel;

namespace {

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

// Direct complex evaluation of 1 / [cosh(qL) - i c sinh(qL)], valid for
// moderate qL with q > 0. Independent of the library's series/scaled branches.
std::complex<double> direct(double kappa, double w, double lambda) {
  const double q = std::sqrt(w * w - kappa * kappa);
  const double c = (2.0 * kappa * kappa - w * w) / (2.0 * kappa * q);
  return 1.0 / std::complex<double>(std::cosh(q * lambda), -c * std::sinh(q * lambda));
}

}  // namespace

TEST_CASE("amplitude matches high-precision reference values") {
  // tests/oracles/reference_values.py, 50-digit evaluation of the closed form
  struct Ref {
    double kappa, w, lambda, modulus, phase;
  };
  const Ref refs[] = {
      {0.3, 1.1, 7, 0.00063636518700937259482, -1.0183427368249317154},
      {0.9, 1.0, 2, 0.62247657487975674725, 0.50663285442914650698},
      {0.99, 1.5, 40, 5.2621980366560852834e-20, -0.12915880505471737493},
      {1.0, 1.0, 100, 0.01999600119960013995, 1.5507989928217460862},
      {0.5, 1.0, 100, 4.2418491720993996075e-38, -0.52359877559829887308},
      {0.6, 1.2, 3, 0.076584106892135505155, -0.52190399817601831716},
  };
  for (const auto& r : refs) {
    const auto t = amplitude(r.kappa, DimensionlessParams::from_w(r.w, r.lambda));
    CHECK(rel(t.modulus, r.modulus) < 1e-12);
    CHECK(std::abs(t.phase - r.phase) < 1e-12);
    CHECK(t.kappa == r.kappa);
  }
}

TEST_CASE("zero-width barrier is transparent") {
  for (double w : {1.0, 1.3, 3.0})
    for (double kappa : {0.01, 0.5, 1.0}) {
      const auto t = amplitude(kappa, DimensionlessParams::from_w(w, 0.0));
      CHECK(t.modulus == 1.0);
      CHECK(t.phase == 0.0);
    }
}

TEST_CASE("phase vanishes at 2k^2 = w^2") {
  const double w = 1.2;
  const double kappa = w / std::sqrt(2.0);
  const auto t = amplitude(kappa, DimensionlessParams::from_w(w, 5.0));
  CHECK(std::abs(t.phase) < 1e-14);
  // 1/cosh(qL) with q = W/sqrt(2); reference 0.028733259185470823699
  CHECK(rel(t.modulus, 0.028733259185470823699) < 1e-12);
  CHECK(rel(t.modulus, 1.0 / std::cosh(kappa * 5.0)) < 1e-12);
}

TEST_CASE("q = 0 limit at kappa = W = 1") {
  const auto t = amplitude(1.0, DimensionlessParams::from_w(1.0, 100.0));
  CHECK(rel(t.modulus, 1.0 / std::sqrt(1.0 + 2500.0)) < 1e-14);
  CHECK(std::isfinite(t.phase));
  // cross-check against the direct formula just off the singular point, qL = 1e-6
  const double kappa = std::sqrt(1.0 - 1e-16);
  const auto near = direct(kappa, 1.0, 100.0);
  CHECK(rel(std::abs(near), t.modulus) < 1e-9);
}

TEST_CASE("series branch is continuous with the direct branch") {
  // qL straddling the 1e-4 switch and down to 1e-8
  const double lambda = 3.0;
  for (double x : {1e-8, 5e-5, 9.9e-5, 1.01e-4, 2e-4}) {
    const double q = x / lambda;
    const double kappa = std::sqrt(1.0 - q * q);
    const auto p = DimensionlessParams::from_w(1.0, lambda);
    const auto t = amplitude(kappa, p);
    const auto limit = amplitude(1.0, p);
    CHECK(rel(t.modulus, limit.modulus) < 1e-7);  // O((qL)^2) physical change
    if (x >= 1e-4) {
      const auto d = direct(kappa, 1.0, lambda);
      CHECK(rel(t.modulus, std::abs(d)) < 1e-10);
    }
  }
  const auto p = DimensionlessParams::from_w(1.0, 1.0);
  const double q = 1e-8;
  const auto at = amplitude(std::sqrt(1.0 - q * q), p);
  CHECK(rel(at.modulus, amplitude(1.0, p).modulus) < 1e-10);
}

TEST_CASE("exp-scaled branch agrees with the direct formula across qL = 30") {
  const double w = 1.3;
  for (double lambda : {25.0, 29.0, 31.0, 35.0}) {
    const double kappa = 0.7;
    const double q = std::sqrt(w * w - kappa * kappa);
    const auto t = amplitude(kappa, DimensionlessParams::from_w(w, lambda));
    CHECK(rel(t.modulus, std::abs(direct(kappa, w, lambda))) < 1e-12);
    CHECK(q * lambda > 20.0);
  }
  // far past cosh overflow
  const auto deep = amplitude(0.5, DimensionlessParams::from_w(2.0, 500.0));
  CHECK(deep.modulus >= 0.0);
  CHECK(std::isfinite(deep.phase));
}

TEST_CASE("amplitude rejects kappa outside (0, 1]") {
  const auto p = DimensionlessParams::from_w(1.0, 10.0);
  CHECK_THROWS_AS(amplitude(0.0, p), DomainError);
  CHECK_THROWS_AS(amplitude(-0.5, p), DomainError);
  CHECK_THROWS_AS(amplitude(1.0000001, p), DomainError);
  CHECK_THROWS_AS(amplitude_opaque(1.5, p), DomainError);
}

TEST_CASE("modulus is bounded, equals 1 only at zero width, and decreases with width") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double kappa = 1e-3 + (1.0 - 1e-3) * u(rng);
    const double w = 1.0 + 2.0 * u(rng);
    double previous = amplitude(kappa, DimensionlessParams::from_w(w, 0.0)).modulus;
    CHECK(previous == 1.0);
    for (double lambda = 0.05; lambda < 20.0; lambda *= 1.5) {
      const double m = amplitude(kappa, DimensionlessParams::from_w(w, lambda)).modulus;
      CHECK(m > 0.0);
      CHECK(m < 1.0);
      CHECK(m < previous);
      previous = m;
    }
  }
}

TEST_CASE("opaque modulus") {
  CHECK(amplitude_opaque(1.0, DimensionlessParams::from_w(1.0, 50.0)) == 0.0);
  const auto p = DimensionlessParams::from_w(1.0, 100.0);
  const double expected = 4.0 * 0.5 * std::sqrt(0.75) * std::exp(-100.0 * std::sqrt(0.75));
  CHECK(rel(amplitude_opaque(0.5, p), expected) < 1e-14);
  CHECK(rel(amplitude_opaque(0.5, p), amplitude(0.5, p).modulus) < 0.01);
}

TEST_CASE("opaque modulus within 1% of exact whenever qL >= 3") {
  int checked = 0;
  for (int i = 1; i <= 99; ++i) {
    const double kappa = 0.01 * i;
    for (double lambda : {5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0}) {
      for (double w : {1.0, 1.2, 1.5, 2.0}) {
        const auto p = DimensionlessParams::from_w(w, lambda);
        if (evanescent_ratio(kappa, p) * lambda < 3.0) continue;
        const double exact = amplitude(kappa, p).modulus;
        if (exact < std::numeric_limits<double>::min()) continue;  // subnormal or underflow
        CHECK(rel(amplitude_opaque(kappa, p), exact) <= 0.01);
        ++checked;
      }
    }
  }
  CHECK(checked > 2000);
}

TEST_CASE("stationary time: reference values") {
  // tests/oracles/reference_values.py
  CHECK(rel(stationary_time_full(1.0, DimensionlessParams::from_w(std::sqrt(2.0), 50.0)), 1.0) <
        1e-14);
  CHECK(rel(stationary_time_full(0.7, DimensionlessParams::from_w(1.3, 2.0)),
            1.300066077930952721537605) < 1e-13);
}

TEST_CASE("stationary time equals kappa phi'(kappa)/2 divided by kappa^2") {
  // E t / hbar = k phi'(k) / 2 for the stationary phase at the exit
  const std::array<std::array<double, 3>, 4> cases{
      {{0.5, 1.2, 3.0}, {0.9, 1.5, 2.0}, {0.3, 1.0, 0.7}, {0.8, 1.1, 6.0}}};
  for (const auto& [kappa, w, lambda] : cases) {
    const auto p = DimensionlessParams::from_w(w, lambda);
    const double h = 1e-6;
    const double dphi = (amplitude(kappa + h, p).phase - amplitude(kappa - h, p).phase) / (2 * h);
    const double expected = kappa * dphi / 2.0 / (kappa * kappa);
    CHECK(rel(stationary_time_full(kappa, p), expected) < 1e-8);
  }
}

TEST_CASE("stationary time: opaque limit and thin-barrier linearity") {
  // at kappa = 1 the opaque limit is k_M / q_M
  for (double a : {0.5, 1.0, 2.0}) {
    const auto p = DimensionlessParams::from_a(a, 200.0);
    CHECK(rel(stationary_time_full(1.0, p), 1.0 / a) < 1e-12);
  }
  // thin barrier: linear in Lambda
  const double t1 = stationary_time_full(0.5, DimensionlessParams::from_w(1.0, 1e-4));
  const double t2 = stationary_time_full(0.5, DimensionlessParams::from_w(1.0, 2e-4));
  CHECK(rel(t2, 2.0 * t1) < 1e-6);
  CHECK(stationary_time_full(0.5, DimensionlessParams::from_w(1.0, 0.0)) == 0.0);
}

// Leading correction is 2 e^{-2x} (e1 - e2) with e1 = 2k^2 (w^2 - 2k^2) x / w^4,
// |e1| <= 2x, and e2 = (8 k^2 q^2 - w^4) / w^4, |e2| <= 1.
TEST_CASE("stationary time approaches its opaque value at the expected rate") {
  for (double w : {1.0, 1.3, 2.0})
    for (int i = 1; i < 20; ++i) {
      const double kappa = 0.05 * i;
      for (double x = 5.0; x <= 15.0; x += 1.0) {
        const auto probe = DimensionlessParams::from_w(w, 1.0);
        const double q = evanescent_ratio(kappa, probe);
        const auto p = DimensionlessParams::from_w(w, x / q);
        const double opaque = 1.0 / (kappa * q);
        const double dev = rel(stationary_time_full(kappa, p), opaque);
        CHECK(dev <= (4.0 * x + 4.0) * std::exp(-2.0 * x) + 1e-15);
      }
    }
}

TEST_CASE("stationary time domain") {
  const auto p = DimensionlessParams::from_w(1.0, 10.0);
  CHECK_THROWS_AS(stationary_time_full(1.0, p), DomainError);  // q = 0
  CHECK_THROWS_AS(stationary_time_full(0.0, p), DomainError);
  CHECK(std::isfinite(stationary_time_full(0.5, DimensionlessParams::from_w(1.0, 600.0))));
}

TEST_CASE("log modulus stays finite where the modulus underflows") {
  const auto p = DimensionlessParams::from_w(2.0, 500.0);
  const TransmissionValue t = amplitude(0.5, p);
  CHECK(t.modulus == 0.0);
  CHECK(std::isfinite(t.log_modulus));
  CHECK(t.log_modulus == doctest::Approx(std::log(amplitude_opaque(0.5, DimensionlessParams::from_w(2.0, 5.0))) -
                                std::sqrt(3.75) * 495.0)
                             .epsilon(1e-12));
  const auto q = DimensionlessParams::from_w(1.2, 7.0);
  CHECK(amplitude(0.4, q).log_modulus == doctest::Approx(std::log(amplitude(0.4, q).modulus)).epsilon(1e-14));
}
