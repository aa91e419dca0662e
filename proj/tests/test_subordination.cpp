#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cube_spectral/errors.hpp"
#include "cube_spectral/subordination.hpp"
#include "oracles.hpp"

using namespace cube_spectral;

TEST_CASE("gamma = 1/2 matches the Levy closed form") {
  const StableDensityEvaluator ev(0.5);
  CHECK(std::abs(ev.density(1.0) - oracle::kLevyAtOne) <= 1e-10);
  CHECK(std::abs(oracle::levy_density(1.0) - oracle::kLevyAtOne) <= 1e-15);
  double worst = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double tau = 0.05 * std::pow(2000.0, i / 200.0);
    worst = std::max(worst, std::abs(ev.density(tau) - oracle::levy_density(tau)));
  }
  CHECK(worst <= 1e-7);
}

TEST_CASE("density vanishes on the nonpositive half-line") {
  for (double g : {0.3, 0.7}) {
    const StableDensityEvaluator ev(g);
    CHECK(ev.density(-1.0) == 0.0);
    CHECK(ev.density(0.0) == 0.0);
  }
}

TEST_CASE("density agrees with frozen high-precision Zolotarev values") {
  for (const auto& pt : oracle::frozen_densities()) {
    const StableDensityEvaluator ev(pt.gamma);
    CAPTURE(pt.gamma);
    CAPTURE(pt.tau);
    CHECK(std::abs(ev.density(pt.tau) - pt.value) <= 1e-10 * std::max(1.0, pt.value));
  }
}

TEST_CASE("density agrees with a tanh-sinh Zolotarev oracle") {
  for (double g : {0.3, 0.5, 0.7, 0.9}) {
    const StableDensityEvaluator ev(g);
    for (double tau : {0.3, 2.0, 40.0}) {
      CAPTURE(g);
      CAPTURE(tau);
      CHECK(std::abs(ev.density(tau) - oracle::zolotarev_density(g, tau)) <= 1e-9);
    }
  }
}

TEST_CASE("refined oscillatory quadrature is stable at gamma = 0.7, tau = 2") {
  const StableDensityEvaluator ev(0.7);
  const double coarse = ev.density(2.0);
  const double fine = ev.oscillatory_density(2.0, ev.quad_tol() / 10.0);
  CHECK(std::abs(coarse - fine) <= 1e-8);
}

TEST_CASE("large-tau series matches the oscillatory integral where both apply") {
  for (double g : {0.3, 0.5, 0.9}) {
    const StableDensityEvaluator ev(g);
    for (double tau : {200.0, 900.0}) {
      CHECK(std::abs(ev.series_density(tau) - ev.oscillatory_density(tau, 1e-13)) <= 1e-12);
    }
  }
}

TEST_CASE("tail constant") {
  for (double g : {0.3, 0.5, 0.7, 0.9}) {
    CHECK(tail_constant(g) == doctest::Approx(oracle::tail_constant(g)).epsilon(1e-10));
  }
  CHECK(std::abs(2.0 * std::sqrt(std::numbers::pi) - 1.0 / tail_constant(0.5)) <= 1e-8);
  CHECK(tail_constant(0.5) == doctest::Approx(0.2820948).epsilon(1e-7));
}

TEST_CASE("tail ratio approaches one") {
  // At gamma = 0.3 the second series term still contributes about 7% at
  // tau = 1e3; the 2% band is reached only near tau = 1e5.
  for (double g : {0.5, 0.7, 0.9}) {
    const StableDensityEvaluator ev(g);
    const double ratio = std::pow(1e3, 1.0 + g) * ev.density(1e3) / ev.tail_constant();
    CHECK(std::abs(ratio - 1.0) <= 0.02);
  }
  const StableDensityEvaluator slow(0.3);
  const double ratio3 = std::pow(1e3, 1.3) * slow.density(1e3) / slow.tail_constant();
  const double second_order = std::tgamma(1.6) * std::sin(0.6 * std::numbers::pi) /
                              (2.0 * std::tgamma(1.3) * std::sin(0.3 * std::numbers::pi)) *
                              std::pow(1e3, -0.3);
  CHECK(ratio3 == doctest::Approx(1.0 - second_order).epsilon(2e-3));
  CHECK(std::abs(std::pow(1e5, 1.3) * slow.density(1e5) / slow.tail_constant() - 1.0) <= 0.02);
}

TEST_CASE("subordination identity") {
  const std::vector<double> grid = {0.0, 0.1, 1.0, 10.0, 50.0};
  for (double g : {0.3, 0.5}) {
    const StableDensityEvaluator ev(g);
    const VerificationReport r = verify_subordination(ev, grid);
    CHECK(r.pass);
    CHECK(r.measured <= 1e-6);
  }
  const StableDensityEvaluator half(0.5);
  CHECK(std::abs(half.laplace_transform(1.0) - std::exp(-1.0)) <= 1e-6);
  CHECK(std::abs(half.laplace_transform(0.0) - 1.0) <= 1e-6);
}

TEST_CASE("R0, t0 and nonnegativity") {
  for (double g : {0.3, 0.5, 0.7, 0.9}) {
    const StableDensityEvaluator ev(g);
    CHECK(ev.r0() > 10.0);
    CHECK(ev.r0() >= kR0Floor);
    CHECK(ev.t0() == doctest::Approx(std::pow(ev.r0(), -g)));
    for (int i = 0; i <= 120; ++i) {
      const double tau = 1e-2 * std::pow(1e6, i / 120.0);
      CHECK(ev.density(tau) >= -1e-9);
    }
  }
  const StableDensityEvaluator half(0.5);
  CHECK(half.r0() == 16.0);
  CHECK(half.t0() == doctest::Approx(0.25));
  const StableDensityEvaluator seven(0.7);
  for (int i = 0; i <= 200; ++i) {
    const double tau = 16.0 * std::pow(1e5, i / 200.0);
    CHECK(std::pow(tau, 1.7) * seven.density(tau) >= 0.5 * seven.tail_constant());
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(StableDensityEvaluator(1.0), InvalidParameter);
  CHECK_THROWS_AS(StableDensityEvaluator(0.0), InvalidParameter);
  const StableDensityEvaluator ev(0.5);
  CHECK_THROWS_AS(ev.laplace_transform(-1.0), InvalidParameter);
}
