#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cube_spectral/errors.hpp"
#include "cube_spectral/quadrature.hpp"

using namespace cube_spectral;

TEST_CASE("adaptive Gauss-Kronrod on smooth and peaked integrands") {
  CHECK(quad::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value ==
        doctest::Approx(2.0).epsilon(1e-14));
  const double peaked = quad::integrate([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0).value;
  CHECK(peaked == doctest::Approx(2.0 / 1e-2 * std::atan(1.0 / 1e-2)).epsilon(1e-12));
  CHECK(quad::integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0).value ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("non-convergence surfaces as NumericFailure") {
  quad::Options opt;
  opt.max_intervals = 3;
  opt.abs_tol = 1e-15;
  opt.rel_tol = 1e-15;
  auto rough = [](double x) { return std::sin(1.0 / (x + 1e-3)); };
  CHECK_THROWS_AS(quad::integrate(rough, 0.0, 1.0, opt), NumericFailure);
  opt.throw_on_failure = false;
  CHECK_FALSE(quad::integrate(rough, 0.0, 1.0, opt).converged);
}

TEST_CASE("Wynn epsilon accelerates an alternating series") {
  quad::EpsilonAccelerator acc;
  double partial = 0.0;
  for (int k = 0; k < 20; ++k) {
    partial += (k % 2 == 0 ? 1.0 : -1.0) / (k + 1);
    acc.push(partial);
  }
  CHECK(acc.estimate() == doctest::Approx(std::numbers::ln2).epsilon(1e-12));
}

TEST_CASE("Gauss-Laguerre rules integrate polynomials exactly") {
  const auto [x, w] = quad::gauss_laguerre(16);
  double m0 = 0.0, m5 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    m0 += w[i];
    m5 += w[i] * std::pow(x[i], 5);
  }
  CHECK(m0 == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(m5 == doctest::Approx(120.0).epsilon(1e-12));

  // u^{-1/2} e^{-u}: moments Gamma(k + 1/2).
  const auto [y, v] = quad::gauss_laguerre(16, -0.5);
  double g0 = 0.0, g3 = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    g0 += v[i];
    g3 += v[i] * std::pow(y[i], 3);
  }
  CHECK(g0 == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
  CHECK(g3 == doctest::Approx(std::tgamma(3.5)).epsilon(1e-12));
}

TEST_CASE("minimize_scan finds an interior minimum") {
  const auto [x, fx] = quad::minimize_scan([](double t) { return (t - 0.3) * (t - 0.3) + 1.0; }, 0.0, 1.0);
  CHECK(x == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(fx == doctest::Approx(1.0).epsilon(1e-12));
}
