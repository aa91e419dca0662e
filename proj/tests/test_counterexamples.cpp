#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cube_spectral/counterexamples.hpp"
#include "cube_spectral/errors.hpp"
#include "oracles.hpp"

using namespace cube_spectral;

namespace {

double brute_heat_l1(int n, double t) {
  const CubeFunction f = delta_pair(n);
  const std::vector<double> v(f.values().begin(), f.values().end());
  double acc = 0.0;
  for (double x : oracle::product_kernel_heat(v, n, t)) acc += std::abs(x);
  return acc / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("delta pair") {
  const CubeFunction f = delta_pair(3);
  CHECK(f[0] == 4.0);
  CHECK(f[7] == -4.0);
  for (Mask m = 1; m < 7; ++m) CHECK(f[m] == 0.0);
  CHECK(lp_norm(f, 1.0) == doctest::Approx(1.0));
  CHECK(expectation(f) == 0.0);
  const Spectrum a = fwht(delta_pair(5));
  for (Mask s = 0; s < 32; ++s) CHECK(a[s] == doctest::Approx((std::popcount(s) % 2) ? 1.0 : 0.0));
  CHECK_THROWS_AS(delta_pair(0), InvalidParameter);
  CHECK_THROWS_AS(delta_pair(21), InvalidParameter);
}

TEST_CASE("exact heat norm of the delta pair") {
  CHECK(exact_heat_l1(1, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(exact_heat_l1(2, std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
  for (int n : {3, 6, 9, 10}) {
    for (double t : {0.1, 0.7, 2.0}) {
      CAPTURE(n);
      const double b = brute_heat_l1(n, t);
      CHECK(std::abs(exact_heat_l1(n, t) - b) <= 1e-12);
      CHECK(std::abs(heat_l1_sum(n, std::exp(-t)) - b) <= 1e-12);
    }
  }
  CHECK(exact_heat_l1(101, 0.5) == doctest::Approx(oracle::kExactHeat101Half).epsilon(1e-14));
  CHECK(std::abs(heat_l1_sum(101, std::exp(-0.5)) - oracle::kExactHeat101Half) <= 1e-12);
  double prev = 0.0;
  for (int n = 1; n <= 201; n += 20) {
    const double v = exact_heat_l1(n, 1.0);
    CHECK(v >= prev - 1e-15);
    CHECK(v <= 1.0);
    prev = v;
  }
  CHECK_THROWS_AS(exact_heat_l1(0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(exact_heat_l1(4, -1.0), InvalidParameter);
}

TEST_CASE("almost-1 lower bound") {
  CHECK(almost1_bound(10, 0.5, true) == doctest::Approx(0.5 * (1 - std::pow(0.75, 5))));
  CHECK(almost1_bound(10, 0.5, true) == doctest::Approx(0.38135).epsilon(1e-4));
  CHECK_THROWS_AS(almost1_bound(10, 0.5), InvalidParameter);
  for (int n : {51, 301, 2001}) {
    const double eps = 1.0 / std::sqrt(static_cast<double>(n));
    CHECK(exact_heat_l1(n, -std::log(eps)) >= almost1_bound(n, eps) - 1e-12);
  }
}

TEST_CASE("fractional delta pair, gamma = 1/2") {
  const StableDensityEvaluator ev(0.5);
  CHECK(fractional_l1_bound(1e4, 1.0, ev) == doctest::Approx(oracle::kFractionalBound1e4).epsilon(1e-9));
  CHECK(fractional_l1_bound(1e6, 1.0, ev) == doctest::Approx(oracle::kFractionalBound1e6).epsilon(1e-9));
  // Norm integral against the closed-form Levy density.
  const double t = 1.0;
  for (int n : {3, 8}) {
    double ref = 0.0;
    const double h = 1e-3;
    // Midpoint rule on tau = u^{-2}: p(tau) dtau = 2 u^{-3} p(u^{-2}) du.
    for (double u = h / 2; u < 60.0; u += h) {
      const double tau = 1.0 / (u * u);
      ref += heat_l1_sum(n, std::exp(-tau * t * t)) * 2.0 / (u * u * u) * oracle::levy_density(tau) * h;
    }
    CHECK(fractional_l1_norm(n, t, ev) == doctest::Approx(ref).epsilon(1e-6));
  }
  const double norm = fractional_l1_norm(9999, t, ev);
  CHECK(norm >= fractional_l1_bound(9999.0, t, ev));
  CHECK(norm <= 1.0);
}

TEST_CASE("Gaussian polynomials") {
  const GaussianPolynomial cube({0.0, 3.0, 0.0, 1.0});
  const std::vector<double> mono = cube.monomial_coeffs();
  REQUIRE(mono.size() == 4);
  CHECK(mono[0] == doctest::Approx(0.0));
  CHECK(mono[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(mono[3] == doctest::Approx(1.0));
  CHECK(cube(2.0) == doctest::Approx(8.0));
  const double e_abs_cube = 2.0 * std::sqrt(2.0 / std::numbers::pi);
  CHECK(cube.l1_norm() == doctest::Approx(e_abs_cube).epsilon(1e-13));
  CHECK(cube.half_line_integral(1) == doctest::Approx(e_abs_cube / 2).epsilon(1e-13));
  CHECK(cube.half_line_sign(1) == 1);
  CHECK(cube.half_line_sign(-1) == -1);
  const GaussianPolynomial ou = cube.apply_ou();
  CHECK(ou(1.5) == doctest::Approx(6 * 1.5 - 3 * std::pow(1.5, 3)));
  const GaussianPolynomial h = cube.heat(0.2);
  CHECK(h(0.7) == doctest::Approx(3 * std::exp(-0.2) * 0.7 + std::exp(-0.6) * (std::pow(0.7, 3) - 3 * 0.7)));
  CHECK_THROWS_AS(GaussianPolynomial(std::vector<double>(18, 1.0)), InvalidInput);
}

TEST_CASE("OU flatness of x^3") {
  const OuFlatness r = gaussian_ou_flatness();
  CHECK(std::abs(r.integral) <= 1e-10);
  CHECK(r.defect_exponent == doctest::Approx(2.0).epsilon(0.05));
}
