#pragma once

// Reference computations that share no code path with the library: direct
// O(4^n) sums, closed forms, and values frozen from 40-digit mpmath runs.

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace oracle {

inline int chi(std::uint32_t s, std::uint32_t m) { return (std::popcount(s & m) & 1) ? -1 : 1; }

/// a_S = 2^{-n} sum_x f(x) x^S by the definition.
inline std::vector<double> direct_fourier(const std::vector<double>& f) {
  const std::size_t size = f.size();
  std::vector<double> a(size, 0.0);
  for (std::size_t s = 0; s < size; ++s) {
    double acc = 0.0;
    for (std::size_t x = 0; x < size; ++x) acc += f[x] * chi(s, x);
    a[s] = acc / static_cast<double>(size);
  }
  return a;
}

/// e^{t Lap} f through the product kernel prod_i (1 + e^{-t} x_i y_i).
inline std::vector<double> product_kernel_heat(const std::vector<double>& f, int n, double t) {
  const double e = std::exp(-t);
  const std::size_t size = f.size();
  std::vector<double> out(size, 0.0);
  for (std::size_t x = 0; x < size; ++x) {
    double acc = 0.0;
    for (std::size_t y = 0; y < size; ++y) {
      const int differ = std::popcount(static_cast<std::uint32_t>(x ^ y));
      acc += std::pow(1.0 - e, differ) * std::pow(1.0 + e, n - differ) * f[y];
    }
    out[x] = acc / static_cast<double>(size);
  }
  return out;
}

/// p_{1/2}(tau) = (2 sqrt(pi))^{-1} tau^{-3/2} e^{-1/(4 tau)}.
inline double levy_density(double tau) {
  return std::exp(-0.25 / tau) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(tau, 1.5));
}

/// gamma / Gamma(1 - gamma).
inline double tail_constant(double gamma) { return gamma / boost::math::tgamma(1.0 - gamma); }

/// Zolotarev's non-oscillatory integral for the one-sided stable density.
inline double zolotarev_density(double gamma, double x) {
  const double g = gamma;
  auto a = [g](double phi) {
    return std::pow(std::sin(g * phi) / std::sin(phi), 1.0 / (1.0 - g)) * std::sin((1.0 - g) * phi) /
           std::sin(g * phi);
  };
  const double c = std::pow(x, -g / (1.0 - g));
  boost::math::quadrature::tanh_sinh<double> ts;
  auto body = [&](double phi) {
    const double v = a(phi);
    return v * std::exp(-c * v);
  };
  const double integral = ts.integrate(body, 0.0, std::numbers::pi);
  return (g / (1.0 - g)) / std::numbers::pi * std::pow(x, -1.0 / (1.0 - g)) * integral;
}

// 40-digit mpmath values of the Zolotarev integral.
struct DensityPoint {
  double gamma, tau, value;
};
inline const std::vector<DensityPoint>& frozen_densities() {
  static const std::vector<DensityPoint> pts = {
      {0.3, 0.1, 1.0123705088895965},     {0.3, 1.0, 0.11715700256591615},
      {0.3, 10.0, 0.0084281850892109243}, {0.3, 1000.0, 2.6985631606545011e-5},
      {0.7, 0.1, 3.6217366071389732e-11}, {0.7, 1.0, 0.38739501014659244},
      {0.7, 10.0, 0.005439051298157178},  {0.7, 1000.0, 1.8705372559132149e-6},
      {0.9, 1.0, 0.90733207105914411},    {0.9, 10.0, 0.0014799762318781858},
      {0.9, 1000.0, 1.8938225667427021e-7},
  };
  return pts;
}

/// p_{1/2}(1) from the closed form.
inline constexpr double kLevyAtOne = 0.2196956447338612;

/// (1/2) int (1 - (1 - e^{-2 tau})^{n/2}) p_{1/2}(tau) dtau at t = 1, mpmath.
inline constexpr double kFractionalBound1e4 = 0.36926521487146146;
inline constexpr double kFractionalBound1e6 = 0.39319943108687877;

/// Binomial sum for delta pairs, mpmath: n = 101, t = 1/2.
inline constexpr double kExactHeat101Half = 0.99999999999113636;

}  // namespace oracle
