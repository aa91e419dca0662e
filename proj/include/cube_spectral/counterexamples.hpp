#pragma once

#include <vector>

#include "cube_spectral/cube.hpp"
#include "cube_spectral/subordination.hpp"

namespace cube_spectral {

/// f(1,...,1) = 2^{n-1}, f(-1,...,-1) = -2^{n-1}, zero elsewhere. n <= 20.
CubeFunction delta_pair(int n);

/// ||e^{t Lap} delta_pair(n)||_1 from the closed-form binomial sum
///   2^{-n} sum_{k <= n/2} C(n,k) [(1+e)^{n-k}(1-e)^k - (1-e)^{n-k}(1+e)^k],
/// e = exp(-t), evaluated with exact binomials and 50-digit arithmetic.
/// 1 <= n <= 10^4, t > 0.
double exact_heat_l1(int n, double t);

/// The same sum in double precision, term by term in the log domain. Every
/// term is nonnegative, so this route is well conditioned; it backs the
/// subordinated integral below where the sum is needed thousands of times.
double heat_l1_sum(int n, double eps);

/// (1/2)(1 - (1 - eps^2)^{n/2}), 0 < eps <= 1/2. Odd n unless allow_even.
double almost1_bound(int n, double eps, bool allow_even = false);

/// (1/2) int (1 - (1 - exp(-2 tau t^{1/g}))^{n/2}) p_g(tau) dtau.
double fractional_l1_bound(double n, double t, const StableDensityEvaluator& ev);

/// ||e^{t Lap_g} delta_pair(n)||_1 = int heat_l1_sum(n, exp(-tau t^{1/g})) p_g(tau) dtau.
double fractional_l1_norm(int n, double t, const StableDensityEvaluator& ev);

/// Polynomial on the Gaussian line in the probabilists' Hermite basis He_k.
/// Expectations use the standard normal density.
class GaussianPolynomial {
 public:
  static constexpr int kMaxDegree = 16;

  explicit GaussianPolynomial(std::vector<double> hermite_coeffs);

  const std::vector<double>& hermite_coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  /// Monomial coefficients of the same polynomial.
  std::vector<double> monomial_coeffs() const;
  double operator()(double x) const;

  /// f'' - x f'; diagonal: He_k -> -k He_k.
  GaussianPolynomial apply_ou() const;
  /// e^{t Lap_ou}: He_k -> e^{-kt} He_k.
  GaussianPolynomial heat(double t) const;

  /// int_0^inf f(side * x) rho(x) dx, side = +1 or -1. Exact for degree <= 2*32-1
  /// through u = x^2/2 and Gauss-Laguerre rules with alpha = 0 and -1/2.
  double half_line_integral(int side) const;
  /// E|f|. Requires f to keep one sign on each open half-line.
  double l1_norm() const;
  /// Sign of f on (0, inf) (side = 1) or (-inf, 0) (side = -1).
  int half_line_sign(int side) const;

 private:
  std::vector<double> coeffs_;
};

struct OuFlatness {
  double integral;         // int_{f != 0} (-Lap_ou f) sgn f rho for f = x^3
  double defect_exponent;  // fitted slope of ln(1 - ||e^{t Lap_ou} f||_1/||f||_1) vs ln t
};

/// Runs the x^3 computation; the regression uses 41 log-spaced t in [1e-3, 1e-1].
OuFlatness gaussian_ou_flatness();

}  // namespace cube_spectral
