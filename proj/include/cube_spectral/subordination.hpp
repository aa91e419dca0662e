#pragma once

#include <functional>
#include <limits>
#include <span>

#include "cube_spectral/report.hpp"

namespace cube_spectral {

/// Beyond this tau the density is summed from its convergent large-tau series.
inline constexpr double kSeriesThreshold = 1e3;

/// Lower floor on the tail threshold R0.
inline constexpr double kR0Floor = 16.0;

/// Density p_gamma of the one-sided gamma-stable law with Laplace transform
/// exp(-lambda^gamma), 0 < gamma < 1.
///
/// Construction computes and caches the tail constant C_gamma
/// (tau^{1+gamma} p(tau) -> C_gamma) and the threshold R0 beyond which
/// p(tau) >= C_gamma / 2 * tau^{-(1+gamma)}, with t0 = R0^{-gamma}.
/// Immutable afterwards; safe for concurrent reads.
class StableDensityEvaluator {
 public:
  explicit StableDensityEvaluator(double gamma, double quad_tol = 1e-9);

  double gamma() const noexcept { return gamma_; }
  double quad_tol() const noexcept { return quad_tol_; }
  double tail_constant() const noexcept { return tail_constant_; }
  double r0() const noexcept { return r0_; }
  double t0() const noexcept { return t0_; }

  /// p_gamma(tau); exactly 0 for tau <= 0.
  double density(double tau) const;

  /// Fourier-inversion integral
  ///   (1/pi) int_0^inf exp(-y^g cos(g pi/2)) cos(tau y - y^g sin(g pi/2)) dy
  /// taken panel-by-panel between zeros of the cosine, with Wynn-epsilon
  /// acceleration of the partial sums. `tol` is absolute.
  double oscillatory_density(double tau, double tol) const;

  /// (1/pi) sum_k (-1)^{k+1} Gamma(k g + 1)/k! sin(k pi g) tau^{-(k g + 1)}.
  /// Converges for every tau > 0; well conditioned only for large tau.
  double series_density(double tau) const;

  /// int_0^inf exp(-lambda tau) p(tau) dtau by adaptive quadrature.
  double laplace_transform(double lambda) const;

  /// int_0^inf g(tau) p(tau) dtau for bounded g. Mass beyond tau_max is
  /// treated as zero, which the caller asserts by passing it.
  double expectation(const std::function<double(double)>& g,
                     double tau_max = std::numeric_limits<double>::infinity()) const;

 private:
  double gamma_;
  double quad_tol_;
  double sin_half_;  // sin(gamma pi / 2)
  double cos_half_;  // cos(gamma pi / 2)
  double tail_constant_ = 0.0;
  double r0_ = 0.0;
  double t0_ = 0.0;

  friend double find_r0(const StableDensityEvaluator& ev);
};

double stable_density(const StableDensityEvaluator& ev, double tau);

/// C_gamma from 1/C = int_0^inf (1 - e^{-tau}) tau^{-(1+gamma)} dtau.
double tail_constant(double gamma);

/// Max over the grid of |exp(-lambda^gamma) - int exp(-lambda tau) p(tau) dtau|;
/// passes iff the maximum is <= 1e-6.
VerificationReport verify_subordination(const StableDensityEvaluator& ev,
                                        std::span<const double> lambda_grid);

/// Smallest grid-verified R0 (at least kR0Floor) with
/// tau^{1+gamma} p(tau) >= C_gamma / 2 on [R0, 1e6], 64 points per decade.
double find_r0(const StableDensityEvaluator& ev);

}  // namespace cube_spectral
