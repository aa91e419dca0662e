#pragma once

#include <memory>
#include <vector>

#include "cube_spectral/cube.hpp"
#include "cube_spectral/report.hpp"
#include "cube_spectral/subordination.hpp"

namespace cube_spectral {

/// K_t^gamma(x) = sum_S exp(-t |S|^gamma) x^S, built spectrally. n <= 20.
CubeFunction heat_kernel(int n, double t, double gamma);

/// (K * f)(x) = E_y K(x y) f(y) with coordinatewise product; computed as
/// the product of Walsh spectra.
CubeFunction group_convolve(const CubeFunction& kernel, const CubeFunction& f);

/// phi(u) = q(u) eta(u) on (1, 2), zero elsewhere, where
/// eta(u) = exp(-1 / (1 - (2u - 3)^2)) and q is a polynomial chosen so that
/// int exp(-m u) phi(u) du = 0 for every m in the band and int phi = 1.
class BumpFunction {
 public:
  const std::vector<int>& band() const noexcept { return band_; }
  /// Monomial coefficients of q in the centered variable v = 2u - 3.
  const std::vector<double>& poly_coeffs() const noexcept { return coeffs_; }
  double sup_norm() const noexcept { return sup_norm_; }
  double mass() const noexcept { return mass_; }
  /// True when the degree-B kernel was degenerate and the B+1 least-norm
  /// fallback produced the coefficients.
  bool used_fallback() const noexcept { return fallback_; }

  double operator()(double u) const;
  /// int_1^2 exp(-m u) phi(u) du by adaptive quadrature.
  double exponential_moment(double m) const;

  static double master_bump(double u);

 private:
  friend BumpFunction construct_bump(std::vector<int> band);
  std::vector<int> band_;
  std::vector<double> coeffs_;
  double sup_norm_ = 0.0;
  double mass_ = 0.0;
  bool fallback_ = false;
};

/// Solves the moment system for the band; band nonempty, entries in 1..16.
BumpFunction construct_bump(std::vector<int> band);

/// Everything needed to build the nonnegative band-preserving kernel.
struct ModificationPlan {
  double gamma = 0.0;
  std::vector<int> band;
  BumpFunction bump;
  double kappa = 0.0;
  double r0 = 0.0;
  double t0 = 0.0;
  std::shared_ptr<const StableDensityEvaluator> density;
  /// mu_d = int exp(-d u) phi(u) du for d = 0..kMaxDimension (mu_0 = 1).
  std::vector<double> moments;
  /// min over the checked times and support grid of
  /// p(tau) - kappa t^{(1+g)/g} phi(t^{1/g} tau).
  double min_margin = 0.0;
};

ModificationPlan build_plan(double gamma, std::vector<int> band);
ModificationPlan build_plan(std::shared_ptr<const StableDensityEvaluator> density,
                            std::vector<int> band);

/// Spectrum of the modified kernel: exp(-t d^g) - kappa t mu_d at degree d.
Spectrum modified_kernel_spectrum(const ModificationPlan& plan, int n, double t);
/// 0 < t <= plan.t0, n <= 16.
CubeFunction modified_kernel(const ModificationPlan& plan, int n, double t);

VerificationReport verify_modification(const ModificationPlan& plan, int n, double t);

}  // namespace cube_spectral
