#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace cube_spectral::quad {

using Integrand = std::function<double(double)>;

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_intervals = 2000;
  /// Throw NumericFailure instead of returning an unconverged result.
  bool throw_on_failure = true;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = true;
};

/// Globally adaptive 21-point Gauss-Kronrod on a finite interval.
/// Bisects the interval with the largest error estimate until
/// error <= max(abs_tol, rel_tol * |value|).
Result integrate(const Integrand& f, double a, double b, const Options& opt = {});

/// Integral over [a, inf) through x = a + u / (1 - u), u in [0, 1).
Result integrate_to_infinity(const Integrand& f, double a, const Options& opt = {});

/// Wynn's epsilon algorithm on a sequence of partial sums.
class EpsilonAccelerator {
 public:
  explicit EpsilonAccelerator(std::size_t max_terms = 64);

  /// Feed the next partial sum; returns the current best limit estimate.
  double push(double partial_sum);
  double estimate() const noexcept { return estimate_; }
  /// Difference between the last two limit estimates.
  double error() const noexcept { return error_; }
  std::size_t terms() const noexcept { return count_; }

 private:
  std::size_t max_terms_;
  std::size_t count_ = 0;
  std::vector<double> diagonal_;
  double estimate_ = 0.0;
  double previous_ = 0.0;
  double error_ = 0.0;
};

/// n-point generalized Gauss-Laguerre rule for the weight u^alpha e^{-u} on
/// [0, inf), alpha > -1: (nodes, weights).
std::pair<std::vector<double>, std::vector<double>> gauss_laguerre(int n, double alpha = 0.0);

/// Minimizes f on [a, b]: dense scan of `grid` points, then golden-section
/// refinement around the best grid point. Returns (argmin, min).
std::pair<double, double> minimize_scan(const Integrand& f, double a, double b,
                                        int grid = 4096);

}  // namespace cube_spectral::quad
