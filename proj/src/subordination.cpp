#include "cube_spectral/subordination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "cube_spectral/errors.hpp"
#include "cube_spectral/quadrature.hpp"

namespace cube_spectral {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxPanels = 4000;
constexpr int kMaxAccelerated = 60;

void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    std::ostringstream msg;
    msg << "gamma must lie in (0, 1), got " << gamma;
    throw InvalidParameter(msg.str());
  }
}

// Solve phase(y) = level for y in [lo, hi], phase monotone there.
template <class Phase>
double solve_level(const Phase& phase, double level, double lo, double hi) {
  auto g = [&](double y) { return phase(y) - level; };
  double flo = g(lo), fhi = g(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  boost::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(g, lo, hi, flo, fhi,
                                             boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

double tail_constant(double gamma) {
  check_gamma(gamma);
  quad::Options opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-13;
  // [0,1]: tau = u^{1/(1-g)} removes the tau^{-g} endpoint singularity.
  const double a = 1.0 / (1.0 - gamma);
  auto near = [&](double u) {
    if (u <= 0.0) return a;
    const double tau = std::pow(u, a);
    return -std::expm1(-tau) / tau * a;
  };
  // [1,inf): tau = u^{-1/g} turns the algebraic tail into a bounded integrand.
  auto far = [&](double u) {
    if (u <= 0.0) return 1.0 / gamma;
    const double tau = std::pow(u, -1.0 / gamma);
    return -std::expm1(-tau) / gamma;
  };
  const double inv = quad::integrate(near, 0.0, 1.0, opt).value +
                     quad::integrate(far, 0.0, 1.0, opt).value;
  return 1.0 / inv;
}

StableDensityEvaluator::StableDensityEvaluator(double gamma, double quad_tol)
    : gamma_(gamma), quad_tol_(quad_tol) {
  check_gamma(gamma);
  if (!(quad_tol > 0.0)) throw InvalidParameter("quad_tol must be positive");
  sin_half_ = std::sin(gamma * kPi / 2);
  cos_half_ = std::cos(gamma * kPi / 2);
  tail_constant_ = cube_spectral::tail_constant(gamma);
  r0_ = find_r0(*this);
  t0_ = std::pow(r0_, -gamma_);
}

double StableDensityEvaluator::series_density(double tau) const {
  if (tau <= 0.0) return 0.0;
  const double log_tau = std::log(tau);
  double sum = 0.0;
  double prev_mag = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 5000; ++k) {
    const double kg = k * gamma_;
    const double mag =
        std::exp(std::lgamma(kg + 1.0) - std::lgamma(k + 1.0) - (kg + 1.0) * log_tau);
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    sum += sign * mag * std::sin(k * kPi * gamma_);
    if (k > 2 && mag < prev_mag && mag <= 1e-18 * std::abs(sum)) return sum / kPi;
    prev_mag = mag;
  }
  std::ostringstream msg;
  msg << "stable density series did not converge at tau=" << tau;
  throw NumericFailure(msg.str(), prev_mag);
}

double StableDensityEvaluator::oscillatory_density(double tau, double tol) const {
  const double g = gamma_;
  const double s = sin_half_;
  const double c = cos_half_;
  auto phase = [&](double y) { return tau * y - s * std::pow(y, g); };
  auto integrand = [&](double y) {
    if (y <= 0.0) return 1.0;
    const double yg = std::pow(y, g);
    return std::exp(-c * yg) * std::cos(tau * y - s * yg);
  };

  // Past y_env the envelope tail int_Y^inf exp(-c y^g) dy is negligible.
  const double tail_target = 1e-3 * tol * kPi;
  double log_inv = std::log(1.0 / tail_target);
  double y_env = std::pow(log_inv / c, 1.0 / g);
  for (int it = 0; it < 4; ++it) {
    const double extra = std::log(std::pow(y_env, 1.0 - g) / (c * g));
    y_env = std::pow((log_inv + std::max(0.0, extra)) / c, 1.0 / g);
  }

  quad::Options opt;
  opt.abs_tol = 1e-3 * tol;
  opt.rel_tol = 1e-13;
  opt.max_intervals = 400;
  auto panel = [&](double a, double b) { return quad::integrate(integrand, a, b, opt).value; };

  // Phase decreases on [0, y_star] and increases afterwards.
  const double y_star = std::pow(g * s / tau, 1.0 / (1.0 - g));
  double sum = 0.0;
  double y = 0.0;
  int panels = 0;

  const double a_end = std::min(y_star, y_env);
  const double theta_a_end = phase(a_end);
  for (int k = 0;; ++k) {
    const double level = -(k + 0.5) * kPi;
    if (level <= theta_a_end) break;
    const double z = solve_level(phase, level, y, a_end);
    sum += panel(y, z);
    y = z;
    if (++panels > kMaxPanels) throw NumericFailure("too many oscillation panels", tol);
  }
  sum += panel(y, a_end);
  y = a_end;
  if (y >= y_env) return sum / kPi;

  // Increasing branch: zeros at phase = (k + 1/2) pi above phase(y_star).
  const double theta_min = phase(y_star);
  long k = static_cast<long>(std::ceil(theta_min / kPi - 0.5));
  if ((k + 0.5) * kPi <= theta_min) ++k;
  quad::EpsilonAccelerator acc(kMaxAccelerated);
  double last_estimate = sum;
  double last_error = std::numeric_limits<double>::infinity();
  int stable = 0;
  for (;; ++k) {
    const double level = (k + 0.5) * kPi;
    // Bracket: phase' <= tau, and phase grows at least linearly past y_star.
    double lo = y;
    double hi = y + std::max(kPi / tau, 1e-12 * (1.0 + y));
    while (phase(hi) < level) hi = lo + 2.0 * (hi - lo);
    const double z = solve_level(phase, level, lo, hi);
    if (z >= y_env) {
      sum += panel(y, y_env);
      return sum / kPi;
    }
    sum += panel(y, z);
    y = z;
    ++panels;
    const double est = acc.push(sum);
    if (acc.terms() >= 6) {
      last_error = acc.error();
      stable = (last_error <= 0.1 * tol * kPi) ? stable + 1 : 0;
      last_estimate = est;
      if (stable >= 2) return last_estimate / kPi;
    }
    if (acc.terms() >= kMaxAccelerated) break;
  }
  std::ostringstream msg;
  msg << "stable density quadrature did not converge at tau=" << tau;
  throw NumericFailure(msg.str(), last_error / kPi);
}

double StableDensityEvaluator::density(double tau) const {
  if (tau <= 0.0) return 0.0;
  if (tau > kSeriesThreshold) return series_density(tau);
  return oscillatory_density(tau, quad_tol_);
}

double stable_density(const StableDensityEvaluator& ev, double tau) { return ev.density(tau); }

double StableDensityEvaluator::laplace_transform(double lambda) const {
  if (lambda < 0.0 || !std::isfinite(lambda)) throw InvalidParameter("lambda must be >= 0");
  // exp(-800) underflows any contribution beyond this point.
  const double tau_max = lambda > 0.0 ? 800.0 / lambda : std::numeric_limits<double>::infinity();
  return expectation([lambda](double tau) { return std::exp(-lambda * tau); }, tau_max);
}

double StableDensityEvaluator::expectation(const std::function<double(double)>& g,
                                           double tau_max) const {
  quad::Options opt;
  opt.abs_tol = 1e-9;
  opt.rel_tol = 1e-11;
  auto body = [&](double tau) { return g(tau) * density(tau); };
  const double cuts[] = {0.0, 0.05, 0.2, 1.0, 5.0, 25.0, 125.0, kSeriesThreshold};
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < std::size(cuts); ++i) {
    if (cuts[i] >= tau_max) return total;
    total += quad::integrate(body, cuts[i], std::min(cuts[i + 1], tau_max), opt).value;
  }
  if (kSeriesThreshold >= tau_max) return total;
  // tau = T w^{-1/g} maps [T, inf) onto (0, 1] with a bounded integrand.
  const double gm = gamma_;
  const double big_t = kSeriesThreshold;
  const double w_min = std::isfinite(tau_max) ? std::pow(big_t / tau_max, gm) : 0.0;
  auto tail = [&](double w) {
    const double tau = big_t * std::pow(w, -1.0 / gm);
    if (!std::isfinite(tau)) return 0.0;
    const double jac = big_t / gm * std::pow(w, -1.0 / gm - 1.0);
    return g(tau) * series_density(tau) * jac;
  };
  total += quad::integrate(tail, w_min, 1.0, opt).value;
  return total;
}

VerificationReport verify_subordination(const StableDensityEvaluator& ev,
                                        std::span<const double> lambda_grid) {
  VerificationReport r;
  r.name = "subordination_identity";
  r.params["gamma"] = ev.gamma();
  r.bound = 1e-6;
  r.tolerance = 1e-6;
  r.extra = Json::array();
  double worst = 0.0;
  for (double lambda : lambda_grid) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
      throw InvalidParameter("lambda grid must be finite and nonnegative");
    }
    const double exact = std::exp(-std::pow(lambda, ev.gamma()));
    const double integral = ev.laplace_transform(lambda);
    const double err = std::abs(exact - integral);
    worst = std::max(worst, err);
    r.extra.push_back({{"lambda", lambda}, {"exact", exact}, {"integral", integral}, {"error", err}});
  }
  r.params["lambda_grid"] = std::vector<double>(lambda_grid.begin(), lambda_grid.end());
  r.measured = worst;
  r.set_pass(worst <= r.bound);
  return r;
}

double find_r0(const StableDensityEvaluator& ev) {
  const double g = ev.gamma();
  const double half_c = 0.5 * ev.tail_constant();
  auto holds = [&](double tau) { return std::pow(tau, 1.0 + g) * ev.density(tau) >= half_c; };

  // Beyond the grid the series tail is checked on a few far decades.
  for (double tau : {1e7, 1e8, 1e10, 1e12, 1e15}) {
    if (!holds(tau)) throw ConstructionFailure("tail bound fails beyond the scan grid", tau);
  }
  // Walk down from 1e6 on a 64-per-decade grid; the threshold is the last
  // point of the unbroken run of passing grid points.
  constexpr int kPerDecade = 64;
  constexpr double kTop = 6.0;
  constexpr double kBottom = -1.0;
  const int steps = static_cast<int>((kTop - kBottom) * kPerDecade);
  double threshold = 1e6;
  for (int i = 0; i <= steps; ++i) {
    const double tau = std::pow(10.0, kTop - static_cast<double>(i) / kPerDecade);
    if (!holds(tau)) break;
    threshold = tau;
  }
  if (threshold > 1e4) {
    throw ConstructionFailure("tail bound p >= C/2 tau^{-(1+gamma)} fails at tau = 1e4", threshold);
  }
  return std::max(kR0Floor, threshold);
}

}  // namespace cube_spectral
