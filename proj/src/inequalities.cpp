#include "cube_spectral/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cube_spectral/errors.hpp"
#include "cube_spectral/quadrature.hpp"

namespace cube_spectral {

namespace {

constexpr double kLn3 = 1.0986122886681098;

double signed_power(double x, double q) { return sgn(x) * std::pow(std::abs(x), q); }

void require_p_above_one(double p, const char* who) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    std::ostringstream msg;
    msg << who << ": p must exceed 1, got " << p;
    throw InvalidParameter(msg.str());
  }
}

CubeFunction pointwise(const CubeFunction& f, const auto& op) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(f[static_cast<Mask>(i)]);
  return CubeFunction(f.n(), std::move(v));
}

// E(sgn F * L 1_{F != 0}) and E(|L| 1_{F = 0}).
std::pair<double, double> signed_split(const CubeFunction& big_f, const CubeFunction& l) {
  double on = 0.0, off = 0.0;
  for (std::size_t i = 0; i < big_f.size(); ++i) {
    const double v = big_f[static_cast<Mask>(i)];
    const double w = l[static_cast<Mask>(i)];
    if (std::abs(v) <= kZeroSetThreshold) {
      off += std::abs(w);
    } else {
      on += sgn(v) * w;
    }
  }
  const double size = static_cast<double>(big_f.size());
  return {on / size, off / size};
}

}  // namespace

double tilde_cp(double p) {
  require_p_above_one(p, "tilde_cp");
  const double a = 2.0 / p;
  const double b = 2.0 - a;  // 2 / p'
  const double limit_at_one = a * b;
  auto h = [&](double t) {
    if (t >= 1.0) return limit_at_one;
    if (t <= 0.0) return 1.0;
    const double lt = std::log(t);
    const double den = std::expm1(lt);
    return (std::expm1(a * lt) / den) * (std::expm1(b * lt) / den);
  };
  return quad::minimize_scan(h, 0.0, 1.0, 4096).second;
}

GapSides abp_gap(double p, double a, double b) { return abp_gap(p, a, b, tilde_cp(p)); }

GapSides abp_gap(double p, double a, double b, double cp) {
  require_p_above_one(p, "abp_gap");
  const double lhs = (a - b) * (signed_power(a, p - 1.0) - signed_power(b, p - 1.0));
  const double diff = signed_power(a, p / 2.0) - signed_power(b, p / 2.0);
  return {lhs, cp * diff * diff};
}

MomentComparison moment_comparison(const CubeFunction& g, double beta) {
  if (!(beta > 0.0 && beta <= 2.0)) throw InvalidParameter("moment_comparison: beta must be in (0, 2]");
  const double mean = expectation(g);
  double var2 = 0.0, l2 = 0.0, moment = 0.0;
  for (double x : g.values()) {
    var2 += (x - mean) * (x - mean);
    l2 += x * x;
    moment += signed_power(x, beta);
  }
  const double size = static_cast<double>(g.size());
  return {var2 / size, l2 / size, moment / size};
}

double pth_dirichlet_functional(const CubeFunction& f, double p) {
  require_p_above_one(p, "pth_dirichlet_functional");
  const CubeFunction lap = apply_multiplier(f, DegreeMultiplier::laplacian());
  const CubeFunction weight = pointwise(f, [&](double x) { return signed_power(x, p - 1.0); });
  return -inner(lap, weight);
}

PoincareL1 poincare_l1_functional(const CubeFunction& f, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw InvalidParameter("poincare_l1_functional: gamma must be in (0, 1)");
  }
  const Spectrum a = fwht(f);
  if (std::abs(a[0]) > 1e-10) throw InvalidInput("poincare_l1_functional: requires E f = 0");
  const int k = a.max_degree(1e-10);
  if (k < 1) throw InvalidInput("poincare_l1_functional: f vanishes");
  const CubeFunction lap = ifwht(apply_multiplier(a, DegreeMultiplier::fractional(gamma)));
  const auto [on, off] = signed_split(f, lap);
  const double alpha = std::pow(static_cast<double>(k), -gamma) * std::pow(3.0, -3.0 * k);
  return {-on - off, lp_norm(f, 1.0), alpha, k};
}

BonamiRatio bonami_ratio(const CubeFunction& f) {
  const double l2 = lp_norm(f, 2.0);
  if (l2 == 0.0) throw InvalidInput("bonami_ratio: f vanishes identically");
  return {lp_norm(f, 4.0) / l2, fwht(f).max_degree(1e-12)};
}

VerificationReport heat_smoothing_l1(const CubeFunction& f, double t) {
  if (!(t >= 0.0)) throw InvalidParameter("heat_smoothing_l1: t must be >= 0");
  VerificationReport r;
  r.name = "heat_smoothing_l1";
  const Spectrum a = fwht(f);
  const int k = std::max(0, a.max_degree(1e-12));
  const double l1 = lp_norm(f, 1.0);
  const double measured = lp_norm(ifwht(apply_multiplier(a, DegreeMultiplier::heat(t, 1.0))), 1.0);
  const double bound = std::exp(-t / 2.0) * l1;
  const double threshold = 3.0 * k * kLn3;
  const bool required = t >= threshold * (1.0 - 1e-12);
  const bool holds = measured <= bound * (1.0 + 1e-12);
  const bool centered = std::abs(a[0]) <= 1e-10 * std::max(1.0, l1);

  r.params["n"] = f.n();
  r.params["t"] = t;
  r.params["k"] = k;
  r.measured = measured;
  r.bound = bound;
  r.tolerance = 1e-12;
  r.extra = {{"threshold", threshold}, {"required", required}, {"holds", holds},
             {"mean_zero", centered}};
  if (!centered) {
    r.set_status(Status::inconclusive);
  } else if (holds) {
    r.set_status(Status::pass);
  } else {
    r.set_status(required ? Status::fail : Status::inconclusive);
  }
  return r;
}

DecayRates decay_rate(const CubeFunction& f, double p, double gamma,
                      std::span<const double> t_grid) {
  if (t_grid.empty()) throw InvalidParameter("decay_rate: empty time grid");
  const CubeFunction f0 = center(f);
  const double base = lp_norm(f0, p);
  if (base == 0.0) throw InvalidInput("decay_rate: f - E f vanishes");
  const Spectrum a = fwht(f0);
  DecayRates out{{}, kInfinity};
  for (double t : t_grid) {
    if (!(t > 0.0)) throw InvalidParameter("decay_rate: times must be positive");
    const double norm = lp_norm(ifwht(apply_multiplier(a, DegreeMultiplier::heat(t, gamma))), p);
    const double rate = -std::log(norm / base) / t;
    out.rates.push_back(rate);
    out.min_rate = std::min(out.min_rate, rate);
  }
  return out;
}

double l1_time_derivative(const CubeFunction& f, double gamma, double t) {
  const Spectrum evolved = apply_multiplier(fwht(f), DegreeMultiplier::heat(t, gamma));
  const CubeFunction big_f = ifwht(evolved);
  const CubeFunction lap = ifwht(apply_multiplier(evolved, DegreeMultiplier::fractional(gamma)));
  const auto [on, off] = signed_split(big_f, lap);
  return on + off;
}

VerificationReport derivative_identity_check(const CubeFunction& f, double gamma, double t,
                                             double h) {
  if (!(h > 0.0 && t > h)) throw InvalidParameter("derivative_identity_check: need t > h > 0");
  VerificationReport r;
  r.name = "derivative_identity";
  r.params["n"] = f.n();
  r.params["gamma"] = gamma;
  r.params["t"] = t;
  r.params["h"] = h;

  const Spectrum a = fwht(f);
  auto evolve = [&](double s) { return ifwht(apply_multiplier(a, DegreeMultiplier::heat(s, gamma))); };
  auto l1_at = [&](double s) { return lp_norm(evolve(s), 1.0); };

  const CubeFunction big_f = evolve(t);
  const Spectrum first = apply_multiplier(fwht(big_f), DegreeMultiplier::fractional(gamma));
  const Spectrum second = apply_multiplier(first, DegreeMultiplier::fractional(gamma));
  const CubeFunction velocity = ifwht(first);
  const CubeFunction accel = ifwht(second);
  // F(x, s) keeps its sign on [t - h, t + h] when |F| beats the Taylor
  // bound of its motion; otherwise I(s) may have a kink inside the stencil.
  double min_abs = kInfinity, crossing_margin = kInfinity;
  for (std::size_t i = 0; i < big_f.size(); ++i) {
    const auto m = static_cast<Mask>(i);
    min_abs = std::min(min_abs, std::abs(big_f[m]));
    crossing_margin = std::min(crossing_margin, std::abs(big_f[m]) - 2.0 * h * std::abs(velocity[m]) -
                                                    h * h * std::abs(accel[m]));
  }

  const double analytic = l1_time_derivative(f, gamma, t);
  const double i_t = l1_at(t);
  const double central = (l1_at(t + h) - l1_at(t - h)) / (2.0 * h);
  const double forward = (l1_at(t + h) - i_t) / h;

  // Central-difference error is about h^2/6 |I'''|; E|Lap_g^3 F| bounds I'''
  // away from the zero set.
  const Spectrum third = apply_multiplier(second, DegreeMultiplier::fractional(gamma));
  const double scale = lp_norm(ifwht(third), 1.0);
  const double tol = std::max(1e-6, 10.0 * h * h * scale);
  const double diff = std::abs(analytic - central);

  r.measured = diff;
  r.bound = tol;
  r.tolerance = tol;
  r.extra = {{"analytic", analytic},
             {"central_difference", central},
             {"forward_difference", forward},
             {"min_abs_F", min_abs},
             {"crossing_margin", crossing_margin},
             {"I_t", i_t}};
  if (crossing_margin <= 0.0) {
    r.set_status(Status::inconclusive);
  } else {
    r.set_pass(diff <= tol);
  }
  return r;
}

}  // namespace cube_spectral
