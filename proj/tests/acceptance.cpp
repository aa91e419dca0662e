// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status 0 iff every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "cube_spectral/counterexamples.hpp"
#include "cube_spectral/cube.hpp"
#include "cube_spectral/inequalities.hpp"
#include "cube_spectral/kernel.hpp"
#include "cube_spectral/random.hpp"
#include "cube_spectral/search.hpp"
#include "cube_spectral/subordination.hpp"
#include "oracles.hpp"

using namespace cube_spectral;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok   " : "MISS ") + what);
  }
};

std::string num(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double sum_sq(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return acc;
}

Outcome transforms() {
  Outcome o;
  const int n = 16;
  double worst_roundtrip = 0.0, worst_parseval = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng = substream(1, i);
    const CubeFunction f = random_uniform_function(n, rng);
    const Spectrum a = fwht(f);
    const CubeFunction back = ifwht(a);
    double diff = 0.0;
    for (std::size_t x = 0; x < f.size(); ++x) {
      diff = std::max(diff, std::abs(back[static_cast<Mask>(x)] - f[static_cast<Mask>(x)]));
    }
    worst_roundtrip = std::max(worst_roundtrip, diff / lp_norm(f, kInfinity));
    // E f^2 against sum_S a_S^2, both summed here.
    const std::vector<double> fv(f.values().begin(), f.values().end());
    const std::vector<double> av(a.coeffs().begin(), a.coeffs().end());
    const double lhs = sum_sq(fv) / static_cast<double>(fv.size());
    worst_parseval = std::max(worst_parseval, std::abs(lhs - sum_sq(av)) / lhs);
  }
  o.require(worst_roundtrip <= 1e-10, "round trip rel err " + num(worst_roundtrip));
  o.require(worst_parseval <= 1e-10, "Parseval rel err " + num(worst_parseval));

  // Spot check against the definition on a small cube.
  Rng rng = substream(1, 5000);
  const CubeFunction g = random_uniform_function(8, rng);
  const auto direct = oracle::direct_fourier({g.values().begin(), g.values().end()});
  const Spectrum b = fwht(g);
  double worst = 0.0;
  for (std::size_t s = 0; s < direct.size(); ++s) worst = std::max(worst, std::abs(b[static_cast<Mask>(s)] - direct[s]));
  o.require(worst <= 1e-12, "n = 8 definition check " + num(worst));

  Rng big = substream(1, 6000);
  const CubeFunction h = random_uniform_function(20, big);
  const auto start = std::chrono::steady_clock::now();
  const Spectrum c = fwht(h);
  const double elapsed = seconds_since(start);
  o.require(elapsed < 2.0 && std::isfinite(c[0]), "n = 20 transform " + num(elapsed) + " s");
  return o;
}

Outcome subordination_identity() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double g : {0.3, 0.5, 0.7, 0.9}) {
    const StableDensityEvaluator ev(g);
    for (double lambda : {0.0, 0.1, 1.0, 10.0, 50.0}) {
      worst = std::max(worst, std::abs(ev.laplace_transform(lambda) - std::exp(-std::pow(lambda, g))));
    }
  }
  const double elapsed = seconds_since(start);
  o.require(worst <= 1e-6, "max |L p - exp(-lambda^g)| " + num(worst));
  o.require(elapsed < 60.0, "runtime " + num(elapsed) + " s");
  return o;
}

Outcome half_closed_form() {
  Outcome o;
  const StableDensityEvaluator ev(0.5);
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double tau = 0.05 * std::pow(2000.0, i / 400.0);
    worst = std::max(worst, std::abs(ev.density(tau) - oracle::levy_density(tau)));
  }
  o.require(worst <= 1e-7, "max density error on [0.05, 100] " + num(worst));
  const double cross = std::abs(2.0 * std::sqrt(std::numbers::pi) - 1.0 / ev.tail_constant());
  o.require(cross <= 1e-8, "|2 sqrt(pi) - 1/C| " + num(cross));
  return o;
}

Outcome tail_asymptotic() {
  Outcome o;
  for (double g : {0.3, 0.5, 0.7}) {
    const StableDensityEvaluator ev(g);
    const double tau = 1e3;
    const double ratio = std::pow(tau, 1.0 + g) * ev.density(tau) / oracle::tail_constant(g);
    o.require(std::abs(ratio - 1.0) <= 0.02, "gamma " + num(g) + ": ratio at 1e3 " + num(ratio));
  }
  return o;
}

void check_kernel(Outcome& o, const std::vector<int>& band) {
  const int n = 12;
  const ModificationPlan plan = build_plan(0.5, band);
  std::string label = "band {";
  for (std::size_t i = 0; i < band.size(); ++i) label += (i ? "," : "") + std::to_string(band[i]);
  label += "}";
  for (double t : {plan.t0 / 4, plan.t0 / 2, plan.t0}) {
    const CubeFunction k = modified_kernel(plan, n, t);
    double lowest = kInfinity, mass = 0.0;
    for (double v : k.values()) {
      lowest = std::min(lowest, v);
      mass += std::abs(v);
    }
    mass /= static_cast<double>(k.size());
    // Band modes must carry the unmodified multiplier e^{-t d^{1/2}}.
    const Spectrum a = fwht(k);
    double dev = 0.0;
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
      const int d = degree(s);
      if (std::find(band.begin(), band.end(), d) != band.end()) {
        dev = std::max(dev, std::abs(a[s] - std::exp(-t * std::sqrt(static_cast<double>(d)))));
      }
    }
    const double target = 1.0 - plan.kappa * t;
    o.require(lowest >= 0.0, label + " t " + num(t) + ": min value " + num(lowest));
    o.require(dev <= 1e-8, label + " t " + num(t) + ": band deviation " + num(dev));
    o.require(std::abs(mass - target) <= 1e-12 && target <= std::exp(-plan.kappa * t / 2),
              label + " t " + num(t) + ": ||K||_1 " + num(mass) + ", 1 - kappa t " + num(target));
  }
}

Outcome modified_kernel_check() {
  Outcome o;
  check_kernel(o, {1, 2});
  check_kernel(o, {2, 3, 7});
  return o;
}

Outcome counterexample_sum() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int n = 1; n <= 16; ++n) {
    for (double t : {0.3, 1.0}) {
      // Brute force: evolve the 2^n table and take the mean absolute value.
      const CubeFunction evolved = apply_multiplier(delta_pair(n), DegreeMultiplier::heat(t, 1.0));
      double brute = 0.0;
      for (double v : evolved.values()) brute += std::abs(v);
      brute /= static_cast<double>(evolved.size());
      worst = std::max(worst, std::abs(exact_heat_l1(n, t) - brute) / brute);
    }
  }
  o.require(worst <= 1e-12, "n <= 16 rel err " + num(worst));
  const double big = exact_heat_l1(2000, 1.0);
  o.require(big >= 0.49, "exact_heat_l1(2000, 1) = " + num(big));
  const double frozen = std::abs(exact_heat_l1(101, 0.5) - oracle::kExactHeat101Half);
  o.require(frozen <= 1e-14, "n = 101 frozen value err " + num(frozen));
  const double elapsed = seconds_since(start);
  o.require(elapsed < 30.0, "runtime " + num(elapsed) + " s");
  return o;
}

Outcome fractional_counterexample() {
  Outcome o;
  const StableDensityEvaluator ev(0.5);
  const double b4 = fractional_l1_bound(1e4, 1.0, ev);
  const double b6 = fractional_l1_bound(1e6, 1.0, ev);
  o.require(std::abs(b4 - oracle::kFractionalBound1e4) <= 1e-9, "n = 1e4 agrees with reference " + num(b4));
  o.require(std::abs(b6 - oracle::kFractionalBound1e6) <= 1e-9, "n = 1e6 agrees with reference " + num(b6));
  o.require(b4 >= 0.4, "bound at n = 1e4 " + num(b4) + " >= 0.4");
  o.require(std::abs(b6 - 0.5) <= 0.05, "bound at n = 1e6 " + num(b6) + " within 0.05 of 0.5");
  return o;
}

Outcome heat_smoothing() {
  Outcome o;
  int violations = 0, cases = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    Rng rng = substream(8, i);
    const int k = 1 + i % 3;
    const int n = std::max(k, 4 + i % 9);
    std::vector<int> degrees;
    for (int d = 1; d <= k; ++d) degrees.push_back(d);
    const CubeFunction f = random_band_function(n, degrees, rng);
    const int top = fwht(f).max_degree();
    for (double mult : {3.0, 6.0}) {
      const double t = mult * top * std::log(3.0);
      const double lhs = lp_norm(apply_multiplier(f, DegreeMultiplier::heat(t, 1.0)), 1.0);
      const double rhs = std::exp(-t / 2) * lp_norm(f, 1.0);
      worst = std::max(worst, lhs / rhs);
      ++cases;
      if (lhs > rhs) ++violations;
    }
  }
  o.require(violations == 0, std::to_string(violations) + " violations in " + std::to_string(cases) +
                                 " cases, worst lhs/rhs " + num(worst));
  return o;
}

Outcome bonami() {
  Outcome o;
  int violations = 0;
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    Rng rng = substream(9, i);
    const int k = 1 + i % 4;
    const int n = std::max(k, 4 + i % 9);
    std::vector<int> degrees;
    for (int d = 1; d <= k; ++d) degrees.push_back(d);
    CubeFunction f = random_band_function(n, degrees, rng);
    if (i % 2) f = f + CubeFunction::constant(n, std::normal_distribution<double>()(rng));
    const double ratio = lp_norm(f, 4.0) / (std::pow(3.0, k / 2.0) * lp_norm(f, 2.0));
    worst = std::max(worst, ratio);
    if (ratio > 1.0) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " violations, worst ||f||_4/(3^{k/2}||f||_2) " + num(worst));
  return o;
}

Outcome tilde_cp_check() {
  Outcome o;
  o.require(std::abs(tilde_cp(2.0) - 1.0) <= 1e-9, "tilde_cp(2) = " + num(tilde_cp(2.0)));
  double slack = kInfinity;
  for (int i = 1; i <= 50; ++i) {
    const double p = std::pow(64.0, i / 50.0);
    slack = std::min(slack, tilde_cp(p) - 2.0 * std::min(1.0 / p, 1.0 - 1.0 / p));
  }
  o.require(slack >= -1e-9, "min tilde_cp(p) - 2 min(1/p, 1/p') " + num(slack));

  Rng rng = substream(10, 0);
  std::vector<double> pool(1000), cps(1000);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    pool[i] = std::pow(64.0, std::uniform_real_distribution<double>(1e-6, 1.0)(rng));
    cps[i] = tilde_cp(pool[i]);
  }
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_real_distribution<double> ab(-5.0, 5.0);
  int violations = 0;
  for (int i = 0; i < 100000; ++i) {
    const std::size_t j = pick(rng);
    const double p = pool[j], a = ab(rng), b = ab(rng);
    const GapSides g = abp_gap(p, a, b, cps[j]);
    // Rounding allowance for the differences of nearly equal powers.
    const double pa = std::pow(std::abs(a), p / 2), pb = std::pow(std::abs(b), p / 2);
    const double lhs_terms = std::abs(a - b) * (std::pow(std::abs(a), p - 1) + std::pow(std::abs(b), p - 1));
    const double half = std::abs(std::copysign(pa, a) - std::copysign(pb, b)) * (pa + pb);
    const double allowance = 16 * 2.3e-16 * (lhs_terms + cps[j] * half) + 1e-9 * std::max(g.lhs, g.rhs);
    if (g.rhs - g.lhs > allowance) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " abp_gap violations in 1e5 triples");
  return o;
}

Outcome derivative_identity() {
  Outcome o;
  const double h = 1e-4, t = 0.5;
  double worst = 0.0;
  int redraws = 0;
  for (int i = 0; i < 100; ++i) {
    const double g = i % 2 ? 1.0 : 0.5;
    const int n = 2 + i % 9;
    for (int attempt = 0;; ++attempt) {
      Rng rng = substream(11, 1000 * i + attempt);
      const CubeFunction f = random_uniform_function(n, rng);
      const VerificationReport r = derivative_identity_check(f, g, t, h);
      if (r.status == Status::inconclusive && attempt < 20) {
        ++redraws;
        continue;
      }
      // Central difference taken here, independently of the report.
      auto l1_at = [&](double s) { return lp_norm(apply_multiplier(f, DegreeMultiplier::heat(s, g)), 1.0); };
      const double central = (l1_at(t + h) - l1_at(t - h)) / (2 * h);
      worst = std::max(worst, std::abs(central - l1_time_derivative(f, g, t)));
      break;
    }
  }
  o.require(worst <= 1e-6, "max |analytic - central| " + num(worst) + " (" + std::to_string(redraws) + " redraws)");
  return o;
}

Outcome gaussian_counterexample() {
  Outcome o;
  const OuFlatness r = gaussian_ou_flatness();
  o.require(std::abs(r.integral) <= 1e-10, "|int (-Lap f) sgn f rho| " + num(std::abs(r.integral)));
  o.require(r.defect_exponent >= 1.9, "defect exponent " + num(r.defect_exponent));
  // e^{t Lap} x^3 = 3 e^{-t} x + e^{-3t}(x^3 - 3x) keeps the sign of x, so
  // the norm ratio is (3 e^{-t} - e^{-3t}) / 2 in closed form.
  const GaussianPolynomial cube({0.0, 3.0, 0.0, 1.0});
  double worst = 0.0;
  for (double t : {1e-3, 1e-2, 1e-1}) {
    const double closed = (3 * std::exp(-t) - std::exp(-3 * t)) / 2;
    worst = std::max(worst, std::abs(cube.heat(t).l1_norm() / cube.l1_norm() - closed));
  }
  o.require(worst <= 1e-13, "norm ratio vs closed form " + num(worst));
  return o;
}

Outcome positive_gap() {
  Outcome o;
  const std::vector<double> times = {0.25, 0.5, 1.0, 2.0};
  double lowest_random = kInfinity, lowest_band = kInfinity;
  for (int n = 4; n <= 12; ++n) {
    Rng rng = substream(13, n);
    for (double p : {1.5, 2.0, 4.0}) {
      lowest_random = std::min(lowest_random, decay_rate(random_uniform_function(n, rng), p, 0.5, times).min_rate);
    }
    const CubeFunction band = random_band_function(n, {1, 2, 3}, rng);
    lowest_band = std::min(lowest_band, decay_rate(band, 1.0, 0.5, times).min_rate);
  }
  o.require(lowest_random > 0.0, "min rate, p in {1.5, 2, 4}: " + num(lowest_random));
  o.require(lowest_band > 0.0, "min rate, p = 1 band-limited: " + num(lowest_band));

  SearchConfig cfg;
  cfg.n = 6;
  cfg.t = 1.0;
  cfg.p = 2.0;
  const double at_two = worst_ratio_search(cfg).ratio;
  o.require(std::abs(at_two - std::exp(-1.0)) <= 1e-6, "search at p = 2: " + num(at_two));

  const std::vector<double> grid = {1.1, 1.25, 1.5, 2.0};
  const auto scan = constant_scan(grid, cfg);
  std::string rates;
  for (const auto& s : scan) rates += " " + num(s.rate);
  o.require(rates_decrease_toward_one(scan, 0.05), "rates along p = 1.1, 1.25, 1.5, 2:" + rates);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"transform correctness", transforms},
      {"subordination identity", subordination_identity},
      {"closed form at gamma = 1/2", half_closed_form},
      {"tail asymptotic", tail_asymptotic},
      {"modified kernel", modified_kernel_check},
      {"counterexample sum", counterexample_sum},
      {"fractional counterexample", fractional_counterexample},
      {"heat smoothing", heat_smoothing},
      {"Bonami", bonami},
      {"tilde c_p formula", tilde_cp_check},
      {"derivative identity", derivative_identity},
      {"Gaussian counterexample", gaussian_counterexample},
      {"positive-gap properties", positive_gap},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str());
    for (const auto& d : o.details) std::printf("       %s\n", d.c_str());
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
