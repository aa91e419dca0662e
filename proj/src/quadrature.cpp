#include "cube_spectral/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cube_spectral/errors.hpp"

namespace cube_spectral::quad {

namespace {

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk21(const Integrand& f, double a, double b) {
  using kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
  using gauss = boost::math::quadrature::gauss<double, 10>;
  const auto& x = kronrod::abscissa();
  const auto& wk = kronrod::weights();
  const auto& wg = gauss::weights();

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double kron = wk[0] * fc;
  double gaus = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double dx = half * x[i];
    const double pair = f(mid - dx) + f(mid + dx);
    kron += wk[i] * pair;
    // Gauss nodes sit at the odd Kronrod indices.
    if (i % 2 == 1) gaus += wg[i / 2] * pair;
  }
  kron *= half;
  gaus *= half;
  double err = std::abs(kron - gaus);
  // Floor at rounding level so flat panels terminate.
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kron));
  return {a, b, kron, err};
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, const Options& opt) {
  Result out;
  if (a == b) return out;
  std::priority_queue<Segment> heap;
  Segment first = gk21(f, a, b);
  heap.push(first);
  double total = first.value;
  double total_err = first.error;
  int intervals = 1;
  out.evaluations = 21;

  auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
  while (total_err > target() && intervals < opt.max_intervals) {
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;  // cannot split further
    heap.pop();
    Segment left = gk21(f, worst.a, mid);
    Segment right = gk21(f, mid, worst.b);
    out.evaluations += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Resum to shed the drift of incremental updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = total_err;
  out.converged = total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
  if (!out.converged && opt.throw_on_failure) {
    std::ostringstream msg;
    msg << "adaptive quadrature on [" << a << ", " << b << "] did not converge: error estimate "
        << total_err;
    throw NumericFailure(msg.str(), total_err);
  }
  return out;
}

Result integrate_to_infinity(const Integrand& f, double a, const Options& opt) {
  auto mapped = [&](double u) {
    if (u >= 1.0) return 0.0;
    const double w = 1.0 - u;
    return f(a + u / w) / (w * w);
  };
  return integrate(mapped, 0.0, 1.0, opt);
}

EpsilonAccelerator::EpsilonAccelerator(std::size_t max_terms) : max_terms_(max_terms) {
  diagonal_.reserve(max_terms);
}

double EpsilonAccelerator::push(double partial_sum) {
  if (count_ >= max_terms_) {
    // Table is full; keep the last extrapolation.
    ++count_;
    return estimate_;
  }
  const std::size_t n = count_++;
  diagonal_.push_back(partial_sum);
  constexpr double kHuge = std::numeric_limits<double>::max() / 4;
  double aux2 = 0.0;
  for (std::size_t j = n; j >= 1; --j) {
    const double aux1 = aux2;
    aux2 = diagonal_[j - 1];
    const double diff = diagonal_[j] - aux2;
    diagonal_[j - 1] = (std::abs(diff) < std::numeric_limits<double>::min()) ? kHuge
                                                                             : aux1 + 1.0 / diff;
  }
  previous_ = estimate_;
  double next = (n % 2 == 0) ? diagonal_[0] : diagonal_[1];
  if (!std::isfinite(next) || std::abs(next) >= kHuge) next = partial_sum;
  estimate_ = next;
  error_ = (n == 0) ? std::numeric_limits<double>::infinity() : std::abs(estimate_ - previous_);
  return estimate_;
}

std::pair<std::vector<double>, std::vector<double>> gauss_laguerre(int n, double alpha) {
  if (n < 1) throw InvalidParameter("gauss_laguerre: n must be positive");
  if (!(alpha > -1.0)) throw InvalidParameter("gauss_laguerre: alpha must exceed -1");
  std::vector<double> nodes(n), weights(n);
  const double log_norm = std::lgamma(alpha + n) - std::lgamma(static_cast<double>(n));
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    // Asymptotic starting guesses for successive roots.
    if (i == 0) {
      z = (1.0 + alpha) * (3.0 + 0.92 * alpha) / (1.0 + 2.4 * n + 1.8 * alpha);
    } else if (i == 1) {
      z += (15.0 + 6.25 * alpha) / (1.0 + 0.9 * alpha + 2.5 * n);
    } else {
      const double ai = i - 1;
      z += ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * alpha / (1.0 + 3.5 * ai)) *
           (z - nodes[i - 2]) / (1.0 + 0.3 * alpha);
    }
    double p1 = 0.0, p2 = 0.0, pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      p1 = 1.0;
      p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2 * j + 1 + alpha - z) * p2 - (j + alpha) * p3) / (j + 1);
      }
      pp = (n * p1 - (n + alpha) * p2) / z;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::abs(z)) break;
    }
    nodes[i] = z;
    weights[i] = -std::exp(log_norm) / (pp * n * p2);
  }
  return {nodes, weights};
}

std::pair<double, double> minimize_scan(const Integrand& f, double a, double b, int grid) {
  if (grid < 3) grid = 3;
  const double h = (b - a) / (grid - 1);
  int best = 0;
  double best_val = f(a);
  for (int i = 1; i < grid; ++i) {
    const double v = f(a + i * h);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = a + std::max(0, best - 1) * h;
  double hi = a + std::min(grid - 1, best + 1) * h;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  const double xm = 0.5 * (lo + hi);
  const double fm = f(xm);
  if (fm < best_val) return {xm, fm};
  return {a + best * h, best_val};
}

}  // namespace cube_spectral::quad
