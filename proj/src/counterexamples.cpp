#include "cube_spectral/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "cube_spectral/errors.hpp"
#include "cube_spectral/quadrature.hpp"

namespace cube_spectral {

namespace {

using boost::multiprecision::cpp_bin_float_50;
using boost::multiprecision::cpp_int;

constexpr int kMaxExactN = 10000;
constexpr int kLaguerrePoints = 32;

void require_positive_time(double t, const char* who) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream msg;
    msg << who << ": t must be positive and finite, got " << t;
    throw InvalidParameter(msg.str());
  }
}

double subordinator_scale(double t, double gamma) { return std::pow(t, 1.0 / gamma); }

}  // namespace

CubeFunction delta_pair(int n) {
  if (n < 1 || n > 20) throw InvalidParameter("delta_pair: n must be in [1, 20]");
  std::vector<double> v(std::size_t{1} << n, 0.0);
  const double h = std::ldexp(1.0, n - 1);
  v.front() = h;
  v.back() = -h;
  return CubeFunction(n, std::move(v));
}

double exact_heat_l1(int n, double t) {
  if (n < 1 || n > kMaxExactN) throw InvalidParameter("exact_heat_l1: n must be in [1, 10^4]");
  require_positive_time(t, "exact_heat_l1");
  const cpp_bin_float_50 e = exp(-cpp_bin_float_50(t));
  const cpp_bin_float_50 up = 1 + e;
  const cpp_bin_float_50 down = 1 - e;
  const cpp_bin_float_50 ratio = down / up;

  // a = (1+e)^{n-k}(1-e)^k and b = (1-e)^{n-k}(1+e)^k, updated as k grows.
  cpp_bin_float_50 a = pow(up, n);
  cpp_bin_float_50 b = pow(down, n);
  cpp_int binom = 1;
  cpp_bin_float_50 total = 0;
  for (int k = 0; 2 * k < n; ++k) {
    total += cpp_bin_float_50(binom) * (a - b);
    a *= ratio;
    b /= ratio;
    binom = binom * (n - k) / (k + 1);
  }
  total = ldexp(total, -n);
  return static_cast<double>(total);
}

double heat_l1_sum(int n, double eps) {
  if (n < 1) throw InvalidParameter("heat_l1_sum: n must be positive");
  if (!(eps >= 0.0 && eps <= 1.0)) throw InvalidParameter("heat_l1_sum: eps must be in [0, 1]");
  if (eps == 0.0) return 0.0;
  if (eps == 1.0) return 1.0;
  const double log_up = std::log1p(eps);
  const double log_down = std::log1p(-eps);
  const double log_ratio = log_down - log_up;
  const double log_norm = std::lgamma(n + 1.0) - n * std::numbers::ln2;
  double total = 0.0;
  for (int k = 0; 2 * k < n; ++k) {
    const double log_term = log_norm - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                            (n - k) * log_up + k * log_down;
    if (log_term < -745.0) continue;
    total += std::exp(log_term) * -std::expm1((n - 2 * k) * log_ratio);
  }
  return total;
}

double almost1_bound(int n, double eps, bool allow_even) {
  if (n < 1) throw InvalidParameter("almost1_bound: n must be positive");
  if (!(eps > 0.0 && eps <= 0.5)) throw InvalidParameter("almost1_bound: eps must be in (0, 1/2]");
  if (n % 2 == 0 && !allow_even) {
    throw InvalidParameter("almost1_bound: the bound is derived for odd n");
  }
  return -0.5 * std::expm1(0.5 * n * std::log1p(-eps * eps));
}

double fractional_l1_bound(double n, double t, const StableDensityEvaluator& ev) {
  if (!(n >= 1.0) || !std::isfinite(n)) throw InvalidParameter("fractional_l1_bound: n must be >= 1");
  require_positive_time(t, "fractional_l1_bound");
  const double s = subordinator_scale(t, ev.gamma());
  const double half_n = 0.5 * n;
  auto g = [&](double tau) { return -std::expm1(half_n * std::log1p(-std::exp(-2.0 * tau * s))); };
  // Beyond tau_max the integrand is below 1e-20.
  const double tau_max = (std::log(half_n) + 46.0) / (2.0 * s);
  return 0.5 * ev.expectation(g, tau_max);
}

double fractional_l1_norm(int n, double t, const StableDensityEvaluator& ev) {
  if (n < 1 || n > kMaxExactN) throw InvalidParameter("fractional_l1_norm: n must be in [1, 10^4]");
  require_positive_time(t, "fractional_l1_norm");
  const double s = subordinator_scale(t, ev.gamma());
  auto g = [&](double tau) { return heat_l1_sum(n, std::exp(-tau * s)); };
  // heat_l1_sum(n, e) <= n e.
  const double tau_max = (std::log(static_cast<double>(n)) + 46.0) / s;
  return ev.expectation(g, tau_max);
}

GaussianPolynomial::GaussianPolynomial(std::vector<double> hermite_coeffs)
    : coeffs_(std::move(hermite_coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  if (static_cast<int>(coeffs_.size()) > kMaxDegree + 1) {
    throw InvalidInput("GaussianPolynomial: degree exceeds 16");
  }
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw InvalidInput("GaussianPolynomial: non-finite coefficient");
  }
}

std::vector<double> GaussianPolynomial::monomial_coeffs() const {
  const std::size_t size = coeffs_.size();
  std::vector<double> out(size, 0.0);
  // He_{k+1} = x He_k - k He_{k-1}.
  std::vector<double> prev(size, 0.0), cur(size, 0.0);
  cur[0] = 1.0;
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t i = 0; i < size; ++i) out[i] += coeffs_[k] * cur[i];
    std::vector<double> next(size, 0.0);
    for (std::size_t i = 0; i + 1 < size; ++i) next[i + 1] = cur[i];
    for (std::size_t i = 0; i < size; ++i) next[i] -= static_cast<double>(k) * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

double GaussianPolynomial::operator()(double x) const {
  const std::vector<double> m = monomial_coeffs();
  double acc = 0.0;
  for (auto it = m.rbegin(); it != m.rend(); ++it) acc = acc * x + *it;
  return acc;
}

GaussianPolynomial GaussianPolynomial::apply_ou() const {
  std::vector<double> c = coeffs_;
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= -static_cast<double>(k);
  return GaussianPolynomial(std::move(c));
}

GaussianPolynomial GaussianPolynomial::heat(double t) const {
  if (!(t >= 0.0)) throw InvalidParameter("GaussianPolynomial::heat: t must be >= 0");
  std::vector<double> c = coeffs_;
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= std::exp(-static_cast<double>(k) * t);
  return GaussianPolynomial(std::move(c));
}

double GaussianPolynomial::half_line_integral(int side) const {
  if (side != 1 && side != -1) throw InvalidParameter("half_line_integral: side must be +1 or -1");
  static const auto odd_rule = quad::gauss_laguerre(kLaguerrePoints, 0.0);
  static const auto even_rule = quad::gauss_laguerre(kLaguerrePoints, -0.5);
  const std::vector<double> m = monomial_coeffs();
  // x = sqrt(2u): x^{2j+1} e^{-x^2/2} dx = (2u)^j e^{-u} du and
  // x^{2j} e^{-x^2/2} dx = 2^{j-1/2} u^j u^{-1/2} e^{-u} du.
  // Horner over one parity: sum_j m[2j+parity] (2u)^j.
  auto horner = [&](double two_u, std::size_t parity) {
    double acc = 0.0;
    for (std::size_t k = m.size(); k-- > 0;) {
      if (k % 2 == parity) acc = acc * two_u + m[k];
    }
    return acc;
  };
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 0; i < odd_rule.first.size(); ++i) {
    odd += odd_rule.second[i] * horner(2.0 * odd_rule.first[i], 1);
  }
  for (std::size_t i = 0; i < even_rule.first.size(); ++i) {
    even += even_rule.second[i] * horner(2.0 * even_rule.first[i], 0);
  }
  even /= std::numbers::sqrt2;
  return (side * odd + even) / std::sqrt(2.0 * std::numbers::pi);
}

int GaussianPolynomial::half_line_sign(int side) const {
  if (side != 1 && side != -1) throw InvalidParameter("half_line_sign: side must be +1 or -1");
  const std::vector<double> m = monomial_coeffs();
  double scale = 0.0;
  for (double c : m) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0;
  int sign = 0;
  // The Gaussian weight makes x > 12 irrelevant at double precision.
  constexpr int kGrid = 4096;
  for (int i = 1; i <= kGrid; ++i) {
    const double x = side * 12.0 * i / kGrid;
    const double v = (*this)(x);
    if (std::abs(v) <= 1e-14 * scale * std::max(1.0, std::pow(std::abs(x), degree()))) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (sign == 0) {
      sign = s;
    } else if (s != sign) {
      throw InvalidInput("GaussianPolynomial: sign change away from x = 0");
    }
  }
  return sign;
}

double GaussianPolynomial::l1_norm() const {
  return half_line_sign(1) * half_line_integral(1) + half_line_sign(-1) * half_line_integral(-1);
}

OuFlatness gaussian_ou_flatness() {
  // x^3 = He_3 + 3 He_1.
  const GaussianPolynomial f({0.0, 3.0, 0.0, 1.0});
  const GaussianPolynomial lap = f.apply_ou();
  double integral = 0.0;
  for (int side : {1, -1}) integral -= f.half_line_sign(side) * lap.half_line_integral(side);

  const double base = f.l1_norm();
  constexpr int kPoints = 41;
  const double lo = std::log(1e-3), hi = std::log(1e-1);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double x = lo + (hi - lo) * i / (kPoints - 1);
    const double ratio = f.heat(std::exp(x)).l1_norm() / base;
    const double y = std::log1p(-ratio);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (kPoints * sxy - sx * sy) / (kPoints * sxx - sx * sx);
  return {integral, slope};
}

}  // namespace cube_spectral
