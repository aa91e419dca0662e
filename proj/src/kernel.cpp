#include "cube_spectral/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "cube_spectral/errors.hpp"
#include "cube_spectral/quadrature.hpp"

namespace cube_spectral {

namespace {

constexpr int kMaxBandDegree = 16;
constexpr int kMaxModifiedDimension = 16;
constexpr int kMarginGrid = 1024;

// Integral over (1, 2) to relative accuracy 1e-13 of int |f|; the
// integrands cancel, so a fixed absolute floor is not attainable.
double integrate_bump_support(const quad::Integrand& f) {
  quad::Options loose;
  loose.abs_tol = 1e-300;
  loose.rel_tol = 1e-6;
  const double scale =
      quad::integrate([&](double u) { return std::abs(f(u)); }, 1.0, 2.0, loose).value;
  quad::Options opt;
  opt.abs_tol = std::max(1e-300, 1e-13 * scale);
  opt.rel_tol = 1e-13;
  return quad::integrate(f, 1.0, 2.0, opt).value;
}

// int_1^2 e^{-rate (u - 3/2)} v^i eta(u) du, v = 2u - 3, for i = 0..degree.
// Centering both the weight and the variable keeps the system well scaled.
Eigen::VectorXd weighted_monomial_moments(double rate, int degree) {
  Eigen::VectorXd row(degree + 1);
  for (int i = 0; i <= degree; ++i) {
    auto f = [&](double u) {
      return std::exp(-rate * (u - 1.5)) * std::pow(2.0 * u - 3.0, i) *
             BumpFunction::master_bump(u);
    };
    row(i) = integrate_bump_support(f);
  }
  return row;
}

double evaluate_poly(const std::vector<double>& c, double u) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
  return acc;
}

}  // namespace

CubeFunction heat_kernel(int n, double t, double gamma) {
  if (n < 1 || n > 20) throw InvalidParameter("heat_kernel: n must lie in [1, 20]");
  if (!(t > 0.0)) throw InvalidParameter("heat_kernel: t must be positive");
  const auto factor = DegreeMultiplier::heat(t, gamma).table(n);
  std::vector<double> c(std::size_t{1} << n);
  for (std::size_t s = 0; s < c.size(); ++s) c[s] = factor[degree(static_cast<Mask>(s))];
  return ifwht(Spectrum(n, std::move(c)));
}

CubeFunction group_convolve(const CubeFunction& kernel, const CubeFunction& f) {
  if (kernel.n() != f.n()) throw InvalidInput("group_convolve: dimension mismatch");
  const Spectrum k = fwht(kernel);
  const Spectrum a = fwht(f);
  std::vector<double> c(a.size());
  for (std::size_t s = 0; s < c.size(); ++s) c[s] = k[s] * a[s];
  return ifwht(Spectrum(f.n(), std::move(c)));
}

double BumpFunction::master_bump(double u) {
  if (u <= 1.0 || u >= 2.0) return 0.0;
  const double v = 2.0 * u - 3.0;
  return std::exp(-1.0 / (1.0 - v * v));
}

double BumpFunction::operator()(double u) const {
  if (u <= 1.0 || u >= 2.0) return 0.0;
  return evaluate_poly(coeffs_, 2.0 * u - 3.0) * master_bump(u);
}

double BumpFunction::exponential_moment(double m) const {
  auto f = [&](double u) { return std::exp(-m * u) * (*this)(u); };
  return integrate_bump_support(f);
}

BumpFunction construct_bump(std::vector<int> band) {
  std::sort(band.begin(), band.end());
  band.erase(std::unique(band.begin(), band.end()), band.end());
  if (band.empty()) throw InvalidParameter("construct_bump: band must be nonempty");
  if (band.front() < 1 || band.back() > kMaxBandDegree) {
    throw InvalidParameter("construct_bump: band degrees must lie in 1..16");
  }
  const int count = static_cast<int>(band.size());

  auto system = [&](int poly_degree) {
    Eigen::MatrixXd a(count, poly_degree + 1);
    for (int r = 0; r < count; ++r) a.row(r) = weighted_monomial_moments(band[r], poly_degree);
    return a;
  };

  BumpFunction bump;
  bump.band_ = band;
  Eigen::VectorXd coeffs;
  double mass = 0.0;

  // Degree-B polynomial: the kernel of the B x (B+1) moment matrix.
  {
    const Eigen::MatrixXd a = system(count);
    const Eigen::VectorXd mass_row = weighted_monomial_moments(0.0, count);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const bool full_rank = sv(count - 1) > 1e-13 * sv(0);
    const Eigen::VectorXd v = svd.matrixV().col(count);
    mass = mass_row.dot(v);
    if (full_rank && std::abs(mass) > 1e-12 * mass_row.norm()) coeffs = v;
  }
  // Fallback: degree B+1 with int phi = 1 appended, least-norm solution.
  if (coeffs.size() == 0) {
    bump.fallback_ = true;
    Eigen::MatrixXd m(count + 1, count + 2);
    m.topRows(count) = system(count + 1);
    m.row(count) = weighted_monomial_moments(0.0, count + 1).transpose();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(count + 1);
    rhs(count) = 1.0;
    coeffs = m.completeOrthogonalDecomposition().solve(rhs);
    mass = m.row(count).dot(coeffs);
    if (std::abs(mass) <= 1e-12) {
      throw ConstructionFailure("construct_bump: moment system admits no bump with positive mass");
    }
  }
  if (mass < 0.0) {
    coeffs = -coeffs;
    mass = -mass;
  }
  coeffs /= mass;
  bump.coeffs_.assign(coeffs.data(), coeffs.data() + coeffs.size());

  bump.mass_ = bump.exponential_moment(0.0);
  if (!(bump.mass_ > 0.0) || std::abs(bump.mass_ - 1.0) > 1e-10) {
    throw ConstructionFailure("construct_bump: normalized mass differs from 1", bump.mass_);
  }
  for (int m : band) {
    const double moment = bump.exponential_moment(m);
    if (std::abs(moment) > 1e-10) {
      std::ostringstream msg;
      msg << "construct_bump: exponential moment at rate " << m << " is " << moment;
      throw ConstructionFailure(msg.str(), m);
    }
  }
  auto neg_abs = [&](double u) { return -std::abs(bump(u)); };
  bump.sup_norm_ = -quad::minimize_scan(neg_abs, 1.0, 2.0, 4096).second;
  return bump;
}

ModificationPlan build_plan(double gamma, std::vector<int> band) {
  return build_plan(std::make_shared<const StableDensityEvaluator>(gamma), std::move(band));
}

ModificationPlan build_plan(std::shared_ptr<const StableDensityEvaluator> density,
                            std::vector<int> band) {
  if (!density) throw InvalidParameter("build_plan: missing density evaluator");
  ModificationPlan plan;
  plan.gamma = density->gamma();
  plan.bump = construct_bump(std::move(band));
  plan.band = plan.bump.band();
  plan.density = density;
  plan.r0 = density->r0();
  plan.t0 = density->t0();
  const double g = plan.gamma;
  plan.kappa = density->tail_constant() / (std::pow(2.0, 3.0 + g) * plan.bump.sup_norm());

  plan.moments.resize(kMaxDimension + 1);
  plan.moments[0] = plan.bump.mass();
  for (int d = 1; d <= kMaxDimension; ++d) plan.moments[d] = plan.bump.exponential_moment(d);

  // Nonnegativity of the modified subordination weight on the bump support.
  plan.min_margin = kInfinity;
  for (double t : {plan.t0, plan.t0 / 2, plan.t0 / 4}) {
    const double s = std::pow(t, 1.0 / g);
    const double amp = plan.kappa * std::pow(s, 1.0 + g);
    for (int i = 0; i < kMarginGrid; ++i) {
      const double tau = (1.0 + static_cast<double>(i) / (kMarginGrid - 1)) / s;
      const double margin = density->density(tau) - amp * plan.bump(s * tau);
      plan.min_margin = std::min(plan.min_margin, margin);
      if (margin < 0.0) {
        std::ostringstream msg;
        msg << "build_plan: modified weight negative at tau=" << tau << " (t=" << t << ")";
        throw ConstructionFailure(msg.str(), tau);
      }
    }
  }
  return plan;
}

Spectrum modified_kernel_spectrum(const ModificationPlan& plan, int n, double t) {
  if (n < 1 || n > kMaxModifiedDimension) {
    throw InvalidParameter("modified_kernel: n must lie in [1, 16]");
  }
  if (!(t > 0.0) || t > plan.t0 * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "modified_kernel: t=" << t << " outside (0, " << plan.t0 << "]";
    throw InvalidParameter(msg.str());
  }
  const auto heat = DegreeMultiplier::heat(t, plan.gamma).table(n);
  std::vector<double> per_degree(n + 1);
  for (int d = 0; d <= n; ++d) per_degree[d] = heat[d] - plan.kappa * t * plan.moments[d];
  std::vector<double> c(std::size_t{1} << n);
  for (std::size_t s = 0; s < c.size(); ++s) c[s] = per_degree[degree(static_cast<Mask>(s))];
  return Spectrum(n, std::move(c));
}

CubeFunction modified_kernel(const ModificationPlan& plan, int n, double t) {
  return ifwht(modified_kernel_spectrum(plan, n, t));
}

VerificationReport verify_modification(const ModificationPlan& plan, int n, double t) {
  VerificationReport r;
  r.name = "modified_kernel";
  r.params["gamma"] = plan.gamma;
  r.params["band"] = plan.band;
  r.params["kappa"] = plan.kappa;
  r.params["t0"] = plan.t0;
  r.params["t"] = t;
  r.params["n"] = n;

  const CubeFunction k = modified_kernel(plan, n, t);
  double min_value = kInfinity;
  for (double v : k.values()) min_value = std::min(min_value, v);

  const Spectrum back = fwht(k);
  const auto heat = DegreeMultiplier::heat(t, plan.gamma).table(n);
  double band_dev = 0.0;
  for (std::size_t s = 0; s < back.size(); ++s) {
    const int d = degree(static_cast<Mask>(s));
    if (std::binary_search(plan.band.begin(), plan.band.end(), d)) {
      band_dev = std::max(band_dev, std::abs(back[s] - heat[d]));
    }
  }
  const double l1 = lp_norm(k, 1.0);
  const double zero_mode = 1.0 - plan.kappa * t;
  const double c0 = plan.kappa / 2.0;
  const double bound = std::exp(-c0 * t);

  const bool nonneg = min_value >= 0.0;
  const bool preserved = band_dev <= 1e-8;
  const bool mass_ok = std::abs(l1 - zero_mode) <= 1e-12 && zero_mode <= bound;

  r.measured = l1;
  r.bound = bound;
  r.tolerance = 1e-8;
  r.extra = {{"min_value", min_value},   {"band_dev", band_dev},  {"l1_norm", l1},
             {"zero_mode", zero_mode},   {"c0", c0},              {"nonnegative", nonneg},
             {"band_preserved", preserved}, {"l1_matches_zero_mode", mass_ok}};
  r.set_pass(nonneg && preserved && mass_ok);
  return r;
}

}  // namespace cube_spectral
