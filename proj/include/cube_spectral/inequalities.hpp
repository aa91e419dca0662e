#pragma once

#include <span>
#include <vector>

#include "cube_spectral/cube.hpp"
#include "cube_spectral/report.hpp"

namespace cube_spectral {

/// |f(x)| at or below this counts as a zero of f in indicator terms.
inline constexpr double kZeroSetThreshold = 1e-12;

/// sgn with sgn(0) = 0.
inline double sgn(double x) noexcept { return (x > 0.0) - (x < 0.0); }

/// min over t in [0,1] of (1 - t^{2/p})/(1 - t) * (1 - t^{2/p'})/(1 - t), p > 1.
double tilde_cp(double p);

struct GapSides {
  double lhs;
  double rhs;
};

/// lhs = (a - b)(|a|^{p-1} sgn a - |b|^{p-1} sgn b),
/// rhs = c (|a|^{p/2} sgn a - |b|^{p/2} sgn b)^2 with c = tilde_cp(p).
GapSides abp_gap(double p, double a, double b);
/// Same with a precomputed tilde_cp(p).
GapSides abp_gap(double p, double a, double b, double cp);

struct MomentComparison {
  double var2;           // E|g - E g|^2
  double l2;             // E|g|^2
  double signed_moment;  // E[|g|^beta sgn g]
};

MomentComparison moment_comparison(const CubeFunction& g, double beta);

/// -E(Lap f |f|^{p-1} sgn f), p > 1.
double pth_dirichlet_functional(const CubeFunction& f, double p);

struct PoincareL1 {
  double rhs;      // E[(-Lap_g f) sgn f 1_{f != 0}] - E[|Lap_g f| 1_{f = 0}]
  double l1;       // ||f||_1
  double alpha_k;  // k^{-gamma} 3^{-3k}
  int k;           // top degree of f
};

/// Requires E f = 0 (spectral tolerance 1e-10) and 0 < gamma < 1.
PoincareL1 poincare_l1_functional(const CubeFunction& f, double gamma);

struct BonamiRatio {
  double ratio;  // ||f||_4 / ||f||_2
  int k;         // top degree
};

BonamiRatio bonami_ratio(const CubeFunction& f);

/// Compares ||e^{t Lap} f||_1 with e^{-t/2} ||f||_1. The comparison is only
/// required for t >= 3 k ln 3; below that a violation is reported as
/// inconclusive.
VerificationReport heat_smoothing_l1(const CubeFunction& f, double t);

struct DecayRates {
  std::vector<double> rates;
  double min_rate;
};

/// rate(t) = -ln(||e^{t Lap_g} f0||_p / ||f0||_p) / t with f0 = f - E f.
DecayRates decay_rate(const CubeFunction& f, double p, double gamma,
                      std::span<const double> t_grid);

/// I(t) = E|e^{t Lap_g} f|. Compares
///   E(sgn F Lap_g F 1_{F != 0}) + E(|Lap_g F| 1_{F = 0}),  F = e^{t Lap_g} f,
/// with the central difference (I(t+h) - I(t-h)) / 2h. Inconclusive when
/// some F(x) could change sign inside the stencil, i.e. when
/// |F| <= 2h |Lap_g F| + h^2 |Lap_g^2 F| somewhere.
VerificationReport derivative_identity_check(const CubeFunction& f, double gamma, double t,
                                             double h);

/// Analytic right-derivative of I(t) used by derivative_identity_check.
double l1_time_derivative(const CubeFunction& f, double gamma, double t);

}  // namespace cube_spectral
