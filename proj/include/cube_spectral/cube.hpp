#pragma once

// Functions on the Hamming cube {-1,1}^n and their Walsh-Fourier spectra.
//
// Point encoding: index m stands for the point x with x_j = -1 exactly when
// bit (j-1) of m is set. Subset encoding: mask s stands for
// S = { j : bit (j-1) of s is set }. The character x^S evaluated at m is
// therefore (-1)^{popcount(s & m)}.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace cube_spectral {

using Mask = std::uint32_t;

inline constexpr int kMaxDimension = 24;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline int degree(Mask s) noexcept { return std::popcount(s); }

/// x_j at point m, j is 1-based.
inline int coordinate(Mask m, int j) noexcept { return ((m >> (j - 1)) & 1u) ? -1 : 1; }

/// x^S at point m.
inline int character_value(Mask s, Mask m) noexcept { return (std::popcount(s & m) & 1) ? -1 : 1; }

namespace detail {

// Shared storage of 2^n finite reals.
class CubeArray {
 public:
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return data_.size(); }
  double operator[](Mask m) const { return data_[m]; }

 protected:
  CubeArray(int n, std::vector<double> data);
  int n_;
  std::vector<double> data_;
};

}  // namespace detail

/// Real function on {-1,1}^n stored pointwise.
class CubeFunction : public detail::CubeArray {
 public:
  CubeFunction(int n, std::vector<double> values);

  static CubeFunction constant(int n, double c);
  static CubeFunction zero(int n) { return constant(n, 0.0); }
  /// The Walsh character x^S.
  static CubeFunction character(int n, Mask s);

  std::span<const double> values() const noexcept { return data_; }

  CubeFunction& operator+=(const CubeFunction& other);
  CubeFunction& operator-=(const CubeFunction& other);
  CubeFunction& operator*=(double c);
};

CubeFunction operator+(CubeFunction a, const CubeFunction& b);
CubeFunction operator-(CubeFunction a, const CubeFunction& b);
CubeFunction operator*(double c, CubeFunction a);

/// Walsh-Fourier coefficients a_S = E(f x^S), indexed by subset mask.
class Spectrum : public detail::CubeArray {
 public:
  Spectrum(int n, std::vector<double> coeffs);

  std::span<const double> coeffs() const noexcept { return data_; }
  /// Largest degree with |a_S| > threshold; -1 for the zero spectrum.
  int max_degree(double threshold = 1e-12) const;
};

/// A Fourier multiplier that depends on |S| only.
class DegreeMultiplier {
 public:
  enum class Kind { laplacian, fractional, heat, degree_projection };

  static DegreeMultiplier laplacian();
  /// d -> -d^gamma, 0 < gamma <= 1.
  static DegreeMultiplier fractional(double gamma);
  /// d -> exp(-t d^gamma), t >= 0, 0 < gamma <= 1.
  static DegreeMultiplier heat(double t, double gamma = 1.0);
  /// d -> 1 if d is listed, else 0.
  static DegreeMultiplier degree_projection(std::vector<int> degrees);

  Kind kind() const noexcept { return kind_; }
  double operator()(int d) const;
  /// Factors for degrees 0..n.
  std::vector<double> table(int n) const;

 private:
  DegreeMultiplier(Kind kind, double t, double gamma, std::vector<int> degrees)
      : kind_(kind), t_(t), gamma_(gamma), degrees_(std::move(degrees)) {}
  Kind kind_;
  double t_;
  double gamma_;
  std::vector<int> degrees_;
};

/// Forward transform with 1/2^n normalization: coeffs are true expectations.
Spectrum fwht(const CubeFunction& f);
/// Inverse transform: f = sum_S a_S x^S.
CubeFunction ifwht(const Spectrum& a);

double expectation(const CubeFunction& f);
/// (E|f|^p)^{1/p}; max |f| for p = infinity.
double lp_norm(const CubeFunction& f, double p);
/// E(f g).
double inner(const CubeFunction& f, const CubeFunction& g);

/// (f(.., x_j = 1, ..) - f(.., x_j = -1, ..)) / 2, j is 1-based.
CubeFunction partial_gradient(const CubeFunction& f, int j);
/// |grad f|^2 = sum_j (grad_j f)^2 pointwise.
CubeFunction gradient_sq(const CubeFunction& f);

CubeFunction apply_multiplier(const CubeFunction& f, const DegreeMultiplier& m);
Spectrum apply_multiplier(const Spectrum& a, const DegreeMultiplier& m);

/// E sum_j grad_j f grad_j g  (= -E f Lap g).
double dirichlet_form(const CubeFunction& f, const CubeFunction& g);

/// f - E f.
CubeFunction center(const CubeFunction& f);

}  // namespace cube_spectral
