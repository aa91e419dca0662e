#include "cube_spectral/cube.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "cube_spectral/errors.hpp"

namespace cube_spectral {

namespace {

void require_same_dimension(const detail::CubeArray& a, const detail::CubeArray& b) {
  if (a.n() != b.n()) {
    std::ostringstream msg;
    msg << "dimension mismatch: " << a.n() << " vs " << b.n();
    throw InvalidInput(msg.str());
  }
}

// In-place radix-2 butterfly; fixed loop order keeps results bit-reproducible.
void butterfly(std::vector<double>& v) {
  const std::size_t len = v.size();
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j];
        const double b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
    }
  }
}

}  // namespace

namespace detail {

CubeArray::CubeArray(int n, std::vector<double> data) : n_(n), data_(std::move(data)) {
  if (n < 1 || n > kMaxDimension) {
    std::ostringstream msg;
    msg << "dimension must lie in [1, " << kMaxDimension << "], got " << n;
    throw InvalidInput(msg.str());
  }
  if (data_.size() != (std::size_t{1} << n)) {
    std::ostringstream msg;
    msg << "expected 2^" << n << " = " << (std::size_t{1} << n) << " entries, got "
        << data_.size();
    throw InvalidInput(msg.str());
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      std::ostringstream msg;
      msg << "non-finite entry at index " << i;
      throw InvalidInput(msg.str());
    }
  }
}

}  // namespace detail

CubeFunction::CubeFunction(int n, std::vector<double> values) : CubeArray(n, std::move(values)) {}

CubeFunction CubeFunction::constant(int n, double c) {
  if (n < 1 || n > kMaxDimension) throw InvalidInput("dimension out of range");
  return CubeFunction(n, std::vector<double>(std::size_t{1} << n, c));
}

CubeFunction CubeFunction::character(int n, Mask s) {
  if (n < 1 || n > kMaxDimension) throw InvalidInput("dimension out of range");
  if (n < 32 && (s >> n) != 0) throw InvalidInput("subset mask exceeds dimension");
  std::vector<double> v(std::size_t{1} << n);
  for (std::size_t m = 0; m < v.size(); ++m) v[m] = character_value(s, static_cast<Mask>(m));
  return CubeFunction(n, std::move(v));
}

CubeFunction& CubeFunction::operator+=(const CubeFunction& other) {
  require_same_dimension(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CubeFunction& CubeFunction::operator-=(const CubeFunction& other) {
  require_same_dimension(*this, other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CubeFunction& CubeFunction::operator*=(double c) {
  for (double& x : data_) x *= c;
  return *this;
}

CubeFunction operator+(CubeFunction a, const CubeFunction& b) { return a += b; }
CubeFunction operator-(CubeFunction a, const CubeFunction& b) { return a -= b; }
CubeFunction operator*(double c, CubeFunction a) { return a *= c; }

Spectrum::Spectrum(int n, std::vector<double> coeffs) : CubeArray(n, std::move(coeffs)) {}

int Spectrum::max_degree(double threshold) const {
  int k = -1;
  for (std::size_t s = 0; s < data_.size(); ++s) {
    if (std::abs(data_[s]) > threshold) k = std::max(k, degree(static_cast<Mask>(s)));
  }
  return k;
}

DegreeMultiplier DegreeMultiplier::laplacian() { return {Kind::laplacian, 0.0, 1.0, {}}; }

DegreeMultiplier DegreeMultiplier::fractional(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidParameter("fractional order must be in (0, 1]");
  return {Kind::fractional, 0.0, gamma, {}};
}

DegreeMultiplier DegreeMultiplier::heat(double t, double gamma) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidParameter("heat time must be >= 0");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidParameter("fractional order must be in (0, 1]");
  return {Kind::heat, t, gamma, {}};
}

DegreeMultiplier DegreeMultiplier::degree_projection(std::vector<int> degrees) {
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  return {Kind::degree_projection, 0.0, 1.0, std::move(degrees)};
}

double DegreeMultiplier::operator()(int d) const {
  switch (kind_) {
    case Kind::laplacian:
      return -static_cast<double>(d);
    case Kind::fractional:
      return d == 0 ? 0.0 : -std::pow(static_cast<double>(d), gamma_);
    case Kind::heat:
      return d == 0 ? 1.0 : std::exp(-t_ * std::pow(static_cast<double>(d), gamma_));
    case Kind::degree_projection:
      return std::binary_search(degrees_.begin(), degrees_.end(), d) ? 1.0 : 0.0;
  }
  return 0.0;
}

std::vector<double> DegreeMultiplier::table(int n) const {
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  for (int d = 0; d <= n; ++d) out[d] = (*this)(d);
  return out;
}

Spectrum fwht(const CubeFunction& f) {
  std::vector<double> v(f.values().begin(), f.values().end());
  butterfly(v);
  const double scale = std::ldexp(1.0, -f.n());
  for (double& x : v) x *= scale;
  return Spectrum(f.n(), std::move(v));
}

CubeFunction ifwht(const Spectrum& a) {
  std::vector<double> v(a.coeffs().begin(), a.coeffs().end());
  butterfly(v);
  return CubeFunction(a.n(), std::move(v));
}

double expectation(const CubeFunction& f) {
  double sum = 0.0;
  for (double x : f.values()) sum += x;
  return sum / static_cast<double>(f.size());
}

double lp_norm(const CubeFunction& f, double p) {
  if (std::isnan(p) || p < 1.0) throw InvalidParameter("lp_norm requires p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : f.values()) m = std::max(m, std::abs(x));
    return m;
  }
  double sum = 0.0;
  if (p == 1.0) {
    for (double x : f.values()) sum += std::abs(x);
    return sum / static_cast<double>(f.size());
  }
  if (p == 2.0) {
    for (double x : f.values()) sum += x * x;
    return std::sqrt(sum / static_cast<double>(f.size()));
  }
  // Scale by the max entry to keep |f|^p in range.
  const double scale = lp_norm(f, kInfinity);
  if (scale == 0.0) return 0.0;
  for (double x : f.values()) sum += std::pow(std::abs(x) / scale, p);
  return scale * std::pow(sum / static_cast<double>(f.size()), 1.0 / p);
}

double inner(const CubeFunction& f, const CubeFunction& g) {
  require_same_dimension(f, g);
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * g[i];
  return sum / static_cast<double>(f.size());
}

CubeFunction partial_gradient(const CubeFunction& f, int j) {
  if (j < 1 || j > f.n()) {
    std::ostringstream msg;
    msg << "coordinate " << j << " outside 1.." << f.n();
    throw InvalidParameter(msg.str());
  }
  const Mask bit = Mask{1} << (j - 1);
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Mask m = static_cast<Mask>(i);
    const Mask plus = m & ~bit;  // x_j = +1
    const Mask minus = m | bit;  // x_j = -1
    out[i] = 0.5 * (f[plus] - f[minus]);
  }
  return CubeFunction(f.n(), std::move(out));
}

CubeFunction gradient_sq(const CubeFunction& f) {
  std::vector<double> out(f.size(), 0.0);
  for (int j = 1; j <= f.n(); ++j) {
    const Mask bit = Mask{1} << (j - 1);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Mask m = static_cast<Mask>(i);
      const double d = 0.5 * (f[m] - f[m ^ bit]);
      out[i] += d * d;
    }
  }
  return CubeFunction(f.n(), std::move(out));
}

Spectrum apply_multiplier(const Spectrum& a, const DegreeMultiplier& m) {
  const std::vector<double> factor = m.table(a.n());
  std::vector<double> c(a.coeffs().begin(), a.coeffs().end());
  for (std::size_t s = 0; s < c.size(); ++s) c[s] *= factor[degree(static_cast<Mask>(s))];
  return Spectrum(a.n(), std::move(c));
}

CubeFunction apply_multiplier(const CubeFunction& f, const DegreeMultiplier& m) {
  return ifwht(apply_multiplier(fwht(f), m));
}

double dirichlet_form(const CubeFunction& f, const CubeFunction& g) {
  require_same_dimension(f, g);
  double sum = 0.0;
  for (int j = 1; j <= f.n(); ++j) {
    const Mask bit = Mask{1} << (j - 1);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Mask m = static_cast<Mask>(i);
      sum += 0.25 * (f[m] - f[m ^ bit]) * (g[m] - g[m ^ bit]);
    }
  }
  return sum / static_cast<double>(f.size());
}

CubeFunction center(const CubeFunction& f) {
  const double mean = expectation(f);
  std::vector<double> v(f.values().begin(), f.values().end());
  for (double& x : v) x -= mean;
  return CubeFunction(f.n(), std::move(v));
}

}  // namespace cube_spectral
