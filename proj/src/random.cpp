#include "cube_spectral/random.hpp"

#include <algorithm>

#include "cube_spectral/errors.hpp"

namespace cube_spectral {

Rng substream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x5eedu};
  return Rng(seq);
}

CubeFunction random_uniform_function(int n, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(std::size_t{1} << n);
  for (double& x : v) x = u(rng);
  return CubeFunction(n, std::move(v));
}

CubeFunction random_rademacher_spectrum(int n, const std::vector<int>& degrees, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<double> c(std::size_t{1} << n, 0.0);
  for (std::size_t s = 0; s < c.size(); ++s) {
    const int d = degree(static_cast<Mask>(s));
    if (std::find(degrees.begin(), degrees.end(), d) != degrees.end()) c[s] = coin(rng) ? 1.0 : -1.0;
  }
  return ifwht(Spectrum(n, std::move(c)));
}

CubeFunction random_band_function(int n, const std::vector<int>& degrees, Rng& rng) {
  if (degrees.empty()) throw InvalidParameter("random_band_function: no degrees");
  std::bernoulli_distribution keep(0.5);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<int> kept;
  for (int d : degrees) {
    if (d <= n && keep(rng)) kept.push_back(d);
  }
  if (kept.empty()) {
    std::vector<int> admissible;
    for (int d : degrees) {
      if (d <= n) admissible.push_back(d);
    }
    if (admissible.empty()) throw InvalidParameter("random_band_function: degrees exceed n");
    std::uniform_int_distribution<std::size_t> pick(0, admissible.size() - 1);
    kept.push_back(admissible[pick(rng)]);
  }
  std::vector<double> c(std::size_t{1} << n, 0.0);
  for (std::size_t s = 0; s < c.size(); ++s) {
    const int d = degree(static_cast<Mask>(s));
    if (std::find(kept.begin(), kept.end(), d) != kept.end()) c[s] = normal(rng);
  }
  return ifwht(Spectrum(n, std::move(c)));
}

}  // namespace cube_spectral
