#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cube_spectral/cube.hpp"

namespace cube_spectral {

using Rng = std::mt19937_64;

/// Independent stream for (seed, index); used for restarts and test cases.
Rng substream(std::uint64_t seed, std::uint64_t index);

/// Pointwise iid uniform values in [-1, 1].
CubeFunction random_uniform_function(int n, Rng& rng);

/// Rademacher coefficients on every S whose degree is listed, zero elsewhere.
CubeFunction random_rademacher_spectrum(int n, const std::vector<int>& degrees, Rng& rng);

/// Gaussian coefficients on a random subset of the listed degrees; each
/// degree is kept with probability 1/2 (at least one is kept).
CubeFunction random_band_function(int n, const std::vector<int>& degrees, Rng& rng);

}  // namespace cube_spectral
