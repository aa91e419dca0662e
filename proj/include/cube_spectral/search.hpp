#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cube_spectral/cube.hpp"

namespace cube_spectral {

/// Subspace the search runs in: mean-zero functions, or functions whose
/// spectrum lives on the listed degrees.
struct Projection {
  enum class Kind { mean_zero, band };
  Kind kind = Kind::mean_zero;
  std::vector<int> degrees;  // band only, entries in 1..n

  static Projection mean_zero() { return {}; }
  static Projection band(std::vector<int> degrees) { return {Kind::band, std::move(degrees)}; }
};

struct SearchConfig {
  int n = 6;
  double p = 2.0;
  double gamma = 1.0;
  double t = 1.0;
  int iterations = 2000;
  int restarts = 32;
  std::uint64_t seed = 0;
  /// Step at iteration i is initial_step * decay^i, relative to ||f0||_inf.
  double initial_step = 0.5;
  double decay = 0.997;
  Projection projection;
  /// Worker threads for restarts; results do not depend on this.
  int threads = 1;
};

struct SearchResult {
  CubeFunction f;  // projected maximizer, normalized to ||f||_p = 1
  double ratio;    // ||e^{t Lap_g} f||_p / ||f||_p
  int best_restart;
  std::vector<double> restart_ratios;
};

/// Throws InvalidParameter unless n in 1..12, p >= 1, 0 < gamma <= 1, t > 0,
/// restarts >= 1, iterations >= 0, 0 < decay <= 1 and a valid band.
void validate(const SearchConfig& cfg);

/// Maximizes ||e^{t Lap_g} f0||_p / ||f0||_p over the projection subspace by
/// coordinate ascent on the 2^n values. Restart r draws from
/// substream(seed, r); its start alternates between a random Walsh character
/// of admissible degree, an antipodal delta pair, and iid uniform values.
/// The best restart wins, ties going to the lower index.
SearchResult worst_ratio_search(const SearchConfig& cfg);

struct ScanPoint {
  double p;
  double ratio;
  double rate;  // -ln(ratio) / t
};

/// worst_ratio_search over each p in the grid with the remaining fields of
/// `base`; every p in the grid must exceed 1.
std::vector<ScanPoint> constant_scan(std::span<const double> p_grid, const SearchConfig& base);

/// True when, ordering by p, rate(p) <= (1 + tolerance) rate(q) for all p < q.
bool rates_decrease_toward_one(std::vector<ScanPoint> scan, double tolerance = 0.05);

}  // namespace cube_spectral
