#pragma once

// Flat binary layout (all little-endian):
//   bytes 0..3   magic "CUBE"
//   bytes 4..7   u32 format version (kCubeFormatVersion)
//   bytes 8..11  u32 dimension n
//   then 2^n IEEE-754 binary64 values
// The same layout carries point values or Walsh coefficients.
//
// JSON: {"n": int, "values": [...]} for functions, {"n": int, "coeffs": [...]}
// for spectra.

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cube_spectral/cube.hpp"

namespace cube_spectral {

inline constexpr std::uint32_t kCubeFormatVersion = 1;

void write_binary(std::ostream& out, const CubeFunction& f);
void write_binary(std::ostream& out, const Spectrum& a);
CubeFunction read_function_binary(std::istream& in);
Spectrum read_spectrum_binary(std::istream& in);

nlohmann::json to_json(const CubeFunction& f);
nlohmann::json to_json(const Spectrum& a);
CubeFunction function_from_json(const nlohmann::json& j);
Spectrum spectrum_from_json(const nlohmann::json& j);

}  // namespace cube_spectral
