#include "cube_spectral/cube_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <sstream>

#include "cube_spectral/errors.hpp"

namespace cube_spectral {

namespace {

constexpr std::array<char, 4> kMagic = {'C', 'U', 'B', 'E'};

void put_u32(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                         static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes, 4);
}

void put_f64(std::ostream& out, double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char*>(bytes), 4)) throw InvalidInput("truncated cube header");
  return std::uint32_t{bytes[0]} | (std::uint32_t{bytes[1]} << 8) |
         (std::uint32_t{bytes[2]} << 16) | (std::uint32_t{bytes[3]} << 24);
}

double get_f64(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw InvalidInput("truncated cube payload");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= std::uint64_t{bytes[i]} << (8 * i);
  return std::bit_cast<double>(bits);
}

void write_array(std::ostream& out, int n, std::span<const double> data) {
  out.write(kMagic.data(), 4);
  put_u32(out, kCubeFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(n));
  for (double x : data) put_f64(out, x);
  if (!out) throw Error("failed writing cube binary");
}

std::pair<int, std::vector<double>> read_array(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), 4) || magic != kMagic) throw InvalidInput("bad cube magic");
  const std::uint32_t version = get_u32(in);
  if (version != kCubeFormatVersion) {
    std::ostringstream msg;
    msg << "unsupported cube format version " << version;
    throw InvalidInput(msg.str());
  }
  const std::uint32_t n = get_u32(in);
  if (n < 1 || n > static_cast<std::uint32_t>(kMaxDimension)) {
    throw InvalidInput("cube dimension out of range");
  }
  std::vector<double> data(std::size_t{1} << n);
  for (double& x : data) x = get_f64(in);
  return {static_cast<int>(n), std::move(data)};
}

std::pair<int, std::vector<double>> read_json(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains("n") || !j.contains(key)) {
    throw InvalidInput(std::string("cube JSON needs \"n\" and \"") + key + "\"");
  }
  return {j.at("n").get<int>(), j.at(key).get<std::vector<double>>()};
}

}  // namespace

void write_binary(std::ostream& out, const CubeFunction& f) { write_array(out, f.n(), f.values()); }
void write_binary(std::ostream& out, const Spectrum& a) { write_array(out, a.n(), a.coeffs()); }

CubeFunction read_function_binary(std::istream& in) {
  auto [n, data] = read_array(in);
  return CubeFunction(n, std::move(data));
}

Spectrum read_spectrum_binary(std::istream& in) {
  auto [n, data] = read_array(in);
  return Spectrum(n, std::move(data));
}

nlohmann::json to_json(const CubeFunction& f) {
  return {{"n", f.n()}, {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

nlohmann::json to_json(const Spectrum& a) {
  return {{"n", a.n()}, {"coeffs", std::vector<double>(a.coeffs().begin(), a.coeffs().end())}};
}

CubeFunction function_from_json(const nlohmann::json& j) {
  auto [n, data] = read_json(j, "values");
  return CubeFunction(n, std::move(data));
}

Spectrum spectrum_from_json(const nlohmann::json& j) {
  auto [n, data] = read_json(j, "coeffs");
  return Spectrum(n, std::move(data));
}

}  // namespace cube_spectral
