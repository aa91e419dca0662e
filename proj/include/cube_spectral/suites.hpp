#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cube_spectral/report.hpp"

namespace cube_spectral {

inline constexpr const char* kVersion = "1.0.0";

/// Suite names accepted by run_suite, "all" last.
const std::vector<std::string>& suite_names();

struct SuiteParams {
  std::uint64_t seed = 0;
  /// Dimension for the core transform checks; 0 selects the default (16).
  int n = 0;
  int threads = 1;
};

struct RunManifest {
  std::string command;
  Json params = Json::object();
  std::uint64_t seed = 0;
  std::string version = kVersion;
  double duration_ms = 0.0;
  /// Wall-clock measurements; the only fields that vary between runs.
  Json timings = Json::object();
  std::vector<VerificationReport> reports;

  bool pass() const;
};

/// Header block {"duration_ms", "timings"} first, then command, params, seed,
/// version, duration_ms and reports.
Json to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);
/// The manifest with the header block and duration dropped; identical for
/// identical command lines.
Json deterministic_part(const Json& manifest);

/// Runs one suite (or "all"). Exceptions inside a check become failing
/// reports carrying the message in `extra`. Unknown names throw
/// InvalidParameter.
RunManifest run_suite(const std::string& suite, const SuiteParams& params);

}  // namespace cube_spectral
