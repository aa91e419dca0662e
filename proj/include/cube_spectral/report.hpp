#pragma once

#include <string>

#include <json.hpp>

namespace cube_spectral {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, inconclusive };

/// One measured-versus-bound record. `pass` mirrors `status == Status::pass`.
struct VerificationReport {
  std::string name;
  Json params = Json::object();
  double measured = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;
  Status status = Status::fail;
  bool pass = false;
  Json extra;  // optional per-case records; null when unused

  void set_status(Status s) {
    status = s;
    pass = (s == Status::pass);
  }
  void set_pass(bool ok) { set_status(ok ? Status::pass : Status::fail); }
};

const char* to_string(Status s);
Status status_from_string(const std::string& s);

Json to_json(const VerificationReport& r);
VerificationReport report_from_json(const Json& j);

}  // namespace cube_spectral
