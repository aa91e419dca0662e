#include "cube_spectral/report.hpp"

#include "cube_spectral/errors.hpp"

namespace cube_spectral {

const char* to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::inconclusive:
      return "inconclusive";
  }
  return "fail";
}

Status status_from_string(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "inconclusive") return Status::inconclusive;
  throw InvalidInput("unknown report status: " + s);
}

Json to_json(const VerificationReport& r) {
  Json j;
  j["name"] = r.name;
  j["params"] = r.params;
  j["measured"] = r.measured;
  j["bound"] = r.bound;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["status"] = to_string(r.status);
  if (!r.extra.is_null()) j["extra"] = r.extra;
  return j;
}

VerificationReport report_from_json(const Json& j) {
  VerificationReport r;
  r.name = j.at("name").get<std::string>();
  r.params = j.at("params");
  r.measured = j.at("measured").get<double>();
  r.bound = j.at("bound").get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  if (j.contains("status")) {
    r.set_status(status_from_string(j.at("status").get<std::string>()));
  } else {
    r.set_pass(j.at("pass").get<bool>());
  }
  if (j.contains("extra")) r.extra = j.at("extra");
  return r;
}

}  // namespace cube_spectral
