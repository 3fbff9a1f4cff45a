#include "sparsestream/report.hpp"

#include <algorithm>

#include <json.hpp>

namespace sparsestream {

const char* to_string(Parameter p) {
  switch (p) {
    case Parameter::Beta: return "beta";
    case Parameter::Gamma: return "gamma";
    case Parameter::Phi: return "phi";
    case Parameter::Lambda: return "lambda";
  }
  return "unknown";
}

bool EstimateReport::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

void EstimateReport::add_flag(std::string f) {
  if (!has_flag(f)) flags.push_back(std::move(f));
}

std::string to_json(const EstimateReport& r) {
  nlohmann::ordered_json j;
  j["parameter"] = to_string(r.parameter);
  j["algorithm"] = r.algorithm;
  j["point"] = r.point;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["factor"] = r.factor;
  j["epsilon"] = r.epsilon;
  j["delta"] = r.delta;
  j["passes"] = r.passes;
  j["flags"] = r.flags;
  j["seed"] = r.seed;
  j["space_bytes"] = r.space_bytes;
  j["wall_ms"] = r.wall_ms;
  nlohmann::ordered_json d = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.details) d[k] = v;
  j["details"] = d;
  return j.dump();
}

}  // namespace sparsestream
