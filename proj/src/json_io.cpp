#include "gmtk/json_io.hpp"

#include <json.hpp>

namespace gmtk {

std::string record_to_json(const RunRecord& record, int indent) {
  nlohmann::json j;
  j["solver"] = record.solver;
  j["instance"] = record.instance;
  j["labeling"] = record.labeling;
  if (std::isfinite(record.energy)) {
    j["energy"] = record.energy;
  } else {
    j["energy"] = nullptr;
  }
  if (record.bound) {
    j["bound"] = *record.bound;
  } else {
    j["bound"] = nullptr;
  }
  j["params"] = record.params_used;

  nlohmann::json trace = nlohmann::json::array();
  nlohmann::json elapsed = nlohmann::json::array();
  for (const TracePoint& p : record.trace) {
    nlohmann::json point;
    point["energy"] = p.energy;
    if (p.bound) {
      point["bound"] = *p.bound;
    } else {
      point["bound"] = nullptr;
    }
    trace.push_back(point);
    elapsed.push_back(p.elapsed);
  }
  j["trace"] = trace;
  j["timing"]["elapsed"] = elapsed;
  return j.dump(indent);
}

RunRecord record_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  RunRecord record;
  record.solver = j.at("solver").get<std::string>();
  record.instance = j.at("instance").get<std::string>();
  record.labeling = j.at("labeling").get<Labeling>();
  record.energy =
      j.at("energy").is_null() ? kInfinity : j.at("energy").get<double>();
  if (!j.at("bound").is_null()) record.bound = j.at("bound").get<double>();
  record.params_used = j.at("params").get<std::map<std::string, double>>();

  const nlohmann::json& trace = j.at("trace");
  const nlohmann::json& elapsed = j.at("timing").at("elapsed");
  for (size_t i = 0; i < trace.size(); ++i) {
    TracePoint p;
    p.energy = trace[i].at("energy").get<double>();
    if (!trace[i].at("bound").is_null()) {
      p.bound = trace[i].at("bound").get<double>();
    }
    p.elapsed = i < elapsed.size() ? elapsed[i].get<double>() : 0.0;
    record.trace.push_back(p);
  }
  return record;
}

}  // namespace gmtk
