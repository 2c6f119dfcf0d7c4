#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ucflex/errors.h"
#include "ucflex/instance.h"

namespace ucflex {

namespace {

using Json = nlohmann::ordered_json;

const std::vector<std::string> kTopKeys = {
    "horizon",          "demand",           "reserve_up_req",
    "reserve_down_req", "cost_curtailment", "cost_shed",
    "cost_reserve_shortfall", "renewable_profile", "clusters"};

const std::vector<std::string> kClusterKeys = {
    "id",          "unit_count",   "p_max",          "p_min",
    "ramp_up",     "ramp_down",    "su_cap",         "sd_cap",
    "min_up",      "min_down",     "cost_fixed",     "cost_variable",
    "cost_startup", "cost_shutdown", "init_online", "init_power_above_min"};

void RejectUnknown(const Json& obj, const std::vector<std::string>& allowed,
                   const std::string& where) {
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) {
      throw SchemaError(key, "unknown field \"" + key + "\" in " + where);
    }
  }
}

const Json& Require(const Json& obj, const std::string& key,
                    const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw SchemaError(key, "missing field \"" + key + "\" in " + where);
  }
  return *it;
}

double Number(const Json& obj, const std::string& key,
              const std::string& where) {
  const Json& v = Require(obj, key, where);
  if (!v.is_number()) {
    throw SchemaError(key, "field \"" + key + "\" in " + where +
                               " must be a number");
  }
  return v.get<double>();
}

int Integer(const Json& obj, const std::string& key, const std::string& where) {
  const Json& v = Require(obj, key, where);
  if (!v.is_number_integer()) {
    throw SchemaError(key, "field \"" + key + "\" in " + where +
                               " must be an integer");
  }
  return v.get<int>();
}

std::vector<double> Series(const Json& obj, const std::string& key) {
  const Json& v = Require(obj, key, "instance");
  if (!v.is_array()) {
    throw SchemaError(key, "field \"" + key + "\" must be an array");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const Json& x : v) {
    if (!x.is_number()) {
      throw SchemaError(key, "field \"" + key + "\" must hold numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

ClusterSpec ParseCluster(const Json& obj, size_t index) {
  const std::string where = "clusters[" + std::to_string(index) + "]";
  if (!obj.is_object()) throw SchemaError("clusters", where + " not an object");
  RejectUnknown(obj, kClusterKeys, where);
  ClusterSpec c;
  const Json& id = Require(obj, "id", where);
  if (!id.is_string()) throw SchemaError("id", where + ".id must be a string");
  c.id = id.get<std::string>();
  c.unit_count = Integer(obj, "unit_count", where);
  c.p_max = Number(obj, "p_max", where);
  c.p_min = Number(obj, "p_min", where);
  c.ramp_up = Number(obj, "ramp_up", where);
  c.ramp_down = Number(obj, "ramp_down", where);
  c.su_cap = Number(obj, "su_cap", where);
  c.sd_cap = Number(obj, "sd_cap", where);
  c.min_up = Integer(obj, "min_up", where);
  c.min_down = Integer(obj, "min_down", where);
  c.cost_fixed = Number(obj, "cost_fixed", where);
  c.cost_variable = Number(obj, "cost_variable", where);
  c.cost_startup = Number(obj, "cost_startup", where);
  c.cost_shutdown = Number(obj, "cost_shutdown", where);
  c.init_online = Integer(obj, "init_online", where);
  c.init_power_above_min = Number(obj, "init_power_above_min", where);
  return c;
}

// nlohmann reports a byte offset; convert it to line/column.
std::pair<int, int> LineColumn(std::string_view text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

SystemInstance ParseInstance(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const auto [line, col] = LineColumn(text, e.byte);
    throw ParseError("malformed JSON at line " + std::to_string(line) +
                         ", column " + std::to_string(col) + ": " + e.what(),
                     line, col);
  }
  if (!doc.is_object()) throw SchemaError("", "instance must be an object");
  RejectUnknown(doc, kTopKeys, "instance");

  SystemInstance s;
  s.horizon = Integer(doc, "horizon", "instance");
  s.demand = Series(doc, "demand");
  s.reserve_up_req = Series(doc, "reserve_up_req");
  s.reserve_down_req = Series(doc, "reserve_down_req");
  s.cost_curtailment = Number(doc, "cost_curtailment", "instance");
  s.cost_shed = Number(doc, "cost_shed", "instance");
  s.cost_reserve_shortfall = Number(doc, "cost_reserve_shortfall", "instance");
  if (doc.contains("renewable_profile")) {
    s.renewable_profile = Series(doc, "renewable_profile");
  }
  const Json& clusters = Require(doc, "clusters", "instance");
  if (!clusters.is_array()) {
    throw SchemaError("clusters", "field \"clusters\" must be an array");
  }
  for (size_t i = 0; i < clusters.size(); ++i) {
    s.clusters.push_back(ParseCluster(clusters[i], i));
  }
  RequireValid(s);
  return s;
}

std::string SerializeInstance(const SystemInstance& s) {
  Json doc;
  doc["horizon"] = s.horizon;
  doc["demand"] = s.demand;
  doc["reserve_up_req"] = s.reserve_up_req;
  doc["reserve_down_req"] = s.reserve_down_req;
  doc["cost_curtailment"] = s.cost_curtailment;
  doc["cost_shed"] = s.cost_shed;
  doc["cost_reserve_shortfall"] = s.cost_reserve_shortfall;
  if (s.renewable_profile) doc["renewable_profile"] = *s.renewable_profile;
  Json clusters = Json::array();
  for (const ClusterSpec& c : s.clusters) {
    Json j;
    j["id"] = c.id;
    j["unit_count"] = c.unit_count;
    j["p_max"] = c.p_max;
    j["p_min"] = c.p_min;
    j["ramp_up"] = c.ramp_up;
    j["ramp_down"] = c.ramp_down;
    j["su_cap"] = c.su_cap;
    j["sd_cap"] = c.sd_cap;
    j["min_up"] = c.min_up;
    j["min_down"] = c.min_down;
    j["cost_fixed"] = c.cost_fixed;
    j["cost_variable"] = c.cost_variable;
    j["cost_startup"] = c.cost_startup;
    j["cost_shutdown"] = c.cost_shutdown;
    j["init_online"] = c.init_online;
    j["init_power_above_min"] = c.init_power_above_min;
    clusters.push_back(std::move(j));
  }
  doc["clusters"] = std::move(clusters);
  return doc.dump(2) + "\n";
}

SystemInstance LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseInstance(buf.str());
}

void SaveInstance(const SystemInstance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file " + path);
  out << SerializeInstance(instance);
}

}  // namespace ucflex
