#include "ucflex/instance.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "ucflex/errors.h"

namespace ucflex {

int SystemInstance::total_units() const {
  int n = 0;
  for (const ClusterSpec& c : clusters) n += c.unit_count;
  return n;
}

namespace {

void CheckCluster(const ClusterSpec& c, std::vector<Violation>& out) {
  auto flag = [&](bool bad, const char* field, const char* message) {
    if (bad) out.push_back({field, c.id, message});
  };
  flag(c.id.empty(), "id", "id is empty");
  flag(c.unit_count < 1, "unit_count", "G < 1");
  flag(!std::isfinite(c.p_max), "p_max", "P^ not finite");
  flag(c.p_min < 0.0, "p_min", "P_ < 0");
  flag(c.p_min > c.p_max, "p_min", "P_ > P^");
  flag(c.su_cap < c.p_min, "su_cap", "SU < P_");
  flag(c.su_cap > c.p_max, "su_cap", "SU > P^");
  flag(c.sd_cap < c.p_min, "sd_cap", "SD < P_");
  flag(c.sd_cap > c.p_max, "sd_cap", "SD > P^");
  flag(!(c.ramp_up > 0.0), "ramp_up", "RU <= 0");
  flag(!(c.ramp_down > 0.0), "ramp_down", "RD <= 0");
  flag(c.min_up < 1, "min_up", "TU < 1");
  flag(c.min_down < 1, "min_down", "TD < 1");
  flag(c.init_online < 0, "init_online", "u0 < 0");
  flag(c.init_online > c.unit_count, "init_online", "u0 > G");
  flag(c.init_power_above_min < 0.0, "init_power_above_min", "p0 < 0");
  const double cap = c.headroom() * std::max(c.init_online, 0);
  flag(c.init_power_above_min > cap + 1e-9 * std::max(1.0, cap),
       "init_power_above_min", "p0 > (P^ - P_) * u0");
  flag(c.cost_fixed < 0.0 || c.cost_variable < 0.0 || c.cost_startup < 0.0 ||
           c.cost_shutdown < 0.0,
       "cost", "negative cost");
}

void CheckSeries(const std::vector<double>& series, const char* field,
                 int horizon, std::vector<Violation>& out) {
  if (static_cast<int>(series.size()) != horizon) {
    out.push_back({field, "",
                   "length " + std::to_string(series.size()) + " != T " +
                       std::to_string(horizon)});
  }
  for (double v : series) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      out.push_back({field, "", "entry < 0 or not finite"});
      break;
    }
  }
}

}  // namespace

std::vector<Violation> ValidateInstance(const SystemInstance& instance) {
  std::vector<Violation> out;
  if (instance.horizon < 1) out.push_back({"horizon", "", "T < 1"});
  CheckSeries(instance.demand, "demand", instance.horizon, out);
  CheckSeries(instance.reserve_up_req, "reserve_up_req", instance.horizon, out);
  CheckSeries(instance.reserve_down_req, "reserve_down_req", instance.horizon,
              out);
  if (instance.renewable_profile) {
    CheckSeries(*instance.renewable_profile, "renewable_profile",
                instance.horizon, out);
  }
  if (instance.cost_curtailment < 0.0 || instance.cost_shed < 0.0 ||
      instance.cost_reserve_shortfall < 0.0) {
    out.push_back({"cost", "", "negative penalty"});
  }
  std::set<std::string> ids;
  for (const ClusterSpec& c : instance.clusters) {
    if (!ids.insert(c.id).second) {
      out.push_back({"id", c.id, "duplicate cluster id"});
    }
    CheckCluster(c, out);
  }
  return out;
}

std::string FormatViolations(const std::vector<Violation>& violations) {
  std::ostringstream os;
  for (const Violation& v : violations) {
    os << v.field;
    if (!v.cluster.empty()) os << " (cluster " << v.cluster << ")";
    os << ": " << v.message << "\n";
  }
  return os.str();
}

void RequireValid(const SystemInstance& instance) {
  const auto violations = ValidateInstance(instance);
  if (!violations.empty()) {
    throw ValidationError("invalid instance:\n" +
                          FormatViolations(violations));
  }
}

std::vector<std::pair<bool, double>> InitialUnitStates(
    const ClusterSpec& cluster) {
  std::vector<std::pair<bool, double>> units(cluster.unit_count, {false, 0.0});
  double remaining = cluster.init_power_above_min;
  for (int g = 0; g < cluster.init_online && g < cluster.unit_count; ++g) {
    const double share = std::min(remaining, cluster.headroom());
    units[g] = {true, share};
    remaining -= share;
  }
  return units;
}

namespace {

ClusterSpec RampTrapCluster(int units, int initially_online) {
  ClusterSpec c;
  c.id = "trap";
  c.unit_count = units;
  c.p_max = 100.0;
  c.p_min = 20.0;
  c.ramp_up = 20.0;
  c.ramp_down = 20.0;
  c.su_cap = 50.0;
  c.sd_cap = 50.0;
  c.min_up = 1;
  c.min_down = 1;
  c.cost_fixed = 1000.0;
  c.cost_variable = 20.0;
  c.cost_startup = 500.0;
  c.cost_shutdown = 0.0;
  c.init_online = initially_online;
  c.init_power_above_min = c.headroom() * initially_online;
  return c;
}

SystemInstance RampTrapSystem(ClusterSpec cluster, std::vector<double> demand) {
  SystemInstance s;
  s.horizon = static_cast<int>(demand.size());
  s.reserve_up_req.assign(demand.size(), 0.0);
  s.reserve_down_req.assign(demand.size(), 0.0);
  s.demand = std::move(demand);
  s.clusters.push_back(std::move(cluster));
  s.cost_curtailment = 0.0;
  s.cost_shed = 1000.0;
  s.cost_reserve_shortfall = 1000.0;
  return s;
}

}  // namespace

// Nine units start at full output. Hour 1 is served by them alone, hour 2
// needs the tenth unit (limited to SU in its first hour) and hour 3 steps up
// by 60 MW, between RU = 20 and 10 * RU = 200. Started in hour 2, the tenth
// unit can only reach 70 MW in hour 3, so the step is covered only if it is
// started an hour early.
SystemInstance BuildRampTrapInstance() {
  return RampTrapSystem(RampTrapCluster(10, 9), {900.0, 930.0, 990.0, 990.0});
}

SystemInstance BuildReducedRampTrapInstance() {
  return RampTrapSystem(RampTrapCluster(3, 2), {200.0, 230.0, 280.0});
}

}  // namespace ucflex
