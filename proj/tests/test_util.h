#ifndef UCFLEX_TESTS_TEST_UTIL_H_
#define UCFLEX_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ucflex/instance.h"
#include "ucflex/solver_bridge.h"

namespace ucflex::testing {

inline ClusterSpec MakeCluster(std::string id = "a", int units = 1) {
  ClusterSpec c;
  c.id = std::move(id);
  c.unit_count = units;
  c.p_max = 100.0;
  c.p_min = 20.0;
  c.ramp_up = 40.0;
  c.ramp_down = 40.0;
  c.su_cap = 50.0;
  c.sd_cap = 50.0;
  c.min_up = 1;
  c.min_down = 1;
  c.cost_fixed = 50.0;
  c.cost_variable = 10.0;
  c.cost_startup = 200.0;
  c.cost_shutdown = 10.0;
  return c;
}

inline SystemInstance MakeInstance(std::vector<double> demand,
                                   std::vector<ClusterSpec> clusters) {
  SystemInstance s;
  s.horizon = static_cast<int>(demand.size());
  s.reserve_up_req.assign(demand.size(), 0.0);
  s.reserve_down_req.assign(demand.size(), 0.0);
  s.demand = std::move(demand);
  s.clusters = std::move(clusters);
  s.cost_curtailment = 5.0;
  s.cost_shed = 1000.0;
  s.cost_reserve_shortfall = 500.0;
  return s;
}

// The instance used as the dispatch example for the oracle: one unit kept
// on over two hours.
inline SystemInstance TwoHourExample() {
  ClusterSpec c = MakeCluster("u", 1);
  c.p_min = 10.0;
  c.p_max = 50.0;
  c.su_cap = 50.0;
  c.sd_cap = 50.0;
  c.ramp_up = 50.0;
  c.ramp_down = 50.0;
  c.cost_fixed = 5.0;
  c.cost_variable = 2.0;
  c.cost_startup = 100.0;
  c.cost_shutdown = 0.0;
  c.init_online = 1;
  c.init_power_above_min = 20.0;
  SystemInstance s = MakeInstance({30.0, 40.0}, {c});
  s.cost_shed = 10000.0;
  return s;
}

inline bool RelClose(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline SolverConfig TestSolver(double gap = 1e-9) {
  SolverConfig cfg = DefaultSolverConfig();
  cfg.mip_gap = gap;
  cfg.time_limit_s = 120.0;
  return cfg;
}

}  // namespace ucflex::testing

#endif  // UCFLEX_TESTS_TEST_UTIL_H_
