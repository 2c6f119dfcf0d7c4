#ifndef UCFLEX_INSTANCE_H_
#define UCFLEX_INSTANCE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ucflex {

// A group of identical thermal units. Power quantities are MW; with hourly
// periods they double as MWh.
struct ClusterSpec {
  std::string id;
  int unit_count = 1;      // G
  double p_max = 0.0;      // maximum output
  double p_min = 0.0;      // minimum output when committed
  double ramp_up = 0.0;    // MW/h
  double ramp_down = 0.0;  // MW/h
  double su_cap = 0.0;     // max output in the first hour online
  double sd_cap = 0.0;     // max output in the last hour online
  int min_up = 1;          // hours
  int min_down = 1;        // hours
  double cost_fixed = 0.0;     // $/h per committed unit
  double cost_variable = 0.0;  // $/MWh on total output
  double cost_startup = 0.0;   // $ per startup
  double cost_shutdown = 0.0;  // $ per shutdown
  int init_online = 0;                // units online before t = 1
  double init_power_above_min = 0.0;  // cluster output above minimum at t = 0

  double headroom() const { return p_max - p_min; }

  friend bool operator==(const ClusterSpec&, const ClusterSpec&) = default;
};

struct SystemInstance {
  int horizon = 0;
  std::vector<double> demand;
  std::vector<double> reserve_up_req;
  std::vector<double> reserve_down_req;
  std::vector<ClusterSpec> clusters;
  std::optional<std::vector<double>> renewable_profile;
  double cost_curtailment = 0.0;
  double cost_shed = 0.0;
  double cost_reserve_shortfall = 0.0;

  int total_units() const;

  friend bool operator==(const SystemInstance&, const SystemInstance&) =
      default;
};

// One invariant violation. `cluster` is empty for system-level fields.
struct Violation {
  std::string field;
  std::string cluster;
  std::string message;  // e.g. "SU < P_"
};

std::vector<Violation> ValidateInstance(const SystemInstance& instance);

// Throws ValidationError listing every violation when the report is not
// empty.
void RequireValid(const SystemInstance& instance);

std::string FormatViolations(const std::vector<Violation>& violations);

// Inclusive range for a generated parameter.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct GeneratorConfig {
  std::uint64_t seed = 1;
  int n_clusters = 3;
  int units_per_cluster = 3;
  int horizon = 24;

  Range p_max{100.0, 400.0};
  // Fractions of p_max.
  Range p_min_frac{0.25, 0.5};
  Range ramp_up_frac{0.15, 0.5};
  Range ramp_down_frac{0.15, 0.5};
  // Position of SU / SD between p_min (0) and p_max (1).
  Range su_frac{0.2, 0.8};
  Range sd_frac{0.2, 0.8};
  Range min_up{1, 4};
  Range min_down{1, 4};
  Range cost_fixed{100.0, 800.0};
  Range cost_variable{10.0, 60.0};
  Range cost_startup{500.0, 4000.0};
  Range cost_shutdown{0.0, 300.0};

  double peak_base_ratio = 1.6;
  double capacity_margin = 1.25;  // fleet capacity / peak demand
  double reserve_fraction = 0.05;
  double renewable_fraction = 0.0;  // renewable peak / demand peak

  double cost_curtailment = 5.0;
  double cost_shed = 3000.0;
  double cost_reserve_shortfall = 1000.0;

  // Fraction (0.01 = 1%) of multiplicative noise on cost_variable applied per
  // individual unit by the individual formulation.
  double cost_noise_pct = 0.0;
};

SystemInstance GenerateRandomInstance(const GeneratorConfig& cfg);

// Single ten-unit cluster in which nine units sit at full output when demand
// steps up by more than one unit's ramp but less than ten. The scaled cluster
// ramp limit absorbs the step; individual units cannot without an earlier
// startup.
SystemInstance BuildRampTrapInstance();

// Three-unit, three-hour version of the same situation, small enough for
// exhaustive enumeration.
SystemInstance BuildReducedRampTrapInstance();

// JSON round trip. Parsing validates syntax, schema and invariants.
SystemInstance ParseInstance(std::string_view text);
std::string SerializeInstance(const SystemInstance& instance);

SystemInstance LoadInstance(const std::string& path);
void SaveInstance(const SystemInstance& instance, const std::string& path);

// Splits a cluster's initial state over individual units: units 1..u0 are
// online and p0 fills them in order, each up to its headroom.
std::vector<std::pair<bool, double>> InitialUnitStates(
    const ClusterSpec& cluster);

}  // namespace ucflex

#endif  // UCFLEX_INSTANCE_H_
