#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "ucflex/errors.h"
#include "ucflex/instance.h"

namespace ucflex {

namespace {

// Uniform draws built directly on the engine bits so generated instances do
// not depend on the standard library's distribution implementations.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  double Unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double In(Range r) { return r.lo + (r.hi - r.lo) * Unit(); }
  int IntIn(Range r) {
    const auto lo = static_cast<int>(std::ceil(r.lo));
    const auto hi = static_cast<int>(std::floor(r.hi));
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 rng_;
};

double Round1(double x) { return std::round(x * 10.0) / 10.0; }

void CheckConfig(const GeneratorConfig& cfg) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("generator config: " + what);
  };
  require(cfg.n_clusters >= 1, "n_clusters < 1");
  require(cfg.units_per_cluster >= 1, "units_per_cluster < 1");
  require(cfg.horizon >= 1, "horizon < 1");
  auto range = [&](Range r, const char* name, double lo, double hi) {
    require(r.lo <= r.hi, std::string(name) + " range is empty");
    require(r.lo >= lo && r.hi <= hi,
            std::string(name) + " range outside [" + std::to_string(lo) +
                ", " + std::to_string(hi) + "]");
  };
  constexpr double kInf = std::numeric_limits<double>::infinity();
  range(cfg.p_max, "p_max", 0.0, kInf);
  require(cfg.p_max.lo > 0.0, "p_max must be positive");
  range(cfg.p_min_frac, "p_min_frac", 0.0, 1.0);
  range(cfg.ramp_up_frac, "ramp_up_frac", 0.0, kInf);
  range(cfg.ramp_down_frac, "ramp_down_frac", 0.0, kInf);
  require(cfg.ramp_up_frac.lo > 0.0 && cfg.ramp_down_frac.lo > 0.0,
          "ramp fractions must be positive");
  range(cfg.su_frac, "su_frac", 0.0, 1.0);
  range(cfg.sd_frac, "sd_frac", 0.0, 1.0);
  range(cfg.min_up, "min_up", 1.0, kInf);
  range(cfg.min_down, "min_down", 1.0, kInf);
  require(std::floor(cfg.min_up.hi) >= std::ceil(cfg.min_up.lo),
          "min_up range holds no integer");
  require(std::floor(cfg.min_down.hi) >= std::ceil(cfg.min_down.lo),
          "min_down range holds no integer");
  range(cfg.cost_fixed, "cost_fixed", 0.0, kInf);
  range(cfg.cost_variable, "cost_variable", 0.0, kInf);
  range(cfg.cost_startup, "cost_startup", 0.0, kInf);
  range(cfg.cost_shutdown, "cost_shutdown", 0.0, kInf);
  require(cfg.peak_base_ratio >= 1.0, "peak_base_ratio < 1");
  require(cfg.capacity_margin >= 1.2, "capacity_margin < 1.2");
  require(cfg.reserve_fraction >= 0.0, "reserve_fraction < 0");
  require(cfg.renewable_fraction >= 0.0, "renewable_fraction < 0");
  require(cfg.cost_noise_pct >= 0.0, "cost_noise_pct < 0");
  require(cfg.cost_curtailment >= 0.0 && cfg.cost_shed >= 0.0 &&
              cfg.cost_reserve_shortfall >= 0.0,
          "negative penalty");
}

// Commits the cheapest clusters until the first hour's net demand is covered
// and spreads the remaining output above minimum over them.
void SetInitialState(SystemInstance& s) {
  double net = s.demand[0];
  if (s.renewable_profile) net = std::max(0.0, net - (*s.renewable_profile)[0]);
  std::vector<size_t> order(s.clusters.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return s.clusters[a].cost_variable < s.clusters[b].cost_variable;
  });
  double capacity = 0.0;
  double minimum = 0.0;
  double headroom = 0.0;
  for (size_t k : order) {
    if (capacity >= net) break;
    ClusterSpec& c = s.clusters[k];
    c.init_online = c.unit_count;
    capacity += c.p_max * c.unit_count;
    minimum += c.p_min * c.unit_count;
    headroom += c.headroom() * c.unit_count;
  }
  const double above = std::clamp(net - minimum, 0.0, headroom);
  for (ClusterSpec& c : s.clusters) {
    if (c.init_online == 0 || headroom <= 0.0) continue;
    const double cap = c.headroom() * c.init_online;
    c.init_power_above_min = std::min(cap, above * cap / headroom);
  }
}

}  // namespace

SystemInstance GenerateRandomInstance(const GeneratorConfig& cfg) {
  CheckConfig(cfg);
  Draw draw(cfg.seed);
  SystemInstance s;
  s.horizon = cfg.horizon;
  s.cost_curtailment = cfg.cost_curtailment;
  s.cost_shed = cfg.cost_shed;
  s.cost_reserve_shortfall = cfg.cost_reserve_shortfall;

  double fleet = 0.0;
  for (int k = 0; k < cfg.n_clusters; ++k) {
    ClusterSpec c;
    c.id = "c" + std::to_string(k + 1);
    c.unit_count = cfg.units_per_cluster;
    c.p_max = Round1(draw.In(cfg.p_max));
    c.p_min = Round1(c.p_max * draw.In(cfg.p_min_frac));
    c.ramp_up = std::max(0.1, Round1(c.p_max * draw.In(cfg.ramp_up_frac)));
    c.ramp_down = std::max(0.1, Round1(c.p_max * draw.In(cfg.ramp_down_frac)));
    c.su_cap = std::clamp(Round1(c.p_min + c.headroom() * draw.In(cfg.su_frac)),
                          c.p_min, c.p_max);
    c.sd_cap = std::clamp(Round1(c.p_min + c.headroom() * draw.In(cfg.sd_frac)),
                          c.p_min, c.p_max);
    c.min_up = draw.IntIn(cfg.min_up);
    c.min_down = draw.IntIn(cfg.min_down);
    c.cost_fixed = Round1(draw.In(cfg.cost_fixed));
    c.cost_variable = Round1(draw.In(cfg.cost_variable));
    c.cost_startup = Round1(draw.In(cfg.cost_startup));
    c.cost_shutdown = Round1(draw.In(cfg.cost_shutdown));
    fleet += c.p_max * c.unit_count;
    s.clusters.push_back(std::move(c));
  }

  // Daily shape: trough near 04:00, peak near 16:00, +-3% noise, capped at
  // the peak so the capacity margin holds.
  const double peak = fleet / cfg.capacity_margin;
  const double base = peak / cfg.peak_base_ratio;
  for (int t = 0; t < cfg.horizon; ++t) {
    const double hour = t % 24;
    const double shape =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (hour - 4.0) / 24.0);
    const double noise = 1.0 + 0.03 * (2.0 * draw.Unit() - 1.0);
    const double d = std::min(peak, (base + (peak - base) * shape) * noise);
    s.demand.push_back(Round1(d));
  }
  for (double d : s.demand) {
    s.reserve_up_req.push_back(cfg.reserve_fraction * d);
    s.reserve_down_req.push_back(cfg.reserve_fraction * d);
  }
  if (cfg.renewable_fraction > 0.0) {
    std::vector<double> profile;
    for (int t = 0; t < cfg.horizon; ++t) {
      const double hour = t % 24;
      const double sun =
          std::max(0.0, std::sin(std::numbers::pi * (hour - 6.0) / 12.0));
      profile.push_back(Round1(cfg.renewable_fraction * peak * sun));
    }
    s.renewable_profile = std::move(profile);
  }
  SetInitialState(s);
  RequireValid(s);
  return s;
}

}  // namespace ucflex
